"""Positive Cohen-Macaulayness certificates.

The strategy: for a graded algebra A with designated homogeneous system of
parameters P (the first few family generators), exhibit module generators T
over C[P] and certify that A is the free C[P]-module on T:

  1. each ambient coordinate form satisfies a monic annihilator over C[P]
     (coordinates of equal weight share one),
  2. the product Q(u) of the distinct annihilators gives a monic linear
     recursion expressing every high power sum through lower ones with C[P]
     coefficients: Q(u) is divisible by each coordinate's annihilator as an
     exact symbol-level identity, so Q kills every coordinate and hence
     sum a_i P_{n+i} = 0 for every shift n,
  3. the finitely many power sums below the recursion degree lie in the
     module M spanned by T over C[P],
  4. M is closed under multiplication (T_i T_j in M),
  5. the number of generators equals the Bezout rank.

Together these force A = M, a free module of the generic rank, hence CM.
Every certificate is re-verified in a separate pass with fresh arithmetic.

Also provides quasi-invariance checks for the two-variable symmetric
picture: F is quasi-invariant when dF/dx vanishes on the line x = -a(x+y).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

import numpy as np

from .fastrank import rank_mod_p, rref_mod_p
from .linalg import EchelonBasis
from .poly import Poly
from .scalars import QQ, GF, PrimeField, default_prime, second_prime
from .series import HilbertData
from .subalgebra import GeneratorFamily, ProductTable, _partitions, subalgebra_dims


class CertificationFailure(RuntimeError):
    """Raised when a certificate search or verification step fails; the
    report pinpoints the first failing item."""

    def __init__(self, report: dict):
        super().__init__(report.get("reason", "certification failed"))
        self.report = report


# ---------------------------------------------------------------------------
# annihilators and the recursion


def _partitions_with_parts(d: int, parts: tuple):
    """Partitions of d using only the given part sizes, descending."""
    parts = tuple(sorted(set(parts), reverse=True))

    def rec(d, i):
        if d == 0:
            yield ()
            return
        for k in range(i, len(parts)):
            p = parts[k]
            if p <= d:
                for rest in rec(d - p, k):
                    yield (p,) + rest

    yield from rec(d, 0)


@dataclass
class AnnihilatorPoly:
    """A monic polynomial u^m + sum_j c_j(P) u^j annihilating a linear
    coordinate form, with c_j weighted-homogeneous of degree m - j in the
    parameter generators (recorded as partitions of m - j into parameter
    degrees)."""

    var: str
    form_coeffs: list
    degree: int
    coeffs: dict  # j -> {partition tuple -> Fraction}
    verified: bool = False

    def symbol_poly(self) -> list:
        """Coefficients a_0..a_m as polynomials in parameter symbols."""
        out = [dict(self.coeffs.get(j, {})) for j in range(self.degree)]
        out.append({(): Fraction(1)})
        return out

    def expand(self, form: Poly, products) -> Poly:
        """Full expansion of the annihilator applied to the form."""
        total = Poly.zero(form.nvars, form.field)
        powf = Poly.constant(1, form.nvars, form.field)
        for j in range(self.degree):
            for part, c in self.coeffs.get(j, {}).items():
                total = total + (products(part) * powf).scale(c)
            powf = powf * form
        return total + powf

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "form": [str(c) for c in self.form_coeffs],
            "degree": self.degree,
            "coefficients": [
                {"power": j,
                 "terms": [[list(part), str(c)] for part, c in sorted(terms.items())]}
                for j, terms in sorted(self.coeffs.items()) if terms
            ],
            "verified": self.verified,
        }


class _ParamProducts:
    """Memoized products of the parameter generators, keyed by descending
    partitions of their degrees (degrees must be distinct)."""

    def __init__(self, params: dict):
        # params: degree -> Poly
        self.params = params
        self._cache: dict = {(): None}

    def __call__(self, part: tuple) -> Poly:
        if part not in self._cache:
            rest = self(part[1:])
            p = self.params[part[0]]
            self._cache[part] = p if rest is None else rest * p
        out = self._cache[part]
        if out is None:
            some = next(iter(self.params.values()))
            out = Poly.constant(1, some.nvars, some.field)
        return out


def _param_map(params) -> dict:
    m: dict = {}
    for p in params:
        d = p.homogeneous_degree()
        if d in m:
            raise ValueError("parameter generators must have distinct degrees")
        m[d] = p
    return m


def annihilator_poly(var, params, m: int, field=QQ):
    """Monic degree-m annihilator of a linear form over the parameter
    generators, or None if no such identity exists at this degree.

    var: a degree-1 Poly, or a variable index into the ambient ring.
    The solution is the canonical echelon one, so output is deterministic.
    """
    params = list(params)
    pmap = _param_map(params)
    nvars = params[0].nvars
    if isinstance(var, int):
        form = Poly.variable(var, nvars, field)
        label = f"v{var + 1}"
    else:
        form = var
        label = repr(var)
    basis = EchelonBasis(field)
    labels = []
    prods = _ParamProducts(pmap)
    xj = Poly.constant(1, nvars, field)
    for j in range(m):
        for part in _partitions_with_parts(m - j, tuple(pmap)):
            basis.insert((prods(part) * xj).terms)
            labels.append((j, part))
        xj = xj * form
    comb = basis.coordinates(xj.terms)
    if comb is None:
        return None
    coeffs: dict = {}
    for idx, c in comb.items():
        j, part = labels[idx]
        coeffs.setdefault(j, {})[part] = -c
    ann = AnnihilatorPoly(label, list(form.terms.values()), m, coeffs)
    if not ann.expand(form, prods).is_zero():
        raise CertificationFailure(
            {"reason": "annihilator failed re-expansion", "var": label})
    ann.verified = True
    return ann


def _annihilator_possible_mod_p(form: Poly, pmap: dict, m: int, p: int) -> bool:
    """Necessary condition for a degree-m annihilator, checked mod p: the
    form's m-th power must be in the candidate span after reduction.  A rank
    drop mod p can only produce a false positive (caught by the exact solve),
    never hide an exact solution unless p divides a clearing denominator
    (in which case the caller falls back to the exact search)."""
    prods = _ParamProducts(pmap)
    colindex: dict = {}
    rows = []
    xj = Poly.constant(1, form.nvars, form.field)
    for j in range(m):
        for part in _partitions_with_parts(m - j, tuple(pmap)):
            cols, vals, _ = _clear_int_row((prods(part) * xj).terms, colindex)
            rows.append((cols, vals))
        xj = xj * form
    cols, vals, den = _clear_int_row(xj.terms, colindex)
    if den % p == 0:
        raise ZeroDivisionError("clearing denominator divisible by p")
    ncols = len(colindex)
    return rank_mod_p(rows, ncols, p) == rank_mod_p(rows + [(cols, vals)], ncols, p)


def find_annihilator(var, params, m0: int, field=QQ):
    """Search degrees m0 .. 2*m0 and return the first annihilator found.

    Over Q, each candidate degree is first prescreened mod the working
    prime; the exact echelon solve (and its re-expansion check) only runs at
    degrees that pass, so the result is still exact and canonical."""
    params = list(params)
    pmap = _param_map(params)
    nvars = params[0].nvars
    form = Poly.variable(var, nvars, field) if isinstance(var, int) else var
    for m in range(m0, 2 * m0 + 1):
        if field == QQ:
            try:
                if not _annihilator_possible_mod_p(form, pmap, m,
                                                   default_prime()):
                    continue
            except (ZeroDivisionError, OverflowError):
                pass
        ann = annihilator_poly(var, params, m, field)
        if ann is not None:
            return ann
    return None


def _symbol_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for p1, c1 in f.items():
        for p2, c2 in g.items():
            key = tuple(sorted(p1 + p2, reverse=True))
            s = out.get(key, Fraction(0)) + c1 * c2
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def distinct_annihilators(annihilators) -> list:
    """The annihilators with duplicates removed (coordinates of equal weight
    share one polynomial; it only needs to divide the recursion once)."""
    out: list = []
    for ann in annihilators:
        if not any(a.degree == ann.degree and a.coeffs == ann.coeffs
                   for a in out):
            out.append(ann)
    return out


def recursion_coefficients(annihilators) -> list:
    """Coefficients a_0..a_L of Q(u), the product of the distinct
    annihilators, as polynomials in parameter symbols; L = sum of the
    distinct degrees and a_L = 1.  Q is divisible by every coordinate's
    annihilator, so it annihilates every coordinate."""
    coeffs = [{(): Fraction(1)}]
    for ann in distinct_annihilators(annihilators):
        fac = ann.symbol_poly()
        new = [dict() for _ in range(len(coeffs) + len(fac) - 1)]
        for i, a in enumerate(coeffs):
            if not a:
                continue
            for j, b in enumerate(fac):
                if not b:
                    continue
                prod = _symbol_mul(a, b)
                tgt = new[i + j]
                for k, c in prod.items():
                    s = tgt.get(k, Fraction(0)) + c
                    if s:
                        tgt[k] = s
                    elif k in tgt:
                        del tgt[k]
        coeffs = new
    return coeffs


def _expand_symbol(sym: dict, prods: _ParamProducts, nvars, field) -> Poly:
    total = Poly.zero(nvars, field)
    for part, c in sym.items():
        total = total + prods(part).scale(field.of(c))
    return total


def _serialize_symbols(coeffs) -> list:
    return [
        {"power": i,
         "terms": [[list(part), str(c)] for part, c in sorted(sym.items())]}
        for i, sym in enumerate(coeffs)
    ]


# ---------------------------------------------------------------------------
# quasi-invariants


def _dx_on_line(f: Poly, a: Fraction):
    """Coefficients (by degree) of df/dx evaluated at (x,y)=(-a t,(1+a) t)."""
    a = Fraction(a)
    df = f.partial_derivative(0)
    out: dict = {}
    for (i, j), c in df.terms.items():
        v = c * (-a) ** i * (1 + a) ** j
        d = i + j
        s = out.get(d, QQ.zero) + v
        if s:
            out[d] = s
        elif d in out:
            del out[d]
    return out


def quasi_invariant_check(f: Poly, a) -> bool:
    """True iff df/dx vanishes identically on the line x = -a(x+y)."""
    if f.nvars != 2:
        raise ValueError("quasi-invariance is defined for 2-variable polynomials")
    return not _dx_on_line(f, a)


def quasi_invariant_dims(a, max_degree: int) -> list:
    """Dimensions of the quasi-invariant subspaces of the symmetric
    polynomials in two variables, degree by degree."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("a = 0 degenerates the quasi-invariance condition")
    dims = []
    for d in range(max_degree + 1):
        n = 0
        cut = 0
        for i in range(d, (d - 1) // 2, -1):
            j = d - i
            mono = Poly({(i, j): QQ.one}, 2, QQ)
            if i != j:
                mono = mono + Poly({(j, i): QQ.one}, 2, QQ)
            n += 1
            if _dx_on_line(mono, a):
                cut = 1
        dims.append(n - cut)
    return dims


# ---------------------------------------------------------------------------
# the freeness certificate


@dataclass
class FreenessCertificate:
    family: dict
    field: str
    policy: str
    rank: int
    denominator_degrees: list
    numerator: list
    generators: list          # partition tuples of generator indices
    annihilators: list        # AnnihilatorPoly
    recursion: list           # symbol polys a_0..a_L
    recursion_checked: list   # shift values n verified by direct expansion
    memberships: list         # {"item", "degree", "witness", ...}
    primes: list = dc_field(default_factory=list)
    verified: bool = False
    failure: dict | None = None

    @property
    def recursion_degree(self) -> int:
        return len(self.recursion) - 1

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "field": self.field,
            "policy": self.policy,
            "rank": self.rank,
            "denominator_degrees": list(self.denominator_degrees),
            "numerator": list(self.numerator),
            "generators": [list(g) for g in self.generators],
            "annihilators": [a.to_json() for a in self.annihilators],
            "recursion_degree": self.recursion_degree,
            "recursion": _serialize_symbols(self.recursion),
            "recursion_checked": list(self.recursion_checked),
            "memberships": self.memberships,
            "primes": list(self.primes),
            "verified": self.verified,
            "failure": self.failure,
        }


def _coordinate_forms(fam: GeneratorFamily, field=QQ):
    """The ambient coordinate linear forms whose power sums generate the
    family (for a slice family this includes the eliminated coordinate)."""
    nv = fam.nvars
    forms = [(f"v{k + 1}", Poly.variable(k, nv, field)) for k in range(nv)]
    if fam.kind == "slice-newton":
        lam = fam.weights.entries
        last = Poly.linear([field.of(-(l / lam[-1])) for l in lam[:-1]], field=field)
        forms.append((f"v{nv + 1}(eliminated)", last))
    return forms


def _coordinate_weights(fam: GeneratorFamily):
    if fam.kind == "slice-newton":
        return list(fam.weights.entries)
    if fam.kind == "newton":
        return list(fam.weights.entries)
    return [fam.a] * fam.r + [Fraction(1)] * fam.s


def _power_sum(fam: GeneratorFamily, i: int, field=QQ) -> Poly:
    """P_i extended to i = 0 (the weight sum) and, on a slice, i = 1 (zero)."""
    if i == 0:
        return Poly.constant(field.of(sum(_coordinate_weights(fam), Fraction(0))),
                             fam.nvars, field)
    if i < fam.min_index:
        return Poly.zero(fam.nvars, field)
    return fam.generator(i, field)


def _clear_int_row(terms: dict, colindex: dict):
    """Fraction vector -> (cols, int vals, denominator scale)."""
    den = 1
    for c in terms.values():
        den = lcm(den, c.denominator)
    cols = []
    vals = []
    for mkey, c in terms.items():
        if mkey not in colindex:
            colindex[mkey] = len(colindex)
        cols.append(colindex[mkey])
        vals.append(int(c * den))
    return cols, vals, den


def _modp_span(rows, ncols: int, p: int):
    """Reduced RREF of coordinate-augmented rows mod p; returns the rows
    whose pivots are genuine (non-augmented) columns."""
    aug = [(list(cols) + [ncols + k], list(vals) + [1])
           for k, (cols, vals) in enumerate(rows)]
    pivcols, R = rref_mod_p(aug, ncols + len(rows), p, reduced=True)
    main = [i for i, c in enumerate(pivcols) if c < ncols]
    return R[main], [pivcols[i] for i in main]


def _modp_reduce(Rm, pivm, ncols: int, width: int, tcols, tvals, p: int):
    t = np.zeros(width)
    if tcols:
        np.add.at(t, tcols, np.array([int(v) % p for v in tvals], dtype=np.float64))
    if len(pivm):
        coeffs = t[pivm].copy()
        t -= coeffs @ Rm
        t %= p
    member = not t[:ncols].any()
    coords = (-t[ncols:]) % p
    return member, coords


class _ModuleSpan:
    """Spanning vectors of the degree-d piece of the C[params]-module on the
    chosen generators; shared row construction for any membership policy."""

    def __init__(self, table: ProductTable, param_degrees: tuple, gens: list):
        self.table = table
        self.param_degrees = tuple(param_degrees)
        self.gens = list(gens)

    def labels(self, d: int):
        out = []
        for g in self.gens:
            e = sum(g)
            if e > d:
                continue
            for part in _partitions_with_parts(d - e, self.param_degrees):
                out.append((part, g))
        return out

    def vector(self, label) -> Poly:
        part, g = label
        return self.table.product(tuple(sorted(part + g, reverse=True)))


def _membership_q(span: _ModuleSpan, targets):
    """Exact memberships over Q.  targets: list of (name, degree, Poly)."""
    by_degree: dict = {}
    for name, d, poly in targets:
        by_degree.setdefault(d, []).append((name, poly))
    out = []
    for d in sorted(by_degree):
        labels = span.labels(d)
        basis = EchelonBasis(QQ)
        for lab in labels:
            basis.insert(span.vector(lab).terms)
        for name, poly in by_degree[d]:
            comb = basis.coordinates(poly.terms)
            if comb is None:
                raise CertificationFailure(
                    {"reason": "membership failed", "item": name, "degree": d})
            witness = [[ [list(labels[i][0]), list(labels[i][1])], str(c)]
                       for i, c in sorted(comb.items())]
            out.append({"item": name, "degree": d, "witness": witness,
                        "prime": None})
    return out


def _membership_two_primes(span: _ModuleSpan, targets, primes):
    """Memberships certified by agreement mod two primes; witnesses are the
    canonical coordinates mod the first prime."""
    p1, p2 = primes
    by_degree: dict = {}
    for name, d, poly in targets:
        by_degree.setdefault(d, []).append((name, poly))
    out = []
    for d in sorted(by_degree):
        labels = span.labels(d)
        colindex: dict = {}
        int_rows = []
        scales = []
        for lab in labels:
            cols, vals, den = _clear_int_row(span.vector(lab).terms, colindex)
            int_rows.append((cols, vals))
            scales.append(den)
        tgt_rows = []
        for name, poly in by_degree[d]:
            cols, vals, den = _clear_int_row(poly.terms, colindex)
            tgt_rows.append((name, cols, vals, den))
        ncols = len(colindex)
        width = ncols + len(int_rows)
        rows_p = {p: [(c, [int(v) % p for v in vals]) for c, vals in int_rows]
                  for p in (p1, p2)}
        spans = {p: _modp_span(rows_p[p], ncols, p) for p in (p1, p2)}
        for name, tcols, tvals, tden in tgt_rows:
            results = {}
            for p in (p1, p2):
                Rm, pivm = spans[p]
                member, coords = _modp_reduce(Rm, pivm, ncols, width,
                                              tcols, tvals, p)
                results[p] = (member, coords)
            if results[p1][0] != results[p2][0]:
                raise CertificationFailure(
                    {"reason": "primes disagree on membership",
                     "item": name, "degree": d, "primes": [p1, p2]})
            if not results[p1][0]:
                raise CertificationFailure(
                    {"reason": "membership failed", "item": name, "degree": d})
            # coordinates of the original (unscaled) vectors mod p1
            coords = results[p1][1]
            inv_t = pow(tden % p1, -1, p1)
            witness = []
            for k, c in enumerate(coords):
                c = int(c) * scales[k] % p1 * inv_t % p1
                if c:
                    witness.append([[list(labels[k][0]), list(labels[k][1])], c])
            out.append({"item": name, "degree": d, "witness": witness,
                        "prime": p1})
    return out


def _select_generators(fam: GeneratorFamily, table: ProductTable,
                       param_degrees: tuple, numerator: list):
    """Greedy canonical generator choice: in each degree with a positive
    numerator coefficient, add the first spanning products (in partition
    order) that enlarge the module span."""
    gens: list = []
    if numerator and numerator[0]:
        gens.append(())
    for d in range(1, len(numerator)):
        need = numerator[d]
        if need <= 0:
            continue
        span = _ModuleSpan(table, param_degrees, gens)
        basis = EchelonBasis(QQ)
        for lab in span.labels(d):
            basis.insert(span.vector(lab).terms)
        added = 0
        for part in _partitions(d, d, fam.min_index):
            if all(p in param_degrees for p in part):
                continue
            vec = table.product(part).terms
            if basis.insert(dict(vec)):
                gens.append(part)
                added += 1
                if added == need:
                    break
        if added != need:
            raise CertificationFailure(
                {"reason": "could not complete generator selection",
                 "degree": d, "needed": need, "found": added})
    return gens


def freeness_certificate(fam: GeneratorFamily, gens=None, field=QQ,
                         policy: str | None = None, max_degree: int | None = None,
                         direct_recursion=None) -> FreenessCertificate:
    """Search for and verify a freeness certificate for the family's algebra
    over its distinguished polynomial subalgebra.

    policy "q" does every membership over Q (exact witnesses); "two-primes"
    certifies memberships by agreement of two prime fields (default for
    three or more ambient variables, where exact coordinates are
    determinant-sized).  Annihilators and the recursion are always exact.
    Raises CertificationFailure with a pinpointed report on failure.
    """
    nv = fam.nvars
    if policy is None:
        policy = "q" if nv <= 2 else "two-primes"
    denom = fam.denominator_degrees()
    if max_degree is None:
        max_degree = sum(denom) + 6
    rank = fam.bezout_rank()
    hd = subalgebra_dims(fam, max_degree, QQ)
    numerator = list(hd.numerator)
    if any(q < 0 for q in numerator) or sum(numerator) != rank:
        raise CertificationFailure(
            {"reason": "numerator incompatible with freeness",
             "numerator": numerator, "rank": rank})

    param_degrees = tuple(denom)
    table = ProductTable(fam, QQ)
    params = [table.generator(i) for i in param_degrees]
    prods = _ParamProducts(_param_map(params))

    if gens is None:
        gens = _select_generators(fam, table, param_degrees, numerator)
    else:
        gens = [tuple(sorted(g, reverse=True)) for g in gens]
    gen_degrees = sorted(sum(g) for g in gens)
    free_numerator = [0] * (max(gen_degrees) + 1)
    for e in gen_degrees:
        free_numerator[e] += 1
    if len(gens) != rank or free_numerator != numerator:
        raise CertificationFailure(
            {"reason": "generators do not match the numerator",
             "generators": [list(g) for g in gens], "numerator": numerator})

    # 1-2: annihilators and the monic recursion.  Coordinates are tried
    # against already-found annihilators first (equal-weight coordinates
    # share one); each annihilator is verified by exact re-expansion, and
    # the recursion is their symbol-level product, so it annihilates every
    # coordinate and sum a_i P_{n+i} = 0 holds for every shift n.
    annihilators = []
    for label, form in _coordinate_forms(fam):
        ann = None
        for prev in sorted(annihilators, key=lambda a: a.degree):
            if prev.expand(form, prods).is_zero():
                ann = AnnihilatorPoly(label, list(form.terms.values()),
                                      prev.degree, prev.coeffs, verified=True)
                break
        if ann is None:
            ann = find_annihilator(form, params, rank)
            if ann is None:
                raise CertificationFailure(
                    {"reason": "no annihilator found", "var": label,
                     "searched_to": 2 * rank})
            ann.var = label
        annihilators.append(ann)
    recursion = recursion_coefficients(annihilators)
    L = len(recursion) - 1

    expanded = [_expand_symbol(sym, prods, nv, QQ) for sym in recursion]
    if direct_recursion is None:
        direct_recursion = range(0, L + 1) if nv <= 2 else range(0, 2)
    recursion_checked = []
    for n in direct_recursion:
        total = Poly.zero(nv, QQ)
        for i, A in enumerate(expanded):
            if not A.is_zero():
                total = total + A * _power_sum(fam, n + i)
        if not total.is_zero():
            raise CertificationFailure(
                {"reason": "recursion identity failed", "shift": n})
        recursion_checked.append(n)

    # 3-4: power sums below the recursion degree, and algebra closure
    span = _ModuleSpan(table, param_degrees, gens)
    singleton = {g[0] for g in gens if len(g) == 1}
    targets = []
    for j in range(fam.min_index, L):
        if j in param_degrees or j in singleton:
            continue
        targets.append((f"P{j}", j, table.product((j,))))
    nontrivial = [g for g in gens if g]
    for i in range(len(nontrivial)):
        for j in range(i, len(nontrivial)):
            combined = tuple(sorted(nontrivial[i] + nontrivial[j], reverse=True))
            targets.append((f"T{i + 2}*T{j + 2}", sum(combined),
                            table.product(combined)))
    primes = []
    if policy == "q":
        memberships = _membership_q(span, targets)
    elif policy == "two-primes":
        p1 = field.p if isinstance(field, PrimeField) else default_prime()
        primes = [p1, second_prime(p1)]
        memberships = _membership_two_primes(span, targets, primes)
    else:
        raise ValueError(f"unknown policy {policy!r}")

    cert = FreenessCertificate(
        family=fam.describe(), field=getattr(field, "tag", "q"), policy=policy,
        rank=rank, denominator_degrees=list(param_degrees),
        numerator=numerator, generators=gens, annihilators=annihilators,
        recursion=recursion, recursion_checked=recursion_checked,
        memberships=memberships, primes=primes)
    cert.verified = verify_freeness_certificate(cert, fam)
    if not cert.verified:
        raise CertificationFailure({"reason": "re-verification failed"})
    return cert


def verify_freeness_certificate(cert: FreenessCertificate,
                                fam: GeneratorFamily) -> bool:
    """Independent audit with fresh arithmetic: re-expand every annihilator
    against its coordinate, recompute the recursion as the symbol product of
    the distinct annihilators, and re-verify each membership witness by
    direct expansion."""
    table = ProductTable(fam, QQ)
    params = [table.generator(i) for i in cert.denominator_degrees]
    prods = _ParamProducts(_param_map(params))
    forms = dict(_coordinate_forms(fam))
    nv = fam.nvars

    if len(cert.generators) != cert.rank:
        return False
    for ann in cert.annihilators:
        if not ann.expand(forms[ann.var], prods).is_zero():
            return False
    # the recursion must be the exact symbol product of the (distinct)
    # annihilators; divisibility then transfers coordinate annihilation to
    # the full recursion without any further expansion
    if recursion_coefficients(cert.annihilators) != cert.recursion:
        return False
    if {ann.var for ann in cert.annihilators} != set(forms):
        return False

    span = _ModuleSpan(table, cert.denominator_degrees, cert.generators)
    for mb in cert.memberships:
        name = mb["item"]
        if name.startswith("P"):
            target = table.product((int(name[1:]),))
        else:
            i, j = (int(k[1:]) - 2 for k in name.split("*"))
            nontrivial = [g for g in cert.generators if g]
            target = table.product(tuple(sorted(nontrivial[i] + nontrivial[j],
                                                reverse=True)))
        if mb["prime"] is None:
            total = Poly.zero(nv, QQ)
            for (part, g), c in mb["witness"]:
                total = total + span.vector((tuple(part), tuple(g))).scale(
                    QQ.of(Fraction(c)))
            if not (total - target).is_zero():
                return False
        else:
            p = mb["prime"]
            acc: dict = {}
            for (part, g), c in mb["witness"]:
                vec = span.vector((tuple(part), tuple(g))).terms
                for mkey, coeff in vec.items():
                    num = coeff.numerator * pow(coeff.denominator, -1, p) % p
                    acc[mkey] = (acc.get(mkey, 0) + int(c) * num) % p
            for mkey, coeff in target.terms.items():
                num = coeff.numerator * pow(coeff.denominator, -1, p) % p
                acc[mkey] = (acc.get(mkey, 0) - num) % p
            if any(v % p for v in acc.values()):
                return False
    return True
