"""Hilbert functions of subalgebras generated by weighted Newton power sums
and their deformations, modules over them, Bezout ranks, and parameter
sweeps for exceptional values.

A family provides homogeneous generators P_i (degree i).  In degree d <= D
only generators with i <= d can contribute, so the span of all products
with parts summing to d is the exact degree-d piece: dimensions computed
this way are exact, not lower bounds.  The products are enumerated by
partitions of d (one product per multiset of generator indices) and
memoized on partition suffixes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import factorial, lcm, prod

from .fastrank import rank_mod_p
from .linalg import EchelonBasis
from .poly import Poly, Weights, deformed_newton, newton_sum, slice_newton_sums
from .scalars import QQ, GF, PrimeField, default_prime, second_prime
from .series import HilbertData
from .verdict import Rule, Verdict


class NonFiniteParameter(ValueError):
    """Parameter value at which the algebra is not finitely generated."""


@dataclass(frozen=True)
class GeneratorFamily:
    """A family of homogeneous generators P_i, one per integer index.

    kinds:
      newton          weighted power sums in r variables (index >= 1)
      slice-newton    power sums restricted to the weighted-sum-zero slice,
                      in r - 1 variables (index >= 2)
      deformed        a * (first r power sums) + (last s power sums) in
                      r + s variables (index >= 1)
    """

    kind: str
    weights: Weights | None = None
    r: int = 0
    s: int = 0
    a: Fraction | None = None

    @classmethod
    def newton(cls, weights, slice: bool = False) -> "GeneratorFamily":
        w = weights if isinstance(weights, Weights) else Weights(weights)
        return cls("slice-newton" if slice else "newton", weights=w)

    @classmethod
    def slice_newton(cls, a, b) -> "GeneratorFamily":
        """The two-parameter slice family: P_i = a x^i + b y^i + (-ax-by)^i."""
        return cls("slice-newton", weights=Weights([Fraction(a), Fraction(b), 1]))

    @classmethod
    def deformed(cls, r: int, s: int, a, allow_nonfinite: bool = False) -> "GeneratorFamily":
        a = Fraction(a)
        if not allow_nonfinite:
            if a == 0:
                raise NonFiniteParameter("a = 0 degenerates the first block")
            if a < 0:
                f = -a
                if f.numerator <= s and f.denominator <= r:
                    raise NonFiniteParameter(
                        f"a = {a} is a non-finitely-generated value "
                        f"(-p/q with p <= {s}, q <= {r})"
                    )
        return cls("deformed", r=r, s=s, a=a)

    @property
    def nvars(self) -> int:
        if self.kind == "newton":
            return self.weights.r
        if self.kind == "slice-newton":
            return self.weights.r - 1
        return self.r + self.s

    @property
    def min_index(self) -> int:
        return 2 if self.kind == "slice-newton" else 1

    def generator(self, i: int, field=QQ) -> Poly:
        if self.kind == "newton":
            return newton_sum(self.weights, i, field)
        if self.kind == "slice-newton":
            return slice_newton_sums(self.weights, i, field)
        return deformed_newton(self.r, self.s, self.a, i, field)

    def parts(self) -> tuple:
        """The weight multiset, for stabilizer-order computations."""
        if self.kind == "deformed":
            return (self.a,) * self.r + (Fraction(1),) * self.s
        return self.weights.entries

    def denominator_degrees(self) -> tuple:
        """Degrees of the distinguished polynomial subalgebra: the first
        dim-many generators."""
        return tuple(range(self.min_index, self.min_index + self.nvars))

    def bezout_rank(self) -> int:
        return bezout_rank(self.parts())

    def describe(self) -> dict:
        d = {"kind": self.kind}
        if self.weights is not None:
            d["weights"] = [str(w) for w in self.weights.entries]
        if self.kind == "deformed":
            d.update(r=self.r, s=self.s, a=str(self.a))
        return d


def bezout_rank(parts) -> int:
    """Generic rank of the algebra over its distinguished polynomial
    subalgebra: the product of the parameter-system degrees divided by the
    order of the stabilizer of the weight vector.

    Both the full system (degrees 1..r) and the slice system (degrees 2..r
    in r-1 variables) have degree product r!.
    """
    parts = tuple(parts)
    r = len(parts)
    mult: dict = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    stab = prod(factorial(m) for m in mult.values())
    return factorial(r) // stab


def _partitions(d: int, max_part: int, min_part: int):
    """Partitions of d into parts in [min_part, max_part], descending."""
    if d == 0:
        yield ()
        return
    for p in range(min(max_part, d), min_part - 1, -1):
        for rest in _partitions(d - p, p, min_part):
            yield (p,) + rest


class ProductTable:
    """Memoized products of family generators, indexed by descending
    partitions of the degree."""

    def __init__(self, fam: GeneratorFamily, field=QQ):
        self.fam = fam
        self.field = field
        self._gens: dict = {}
        self._prods: dict = {(): Poly.constant(1, fam.nvars, field)}

    def generator(self, i: int) -> Poly:
        if i not in self._gens:
            self._gens[i] = self.fam.generator(i, self.field)
        return self._gens[i]

    def product(self, part: tuple) -> Poly:
        if part not in self._prods:
            self._prods[part] = self.generator(part[0]) * self.product(part[1:])
        return self._prods[part]

    def degree_spanning_set(self, d: int):
        """Products spanning the degree-d piece of the algebra."""
        return [self.product(t)
                for t in _partitions(d, d, self.fam.min_index)]


def _clear_row(terms: dict, colindex: dict):
    """Fraction-coefficient vector -> integer (cols, vals) row."""
    den = 1
    for c in terms.values():
        den = lcm(den, c.denominator)
    cols = []
    vals = []
    for m, c in terms.items():
        if m not in colindex:
            colindex[m] = len(colindex)
        cols.append(colindex[m])
        vals.append(int(c * den))
    return cols, vals


def _span_dims_gfp(vector_lists, p: int):
    """Per-degree ranks of Fraction-coefficient vectors, reduced mod p."""
    dims = []
    for vecs in vector_lists:
        colindex: dict = {}
        rows = []
        for terms in vecs:
            # a denominator divisible by p would silently distort ranks
            for c in terms.values():
                if c.denominator % p == 0:
                    raise ZeroDivisionError(
                        f"denominator divisible by the working prime {p}")
            rows.append(_clear_row(terms, colindex))
        dims.append(rank_mod_p(rows, len(colindex), p) if rows else 0)
    return dims


def _span_dims_exact(vector_lists, sort_key=None):
    dims = []
    for vecs in vector_lists:
        basis = EchelonBasis(QQ, sort_key=sort_key)
        for terms in vecs:
            basis.insert(terms)
        dims.append(basis.dim)
    return dims


def _dims_over(vector_lists, field, sort_key=None):
    if field == QQ:
        return _span_dims_exact(vector_lists, sort_key)
    if isinstance(field, PrimeField):
        return _span_dims_gfp(vector_lists, field.p)
    raise TypeError(f"unsupported field {field!r}")


def subalgebra_dims(fam: GeneratorFamily, max_degree: int, field=QQ) -> HilbertData:
    """Exact dimension table of the generated subalgebra through max_degree.

    Products are always formed over Q; for a prime field the integer-cleared
    vectors are reduced mod p, which can only ever under-count (flagged
    separately by two-prime policies in callers).
    """
    table = ProductTable(fam, QQ)
    vector_lists = [[poly.terms for poly in table.degree_spanning_set(d)]
                    for d in range(max_degree + 1)]
    dims = _dims_over(vector_lists, field)
    return HilbertData.from_dims(dims, fam.denominator_degrees())


def module_dims(fam: GeneratorFamily, gens, max_degree: int, field=QQ) -> HilbertData:
    """Dimension table of the module generated by the given vectors of
    homogeneous polynomials over the family's subalgebra.

    Each generator is a tuple of polynomials (its components), all of one
    degree.  Degree-d spanning vectors are (algebra product) * generator
    with total degree d, keyed by (component, monomial).
    """
    table = ProductTable(fam, QQ)
    gens = list(gens)
    degs = []
    for g in gens:
        gd = {c.homogeneous_degree() for c in g if not c.is_zero()}
        if len(gd) != 1 or None in gd:
            raise ValueError(
                "module generator components must be homogeneous of one degree")
        degs.append(gd.pop())
    vector_lists = []
    for d in range(max_degree + 1):
        vecs = []
        for g, e in zip(gens, degs):
            if e > d:
                continue
            for a in table.degree_spanning_set(d - e):
                terms: dict = {}
                for ci, comp in enumerate(g):
                    for m, c in (a * comp).terms.items():
                        terms[(ci, m)] = c
                if terms:
                    vecs.append(terms)
        vector_lists.append(vecs)
    dims = _dims_over(vector_lists, field,
                      sort_key=lambda k: (sum(k[1]), k[0], k[1]))
    return HilbertData.from_dims(dims, fam.denominator_degrees())


def cm_verdict_subalgebra(fam: GeneratorFamily, max_degree: int | None = None,
                          field=QQ, policy: str = "certified",
                          attempt_certificate: bool = True) -> Verdict:
    """Cohen-Macaulayness verdict for the generated subalgebra.

    notCM follows from numerator evidence: a negative coefficient, or a
    running numerator sum exceeding the Bezout rank (a free module over the
    distinguished polynomial subalgebra would have exactly that many
    generators).  CM requires an actual freeness certificate.
    """
    denom = fam.denominator_degrees()
    if max_degree is None:
        max_degree = sum(denom) + 6
    if isinstance(field, PrimeField) and policy == "certified":
        hd = subalgebra_dims(fam, max_degree, field)
        hd2 = subalgebra_dims(fam, max_degree, GF(second_prime(field.p)))
        if hd.dims != hd2.dims:
            raise RuntimeError(
                f"dimension tables disagree between primes: {hd.dims} vs {hd2.dims}")
        certainty = "computed-certified"
    else:
        hd = subalgebra_dims(fam, max_degree, field)
        certainty = ("computed-certified" if field == QQ else "computed-probable")
    rank = fam.bezout_rank()
    details = {
        "family": fam.describe(),
        "dims": hd.dims,
        "numerator": hd.numerator,
        "denominator_degrees": list(denom),
        "bezout_rank": rank,
        "field": getattr(field, "tag", "q"),
    }
    running = 0
    for j, q in enumerate(hd.numerator):
        running += q
        if q < 0:
            return Verdict(
                target="A_lambda", status="notCM", certainty=certainty,
                rules=[Rule("negative-numerator",
                            "a free module numerator counts generators and "
                            "cannot have negative coefficients")],
                details=details)
        if running > rank:
            details["excess_degree"] = j
            return Verdict(
                target="A_lambda", status="notCM", certainty=certainty,
                rules=[Rule("numerator-exceeds-rank",
                            "the running numerator sum exceeds the Bezout "
                            "rank over the distinguished polynomial "
                            "subalgebra, so the algebra is not a free "
                            "module over it")],
                details=details)
    if attempt_certificate:
        from .certify import freeness_certificate
        try:
            cert = freeness_certificate(fam, field=field)
        except Exception:
            cert = None
        if cert is not None and cert.verified:
            return Verdict(
                target="A_lambda", status="CM", certainty=certainty,
                rules=[Rule("freeness-certificate",
                            "the algebra is certified free over its "
                            "distinguished polynomial subalgebra")],
                certificate=cert.to_json(), details=details)
    details["degree_bound"] = max_degree
    return Verdict(target="A_lambda", status="unknown", certainty="none",
                   details=details)


@dataclass
class SweepReport:
    """Result of sweeping one rational parameter over candidate values."""

    max_degree: int
    samples: list
    generic_dims: list
    candidate_dims: dict
    drop_set: list
    nonfinite: list
    flags: list = dc_field(default_factory=list)
    seed: int | None = None

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "samples": [str(a) for a in self.samples],
            "generic_dims": self.generic_dims,
            "candidate_dims": {str(a): d for a, d in self.candidate_dims.items()},
            "drop_set": [str(a) for a in self.drop_set],
            "nonfinite": [str(a) for a in self.nonfinite],
            "flags": self.flags,
            "seed": self.seed,
        }


def default_candidate_grid(r: int, s: int):
    """Signed small rationals +-p/q with p <= s+1, q <= r+1."""
    out = set()
    for p in range(1, s + 2):
        for q in range(1, r + 2):
            out.add(Fraction(p, q))
            out.add(Fraction(-p, q))
    return sorted(out)


def parameter_sweep(make_family, candidates, max_degree: int = 12,
                    field=QQ, seed: int | None = None,
                    generic_samples: int = 3) -> SweepReport:
    """Compare dimension tables at candidate parameter values against the
    generic table (random rational samples, agreement required).

    make_family: callable taking the parameter and returning a
    GeneratorFamily (it may raise NonFiniteParameter).  Candidates at
    non-finitely-generated values are reported separately, not swept.
    """
    rng = random.Random(seed)
    candidates = list(candidates)
    flags: list = []
    samples: list = []
    tables: list = []
    attempts = 0
    while len(samples) < generic_samples and attempts < 6 * generic_samples:
        attempts += 1
        a = Fraction(rng.randint(1, 10 ** 4), rng.randint(1, 10 ** 4))
        if a in candidates or a in samples:
            continue
        try:
            fam = make_family(a)
        except NonFiniteParameter:
            continue
        samples.append(a)
        tables.append(subalgebra_dims(fam, max_degree, field).dims)
    if len(samples) < generic_samples:
        raise RuntimeError("could not draw enough generic samples")
    if len({tuple(t) for t in tables}) != 1:
        flags.append(f"generic samples disagree: {tables}; using majority")
        counts: dict = {}
        for t in tables:
            counts[tuple(t)] = counts.get(tuple(t), 0) + 1
        generic = list(max(counts, key=counts.get))
    else:
        generic = tables[0]
    candidate_dims: dict = {}
    nonfinite: list = []
    drop_set: list = []
    for a in candidates:
        a = Fraction(a)
        try:
            fam = make_family(a)
        except NonFiniteParameter:
            nonfinite.append(a)
            continue
        dims = subalgebra_dims(fam, max_degree, field).dims
        candidate_dims[a] = dims
        if any(x < g for x, g in zip(dims, generic)):
            drop_set.append(a)
        if any(x > g for x, g in zip(dims, generic)):
            flags.append(f"candidate {a} exceeds generic dims; "
                         "generic samples may be degenerate")
    return SweepReport(max_degree, samples, generic, candidate_dims,
                       sorted(drop_set), nonfinite, flags, seed)
