"""Sparse multivariate polynomials over an exact field, plus the generator
families used throughout: Newton weighted power sums, their restriction to
the sum-zero slice, deformed Newton sums, and the isotypic-module generators.

Monomials are dense exponent tuples; the term order is graded, then
lexicographic on exponents (fixed once, so echelon pivots are canonical).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from .scalars import QQ, RationalField

Monomial = tuple  # exponent vector, one entry per variable


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_key(m: Monomial):
    """Sort key for the fixed graded-lex order."""
    return (sum(m), m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Partition:
    """Integer partition, parts sorted descending, all >= 1."""

    parts: tuple

    def __init__(self, parts):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"invalid partition {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict:
        mult = {}
        for p in self.parts:
            mult[p] = mult.get(p, 0) + 1
        return mult

    @property
    def stabilizer_order(self) -> int:
        """|S_lambda| = product of multiplicity factorials."""
        return prod(factorial(m) for m in self.multiplicities.values())

    @property
    def distinct_parts(self) -> tuple:
        return tuple(sorted(set(self.parts), reverse=True))

    def rescaled(self) -> "Partition":
        """Divide all parts by their gcd."""
        from math import gcd
        g = 0
        for p in self.parts:
            g = gcd(g, p)
        return Partition(tuple(p // g for p in self.parts))

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Weights:
    """Rational weight vector (lambda_1, ..., lambda_r).

    With strict=True, every nonempty subset sum must be nonzero: this is the
    condition under which the weighted power sums cut out only the origin and
    the Newton-sum algebra is finitely generated.
    """

    entries: tuple
    strict: bool = True

    def __init__(self, entries, strict: bool = True):
        entries = tuple(Fraction(e) for e in entries)
        if not entries:
            raise ValueError("empty weight vector")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "strict", strict)
        if strict:
            bad = self.zero_subset()
            if bad is not None:
                raise ValueError(
                    f"weights {entries} have zero subset sum on indices {bad}"
                )

    def zero_subset(self):
        """Indices of a nonempty subset with zero sum, or None."""
        r = len(self.entries)
        for k in range(1, r + 1):
            for sub in itertools.combinations(range(r), k):
                if sum(self.entries[i] for i in sub) == 0:
                    return sub
        return None

    @property
    def r(self) -> int:
        return len(self.entries)


class Poly:
    """Sparse polynomial: map from exponent tuple to nonzero coefficient."""

    __slots__ = ("terms", "nvars", "field")

    def __init__(self, terms: dict, nvars: int, field=QQ, *, _clean=True):
        if _clean:
            terms = {m: field.of(c) for m, c in terms.items() if c}
        self.terms = terms
        self.nvars = nvars
        self.field = field

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, field=QQ) -> "Poly":
        return cls({}, nvars, field, _clean=False)

    @classmethod
    def constant(cls, c, nvars: int, field=QQ) -> "Poly":
        c = field.of(c)
        t = {(0,) * nvars: c} if c else {}
        return cls(t, nvars, field, _clean=False)

    @classmethod
    def variable(cls, i: int, nvars: int, field=QQ) -> "Poly":
        m = tuple(1 if j == i else 0 for j in range(nvars))
        return cls({m: field.one}, nvars, field, _clean=False)

    @classmethod
    def linear(cls, coeffs, field=QQ) -> "Poly":
        """Linear form sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        t = {}
        for i, c in enumerate(coeffs):
            c = field.of(c)
            if c:
                t[tuple(1 if j == i else 0 for j in range(n))] = c
        return cls(t, n, field, _clean=False)

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        return max((sum(m) for m in self.terms), default=-1)

    def homogeneous_degree(self):
        """The common degree of all terms, or None if inhomogeneous/zero."""
        degs = {sum(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), self.field.zero)

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            s = c if s is None else s + c
            if s:
                t[m] = s
            elif m in t:
                del t[m]
        return Poly(t, self.nvars, self.field, _clean=False)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()}, self.nvars, self.field,
                    _clean=False)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                s = t.get(m)
                s = c if s is None else s + c
                if s:
                    t[m] = s
                elif m in t:
                    del t[m]
        return Poly(t, self.nvars, self.field, _clean=False)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        result = Poly.constant(1, self.nvars, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = self.field.of(c)
        if not c:
            return Poly.zero(self.nvars, self.field)
        return Poly({m: c * v for m, v in self.terms.items()}, self.nvars, self.field,
                    _clean=False)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus and evaluation ---------------------------------------
    def partial_derivative(self, i: int) -> "Poly":
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                m2 = tuple(e - 1 if j == i else e for j, e in enumerate(m))
                t[m2] = t.get(m2, self.field.zero) + c * m[i]
        return Poly(t, self.nvars, self.field)

    def substitute(self, subs: dict) -> "Poly":
        """Substitute x_i -> subs[i] (a Poly) for each key; others unchanged.

        All substituted polynomials must share a variable count, which becomes
        the variable count of the result if every variable is substituted;
        otherwise substitution targets must live in the same ring.
        """
        if not subs:
            return self
        target = next(iter(subs.values()))
        nv = target.nvars
        for i in range(self.nvars):
            if i not in subs:
                if nv != self.nvars:
                    raise ValueError("partial substitution must stay in the same ring")
        result = Poly.zero(nv, self.field)
        pow_cache: dict = {}
        for m, c in self.terms.items():
            term = Poly.constant(c, nv, self.field)
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in subs:
                    key = (i, e)
                    if key not in pow_cache:
                        pow_cache[key] = subs[i] ** e
                    term = term * pow_cache[key]
                else:
                    term = term * (Poly.variable(i, nv, self.field) ** e)
            result = result + term
        return result

    def evaluate(self, point):
        """Evaluate at a point (sequence of field elements / coercibles)."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        pt = [self.field.of(x) for x in point]
        total = self.field.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = v * x ** e
            total = total + v
        return total

    def map_field(self, field) -> "Poly":
        """Reinterpret coefficients in another field (Q -> GF(p) reduction)."""
        return Poly({m: field.of(c) for m, c in self.terms.items()}, self.nvars, field)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=mono_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(m) if e
            )
            bits.append(f"{c}" + ("*" + mono if mono else ""))
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# generator families
# ---------------------------------------------------------------------------

def newton_sum(w: Weights, i: int, field=QQ) -> Poly:
    """Weighted power sum lambda_1 y_1^i + ... + lambda_r y_r^i."""
    if i < 1:
        raise ValueError("newton_sum needs i >= 1 (the constant is added separately)")
    r = w.r
    t = {}
    for j, lam in enumerate(w.entries):
        c = field.of(lam)
        if c:
            t[tuple(i if k == j else 0 for k in range(r))] = c
    return Poly(t, r, field, _clean=False)


def slice_newton_sums(w: Weights, i: int, field=QQ) -> Poly:
    """Weighted power sum restricted to the sum-zero slice.

    The last variable is eliminated via y_r = -(lambda_1 y_1 + ... +
    lambda_{r-1} y_{r-1}) / lambda_r, so the result lives in r-1 variables
    and the degree-one sum vanishes identically.
    """
    if i < 1:
        raise ValueError("slice Newton sums need i >= 1 (P_1 is 0 on the slice)")
    lam = w.entries
    r = w.r
    if lam[-1] == 0:
        raise ValueError("last weight must be nonzero to eliminate the slice variable")
    nv = r - 1
    last = Poly.linear([-(l / lam[-1]) for l in lam[:-1]], field=field)
    p = Poly.zero(nv, field)
    for j in range(nv):
        p = p + (Poly.variable(j, nv, field) ** i).scale(field.of(lam[j]))
    p = p + (last ** i).scale(field.of(lam[-1]))
    return p


def slice_newton(a, b, i: int, field=QQ) -> Poly:
    """P_i = a x^i + b y^i + (-a x - b y)^i, the three-part slice family."""
    return slice_newton_sums(Weights([Fraction(a), Fraction(b), 1]), i, field)


def deformed_newton(r: int, s: int, a, i: int, field=QQ) -> Poly:
    """Q_{r,s,i} = a (y_1^i + ... + y_r^i) + (z_1^i + ... + z_s^i)."""
    if r < 1 or s < 1:
        raise ValueError("need r, s >= 1")
    if i < 1:
        raise ValueError("need i >= 1")
    nv = r + s
    a = field.of(Fraction(a))
    t = {}
    for j in range(r):
        if a:
            t[tuple(i if k == j else 0 for k in range(nv))] = a
    for j in range(r, nv):
        t[tuple(i if k == j else 0 for k in range(nv))] = field.one
    return Poly(t, nv, field, _clean=False)


def isotypic_gen(beta, i: int, field=QQ):
    """Coefficients of u and v in T_i = (x^i - z^i) u + (y^i - z^i) v,
    where z = -(beta+1) x - beta y.

    Returns the pair of homogeneous degree-i polynomials in x, y.
    """
    if i < 1:
        raise ValueError("need i >= 1")
    beta = Fraction(beta)
    z = Poly.linear([-(beta + 1), -beta], field=field)
    zi = z ** i
    x_i = Poly.variable(0, 2, field) ** i
    y_i = Poly.variable(1, 2, field) ** i
    return (x_i - zi, y_i - zi)
