"""Exact scalar arithmetic: rationals and prime fields.

Rational scalars are plain ``fractions.Fraction`` (always reduced, positive
denominator).  Prime-field scalars are ``ModP`` residues in [0, p).  A field
is a lightweight object (``QQ`` or ``GF(p)``) used to coerce coefficients and
tag polynomials/bases so mixed-field arithmetic is rejected early.
"""

from __future__ import annotations

import os
from fractions import Fraction

DEFAULT_PRIME = 32003
SECOND_PRIME = 1000003


def default_prime() -> int:
    """Working prime; the ACM_PRIME environment variable overrides it."""
    return int(os.environ.get("ACM_PRIME", DEFAULT_PRIME))


def second_prime(p: int | None = None) -> int:
    """A prime distinct from p, for two-prime cross checks."""
    p = default_prime() if p is None else p
    return SECOND_PRIME if p != SECOND_PRIME else DEFAULT_PRIME


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class ModP:
    """Residue modulo a prime p, always reduced to [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def __add__(self, other):
        return ModP(self.v + self._val(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.v - self._val(other), self.p)

    def __rsub__(self, other):
        return ModP(self._val(other) - self.v, self.p)

    def __mul__(self, other):
        return ModP(self.v * self._val(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._val(other)
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(self._val(other) * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pow__(self, e: int):
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def _val(self, other) -> int:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixed prime fields: %d vs %d" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(
                    "denominator %d not invertible mod %d" % (other.denominator, self.p)
                )
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented


class RationalField:
    """The field Q; elements are Fraction."""

    char = 0
    tag = "q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field GF(p) for prime p; elements are ModP."""

    tag_prefix = "gfp"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.tag = f"gfp:{p}"

    @property
    def zero(self):
        return ModP(0, self.p)

    @property
    def one(self):
        return ModP(1, self.p)

    def of(self, x):
        if isinstance(x, ModP):
            if x.p != self.p:
                raise ValueError("element of wrong prime field")
            return x
        if isinstance(x, int):
            return ModP(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(
                    "denominator %d not invertible mod %d" % (x.denominator, self.p)
                )
            return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def parse_field(spec: str):
    """Parse a field tag: 'q' or 'gfp:32003' or 'gfp' (default prime)."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rational"):
        return QQ
    if spec.startswith("gfp"):
        if ":" in spec:
            return GF(int(spec.split(":", 1)[1]))
        return GF(default_prime())
    raise ValueError(f"unknown field spec {spec!r} (expected 'q' or 'gfp:<p>')")
