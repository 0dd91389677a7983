"""Graded Hilbert data: dimension tables, rational-series numerators, and
series expansion.

A graded algebra presented over a polynomial subalgebra with generator
degrees d_1, ..., d_k has Hilbert series h(t) = q(t) / prod(1 - t^{d_i}).
Given the dimension table of h through degree D, the numerator q is recovered
by multiplying through; given q and the degrees, the table is recovered by
expanding.  Both directions are exact integer convolutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def numerator_from_dims(dims, denominator_degrees):
    """Coefficients of q(t) = h(t) * prod(1 - t^d), truncated to len(dims).

    dims[i] is the dimension in degree i.  Trailing zeros are trimmed; the
    result is only meaningful through degree len(dims) - 1, so callers must
    supply enough degrees to see the numerator stabilize.
    """
    q = list(dims)
    for d in denominator_degrees:
        for i in range(len(q) - 1, d - 1, -1):
            q[i] -= q[i - d]
    while q and q[-1] == 0:
        q.pop()
    return q


def expand_rational_series(numerator, denominator_degrees, degree: int):
    """Power series coefficients 0..degree of q(t) / prod(1 - t^d)."""
    c = list(numerator[:degree + 1])
    c += [0] * (degree + 1 - len(c))
    for d in denominator_degrees:
        for i in range(d, degree + 1):
            c[i] += c[i - d]
    return c


def closed_form_hrs(r: int, s: int, degree: int):
    """Series coefficients 0..degree of

        h_{r,s}(t) = 1/((1-t)...(1-t^r)) * sum_{i=0}^{s} t^{i(r+1)} / ((1-t)...(1-t^i)),

    the generic Hilbert series of the deformed Newton-sum algebra on r + s
    variables.
    """
    total = [0] * (degree + 1)
    for i in range(s + 1):
        shift = i * (r + 1)
        if shift > degree:
            break
        term = [0] * (degree + 1)
        term[shift] = 1
        term = expand_rational_series(term, range(1, i + 1), degree)
        for j in range(degree + 1):
            total[j] += term[j]
    return expand_rational_series(total, range(1, r + 1), degree)


@dataclass
class HilbertData:
    """Dimension table plus the derived numerator over a fixed denominator."""

    dims: list
    denominator_degrees: tuple
    numerator: list = field(default_factory=list)

    @classmethod
    def from_dims(cls, dims, denominator_degrees) -> "HilbertData":
        dims = [int(d) for d in dims]
        dd = tuple(int(d) for d in denominator_degrees)
        return cls(dims, dd, numerator_from_dims(dims, dd))

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1

    def numerator_value_at_one(self) -> int:
        return sum(self.numerator)

    def nonnegative_numerator(self) -> bool:
        return all(c >= 0 for c in self.numerator)

    def round_trip_ok(self) -> bool:
        """dims -> numerator -> dims is the identity through max_degree."""
        back = expand_rational_series(
            self.numerator, self.denominator_degrees, self.max_degree
        )
        return back == self.dims

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "denominator_degrees": list(self.denominator_degrees),
            "numerator": list(self.numerator),
        }
