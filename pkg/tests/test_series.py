from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from acm.series import (
    HilbertData,
    closed_form_hrs,
    expand_rational_series,
    numerator_from_dims,
)


def test_expand_single_denominator():
    # 1 / (1 - t^2) = 1 + t^2 + t^4 + ...
    assert expand_rational_series([1], [2], 6) == [1, 0, 1, 0, 1, 0, 1]


def test_expand_known_free_series():
    # (1 + t^4 + t^5) / ((1 - t^2)(1 - t^3))
    dims = expand_rational_series([1, 0, 0, 0, 1, 1], [2, 3], 12)
    assert dims == [1, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6]


def test_numerator_from_dims_inverts_expansion():
    num = [1, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1]
    dims = expand_rational_series(num, [2, 3], 20)
    assert numerator_from_dims(dims, [2, 3]) == num


@given(
    num=st.lists(st.integers(-4, 6), min_size=1, max_size=8),
    dens=st.lists(st.integers(1, 5), min_size=1, max_size=3),
)
@settings(max_examples=200, deadline=None)
def test_round_trip_property(num, dens):
    degree = len(num) + sum(dens) + 5
    dims = expand_rational_series(num, dens, degree)
    back = numerator_from_dims(dims, dens)
    trimmed = list(num)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    assert back == trimmed


def test_denominator_order_irrelevant():
    num = [1, 2, 0, 3]
    a = expand_rational_series(num, [2, 3, 4], 15)
    b = expand_rational_series(num, [4, 2, 3], 15)
    assert a == b


def test_closed_form_hrs_small_cases():
    # r = s = 1: the two-variable generic series with generators in
    # degrees 1 and 2 and one relation pattern
    h11 = closed_form_hrs(1, 1, 8)
    # 1/(1-t) + t^2/(1-t)^2 = 1 + t + 2t^2 + 3t^3 + ...
    assert h11 == [1, 1, 2, 3, 4, 5, 6, 7, 8]
    # symmetry is not expected, but degree-0 term is always 1
    for r, s in ((2, 1), (1, 2), (2, 2), (3, 1)):
        h = closed_form_hrs(r, s, 12)
        assert h[0] == 1
        assert all(c >= 0 for c in h)
        assert len(h) == 13


def test_closed_form_hrs_matches_sum_definition():
    # recompute via the definition term by term for (r, s) = (2, 2)
    r, s, degree = 2, 2, 12
    total = [0] * (degree + 1)
    for i in range(s + 1):
        shift = i * (r + 1)
        if shift > degree:
            continue
        term = [0] * (degree + 1)
        term[shift] = 1
        term = expand_rational_series(term, list(range(1, i + 1)), degree)
        total = [a + b for a, b in zip(total, term)]
    expected = expand_rational_series(total, list(range(1, r + 1)), degree)
    assert closed_form_hrs(r, s, degree) == expected


def test_hilbert_data_round_trip_and_flags():
    hd = HilbertData.from_dims(
        expand_rational_series([1, 0, 0, 0, 1, 1], [2, 3], 14), [2, 3])
    assert hd.numerator == [1, 0, 0, 0, 1, 1]
    assert hd.round_trip_ok()
    assert hd.nonnegative_numerator()
    assert hd.numerator_value_at_one() == 3
    assert hd.max_degree == 14
    j = hd.to_json()
    assert set(j) == {"dims", "denominator_degrees", "numerator"}


def test_hilbert_data_negative_numerator_detected():
    dims = expand_rational_series([1, 1, -1], [2], 10)
    hd = HilbertData.from_dims(dims, [2])
    assert not hd.nonnegative_numerator()
