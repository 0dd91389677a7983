from math import comb

import pytest

from acm.arrangement import (
    DegreeImages,
    SubspaceSystem,
    arrangement_dims,
    cm_check_arrangement,
    enumerate_subspaces,
    expected_component_count,
    monomials,
    point_sample_oracle,
    quotient_dims,
)
from acm.poly import Partition
from acm.scalars import GF, QQ


def test_monomials_count():
    for n, d in ((1, 5), (3, 4), (4, 3)):
        ms = list(monomials(n, d))
        assert len(ms) == comb(d + n - 1, n - 1)
        assert all(sum(m) == d for m in ms)
        assert len(set(ms)) == len(ms)


def test_component_counts():
    assert expected_component_count(Partition([2, 1])) == 3
    assert expected_component_count(Partition([2, 2])) == 3
    assert expected_component_count(Partition([3, 2, 2])) == 105
    assert expected_component_count(Partition([1, 1, 1])) == 1
    sys = enumerate_subspaces([2, 1])
    assert sys.count == 3
    for blocks in sys.components:
        assert sorted(len(b) for b in blocks) == [1, 2]


def test_enumeration_limit():
    with pytest.raises(ValueError):
        enumerate_subspaces([3, 2, 2], limit=10)


def test_restrict_monomial():
    sys = enumerate_subspaces([2, 1])
    blocks = sys.components[0]
    m = (2, 1, 3)
    e = sys.restrict_monomial(m, 0)
    assert sum(e) == 6
    assert e == tuple(sum(m[i] for i in blk) for blk in blocks)


def test_single_subspace_is_polynomial_ring():
    # lambda = (n): one component, dims are those of C[y]
    hd = arrangement_dims([3], 5)
    assert hd.dims == [1] * 6
    # lambda = (1,1): full diagonal-free plane arrangement in 2 variables
    hd2 = arrangement_dims([1, 1], 4)
    assert hd2.dims == [1, 2, 3, 4, 5]
    assert hd2.numerator == [1]


def test_two_one_arrangement_dims():
    # three planes through a common line in C^3
    hd = arrangement_dims([2, 1], 5)
    assert hd.denominator_degrees == (1, 1)
    # degree 1: all of C^3 restricted: rank 3
    assert hd.dims[1] == 3
    # numerator must be nonnegative (this arrangement is CM)
    assert all(c >= 0 for c in hd.numerator)
    assert sum(hd.numerator) == 3


def test_gf_matches_q():
    for lam in ([2, 1], [2, 2], [3, 1]):
        hq = arrangement_dims(lam, 4, QQ)
        hp = arrangement_dims(lam, 4, GF(32003))
        assert hq.dims == hp.dims


def test_point_sample_oracle_agreement():
    # independent oracle: evaluation at random points on each component
    for lam in ([2, 1], [2, 2], [1, 1, 1], [3, 2]):
        hd = arrangement_dims(lam, 4)
        pts = point_sample_oracle(lam, 4, seed=123)
        assert pts == hd.dims


def test_quotient_dims_no_forms_is_arrangement():
    hd = arrangement_dims([2, 1], 4)
    q = quotient_dims([2, 1], [], 4)
    assert q == hd.dims


def test_quotient_by_regular_sequence_is_finite():
    lam = [2, 1]
    thetas = [[1, 2, 3], [4, -5, 6]]
    q = quotient_dims(lam, thetas, 8, stop_at_zero=True)
    assert q[-1] == 0
    assert sum(q) == 3  # multiplicity = number of components


def test_cm_check_small_cm():
    v = cm_check_arrangement([2, 1], seed=5)
    assert v.status == "CM"
    assert v.rules[0].id == "regular-sequence-quotient"
    assert v.details["components"] == 3
    v2 = cm_check_arrangement([2, 2], seed=5, field=GF(32003))
    assert v2.status == "CM"


def test_cm_check_single_part():
    v = cm_check_arrangement([4], seed=0)
    assert v.status == "CM"
    assert v.certainty == "theorem-cited"


def test_degree_images_column_structure():
    sys = enumerate_subspaces([2, 1])
    img = DegreeImages(sys, 2)
    rows = img.rows()
    # one column index per component for every monomial
    assert all(len(r) == sys.count for r in rows)
    assert img.ncols <= sys.count * comb(2 + sys.r - 1, sys.r - 1)
