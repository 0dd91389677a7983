import random
from fractions import Fraction

import pytest

from acm.poly import isotypic_gen
from acm.scalars import GF, QQ
from acm.series import closed_form_hrs, expand_rational_series
from acm.subalgebra import (
    GeneratorFamily,
    NonFiniteParameter,
    ProductTable,
    SweepReport,
    bezout_rank,
    cm_verdict_subalgebra,
    default_candidate_grid,
    module_dims,
    parameter_sweep,
    subalgebra_dims,
)


def test_bezout_rank():
    assert bezout_rank((1, 1, 1)) == 1
    assert bezout_rank((3, 2, 1)) == 6
    assert bezout_rank((2, 2, 1)) == 3
    assert bezout_rank((6, 5, 1, 1)) == 12
    assert bezout_rank((Fraction(5, 3), Fraction(5, 3))) == 1


def test_generator_family_shapes():
    fam = GeneratorFamily.slice_newton(Fraction(3), Fraction(2))
    assert fam.nvars == 2
    assert fam.min_index == 2
    assert fam.denominator_degrees() == (2, 3)
    assert fam.bezout_rank() == 6
    fam4 = GeneratorFamily.newton((6, 5, 1, 1), slice=True)
    assert fam4.nvars == 3
    assert fam4.denominator_degrees() == (2, 3, 4)
    assert fam4.bezout_rank() == 12
    dfam = GeneratorFamily.deformed(2, 1, Fraction(7, 2))
    assert dfam.nvars == 3
    assert dfam.min_index == 1
    assert dfam.denominator_degrees() == (1, 2, 3)


def test_deformed_nonfinite_values_rejected():
    with pytest.raises(NonFiniteParameter):
        GeneratorFamily.deformed(2, 1, 0)
    with pytest.raises(NonFiniteParameter):
        GeneratorFamily.deformed(2, 1, -1)
    with pytest.raises(NonFiniteParameter):
        GeneratorFamily.deformed(2, 1, Fraction(-1, 2))
    # -1/3 has denominator 3 > r = 2, so it is fine
    GeneratorFamily.deformed(2, 1, Fraction(-1, 3))
    # allow_nonfinite bypasses the guard
    GeneratorFamily.deformed(2, 1, 0, allow_nonfinite=True)


def test_product_table_memoizes():
    fam = GeneratorFamily.slice_newton(Fraction(3), Fraction(2))
    table = ProductTable(fam, QQ)
    p23 = table.product((3, 2))
    assert p23 == table.generator(3) * table.generator(2)
    assert table.product((3, 2)) is p23
    spanning = table.degree_spanning_set(6)
    # partitions of 6 into parts >= 2: (6), (4,2), (3,3), (2,2,2)
    assert len(spanning) == 4


def test_generic_slice_family_free_series():
    # a = b generic: numerator (1 + t^4 + t^5) over (1-t^2)(1-t^3)
    rng = random.Random(0)
    for _ in range(3):
        a = Fraction(rng.randint(1, 100), rng.randint(1, 50))
        if a in (1, Fraction(1, 2)):
            continue
        fam = GeneratorFamily.slice_newton(a, a)
        hd = subalgebra_dims(fam, 12)
        assert hd.dims == expand_rational_series([1, 0, 0, 0, 1, 1], [2, 3], 12)
        assert hd.numerator == [1, 0, 0, 0, 1, 1]


def test_three_two_slice_family_numerator():
    fam = GeneratorFamily.slice_newton(Fraction(3), Fraction(2))
    hd = subalgebra_dims(fam, 16)
    assert hd.numerator[:11] == [1, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1]


def test_two_variable_symmetric_dims():
    # weights (1, 1): the power sums generate all symmetric polynomials in
    # two variables, so the degree-d dimension counts partitions of d with
    # at most two parts
    fam = GeneratorFamily.newton((1, 1), slice=False)
    hd = subalgebra_dims(fam, 10)
    assert hd.dims == [d // 2 + 1 for d in range(11)]
    assert hd.numerator == [1]


def test_gf_agrees_with_q():
    fam = GeneratorFamily.slice_newton(Fraction(3), Fraction(2))
    hq = subalgebra_dims(fam, 12, QQ)
    hp = subalgebra_dims(fam, 12, GF(32003))
    assert hq.dims == hp.dims


def test_deformed_dims_match_closed_form():
    for r, s in ((2, 1), (1, 2), (2, 2)):
        fam = GeneratorFamily.deformed(r, s, Fraction(12345, 677))
        hd = subalgebra_dims(fam, 10)
        assert hd.dims == closed_form_hrs(r, s, 10)


def test_module_dims_isotypic():
    beta = Fraction(7, 3)
    fam = GeneratorFamily.slice_newton(beta + 1, beta)
    gens = [isotypic_gen(beta, i) for i in range(1, 9)]
    hd = module_dims(fam, gens, 8)
    assert hd.dims == [0, 1, 1, 2, 3, 5, 7, 10, 11]
    assert hd.numerator == [0, 1, 1, 1, 1, 2, 3, 3, 1]
    assert sum(hd.numerator) == 13


def test_module_dims_rejects_inhomogeneous_generator():
    from acm.poly import Poly
    fam = GeneratorFamily.slice_newton(Fraction(3), Fraction(2))
    bad = (Poly.variable(0, 2) + Poly.variable(0, 2) * Poly.variable(1, 2),)
    with pytest.raises(ValueError):
        module_dims(fam, [bad], 4)


def test_cm_verdict_notcm_by_numerator():
    fam = GeneratorFamily.slice_newton(Fraction(3), Fraction(2))
    v = cm_verdict_subalgebra(fam, attempt_certificate=False)
    assert v.status == "notCM"
    assert v.rules[0].id == "numerator-exceeds-rank"


def test_cm_verdict_cm_by_certificate():
    fam = GeneratorFamily.slice_newton(Fraction(5, 3), Fraction(5, 3))
    v = cm_verdict_subalgebra(fam)
    assert v.status == "CM"
    assert v.certificate is not None
    assert v.rules[0].id == "freeness-certificate"


def test_cm_verdict_unknown_without_certificate():
    fam = GeneratorFamily.slice_newton(Fraction(5, 3), Fraction(5, 3))
    v = cm_verdict_subalgebra(fam, attempt_certificate=False)
    assert v.status == "unknown"
    assert v.certainty == "none"


def test_default_candidate_grid():
    grid = default_candidate_grid(1, 1)
    assert Fraction(1) in grid and Fraction(-2) in grid
    assert Fraction(1, 2) in grid and Fraction(-1, 2) in grid
    assert all(-2 <= g <= 2 for g in grid)


def test_parameter_sweep_deterministic_and_correct():
    grid = default_candidate_grid(2, 1)
    sweep1 = parameter_sweep(lambda a: GeneratorFamily.deformed(2, 1, a),
                             grid, max_degree=8, seed=11)
    sweep2 = parameter_sweep(lambda a: GeneratorFamily.deformed(2, 1, a),
                             grid, max_degree=8, seed=11)
    assert sweep1.to_json() == sweep2.to_json()
    assert isinstance(sweep1, SweepReport)
    # known drop values for (r, s) = (2, 1): 1/2 and 1
    assert Fraction(1) in sweep1.drop_set
    assert Fraction(1, 2) in sweep1.drop_set
    # -1 and -1/2 are not finitely generated there
    assert Fraction(-1) in sweep1.nonfinite
    assert Fraction(-1, 2) in sweep1.nonfinite
    assert not sweep1.flags


def test_subalgebra_dims_invariant_under_weight_permutation_and_scaling():
    rng = random.Random(5)
    for _ in range(3):
        w = [Fraction(rng.randint(1, 9)) for _ in range(3)]
        fam1 = GeneratorFamily.newton(w)
        fam2 = GeneratorFamily.newton(list(reversed(w)))
        d1 = subalgebra_dims(fam1, 8).dims
        d2 = subalgebra_dims(fam2, 8).dims
        assert d1 == d2
        c = Fraction(rng.randint(2, 7), rng.randint(1, 5))
        fam3 = GeneratorFamily.newton([c * x for x in w])
        assert subalgebra_dims(fam3, 8).dims == d1
