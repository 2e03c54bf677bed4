from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import primerange

from paramodular import dimensions
from paramodular.dimensions import GroupTag
from paramodular.verify import jacobi_dim_oracle


@pytest.mark.parametrize("m, expected", [(7, 0), (6, 1), (1, -1), (12, 2), (13, 1)])
def test_bracket6_examples(m, expected):
    assert dimensions.bracket6(m) == expected


@given(st.integers(1, 10 ** 9))
def test_bracket6_period(m):
    assert dimensions.bracket6(m + 6) == dimensions.bracket6(m) + 1


def naive_jacobi(t):
    # Literal transcription: sum over j of {j+1}_6 - floor(j^2 / 4t), bracket by cases.
    total = 0
    for j in range(1, t + 1):
        m = j + 1
        b = m // 6 - (1 if m % 6 == 1 else 0)
        total += b - Fraction(j * j, 4 * t).__floor__()
    return total


@pytest.mark.parametrize("t", [1, 2, 37, 71, 73, 173, 997])
def test_jacobi_against_oracles(t):
    v = dimensions.jacobi_cusp_dim_weight2(t)
    assert v == jacobi_dim_oracle(t) == naive_jacobi(t)


def test_jacobi_values():
    assert dimensions.jacobi_cusp_dim_weight2(1) == 0
    assert dimensions.jacobi_cusp_dim_weight2(71) == 0
    assert dimensions.jacobi_cusp_dim_weight2(73) == 2
    assert dimensions.jacobi_cusp_dim_weight2(73) > 0


def test_jacobi_positive_for_primes_above_71():
    assert all(dimensions.jacobi_cusp_dim_weight2(p) > 0 for p in primerange(72, 1001))


def test_jacobi_composite_index_is_labelled():
    assert dimensions.jacobi_formula_status(73) == "prime index"
    assert dimensions.jacobi_formula_status(396) == "formula extrapolation"
    # The formula is not positive for every large composite index.
    assert dimensions.jacobi_cusp_dim_weight2(396) <= 0


@pytest.mark.parametrize("p, sl2, level, cover", [(5, 120, 1560, 60), (3, 24, 120, 12)])
def test_index_record(p, sl2, level, cover):
    rec = dimensions.index_record(p)
    assert (rec.sl2_order, rec.level_index, rec.covering_degree) == (sl2, level, cover)


def test_index_record_37():
    assert dimensions.index_record(37).covering_degree == 25308


def test_index_record_rejects_non_primes():
    with pytest.raises(ValueError):
        dimensions.index_record(15)


def test_leading_coefficients():
    assert dimensions.cusp_dim_leading(GroupTag.paramodular(173)).leading == Fraction(2993, 864)
    lv = dimensions.cusp_dim_leading(GroupTag.level_subgroup(5)).leading
    pm = dimensions.cusp_dim_leading(GroupTag.paramodular(5)).leading
    assert lv / pm == 60


@pytest.mark.parametrize("p", list(primerange(3, 201)))
def test_index_chain(p):
    rep = dimensions.audit_prop22_chain(p)
    assert rep.passed, [s.label for s in rep.steps if not s.holds]
    lv = dimensions.cusp_dim_leading(GroupTag.level_subgroup(p)).leading
    pm = dimensions.cusp_dim_leading(GroupTag.paramodular(p)).leading
    assert lv / pm == dimensions.index_record(p).covering_degree == Fraction(p * (p * p - 1), 2)


def test_chain_examples():
    rec = dimensions.index_record(5)
    assert Fraction(rec.level_index, rec.sl2_order) / 4320 == Fraction(26, 8640)
    assert dimensions.cusp_dim_leading(GroupTag.paramodular(7)).leading == Fraction(5, 864)
