import cmath
import random
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from paramodular import singularities as S
from paramodular.singularities import CyclicQuotient as C, Verdict

SEED = 0


def test_age_examples():
    assert S.reid_tai_age(C(2, (1, 1, 1)), 1) == Fraction(3, 2)
    assert S.reid_tai_age(C(3, (0, 1, 1)), 1) == Fraction(2, 3)
    assert S.reid_tai_age(C(3, (1, 2, 1)), 2) == Fraction(5, 3)
    with pytest.raises(ValueError):
        S.reid_tai_age(C(3, (1, 2, 1)), 3)


def test_quasireflection_examples():
    assert S.is_quasireflection(C(2, (0, 0, 1)), 1)
    assert not S.is_quasireflection(C(2, (0, 1, 1)), 1)
    assert not S.is_quasireflection(C(3, (1, 2, 1)), 1)
    with pytest.raises(S.QuasiReflectionError):
        S.classify_cyclic(C(2, (0, 0, 1)))


def test_classify_examples():
    assert S.classify_cyclic(C(2, (1, 1, 1))).is_canonical
    assert S.classify_cyclic(C(3, (1, 2, 1))).is_canonical
    assert S.classify_cyclic(C(2, (0, 1, 1))) is Verdict.CANONICAL
    assert S.classify_cyclic(C(3, (0, 1, 1))) is Verdict.NOT_CANONICAL
    assert S.classify_cyclic(C(2, (1, 2, 1))) is Verdict.CANONICAL
    assert S.classify_cyclic(C(1, (0, 0, 0))) is Verdict.SMOOTH
    # Least age 3/2 and 4/3: strictly above one.
    assert S.classify_cyclic(C(2, (1, 1, 1))) is Verdict.TERMINAL
    assert S.classify_cyclic(C(3, (1, 2, 1))) is Verdict.TERMINAL


def non_reflection_types():
    return st.integers(2, 30).flatmap(
        lambda r: st.tuples(st.just(r), st.tuples(*[st.integers(0, r - 1)] * 3)))


def _safe_classify(q):
    try:
        return S.classify_cyclic(q)
    except S.QuasiReflectionError:
        return None


@given(non_reflection_types())
def test_permutation_invariance(data):
    r, w = data
    verdicts = {_safe_classify(C(r, perm)) for perm in permutations(w)}
    assert len(verdicts) == 1


@given(non_reflection_types())
def test_age_symmetry(data):
    r, w = data
    q = C(r, w)
    for k in range(1, r):
        total = S.reid_tai_age(q, k) + S.reid_tai_age(q, r - k)
        assert total.denominator == 1
        assert total == sum(1 for a in q.weights if (k * a) % r)


@given(non_reflection_types())
def test_fast_kernel_agrees(data):
    q = C(*data)
    v = _safe_classify(q)
    if v is None:
        with pytest.raises(S.QuasiReflectionError):
            S.classify_cyclic_fast(q)
    else:
        assert S.classify_cyclic_fast(q)[0] is v


def test_cyclic_and_monomial_agree():
    rng = random.Random(SEED)
    done = 0
    while done < 100:
        r = rng.randint(2, 30)
        q = C(r, tuple(rng.randrange(r) for _ in range(3)))
        v = _safe_classify(q)
        if v is None:
            continue
        assert S.classify_monomial(S.cyclic_as_monomial(q)) is v, f"seed {SEED}: {q}"
        done += 1


def test_monomial_examples():
    assert S.classify_monomial(S.MonomialGroup([S.zeta3()])) is Verdict.CANONICAL
    g = S.branch_semidirect_group(7, 2)
    assert g.order == 21
    assert S.classify_monomial(g) is Verdict.CANONICAL
    third = S.cyclic_as_monomial(C(3, (1, 2, 1)))
    assert S.classify_monomial(third) is S.classify_cyclic(C(3, (1, 2, 1)))


@pytest.mark.parametrize("p", [7, 13])
def test_semidirect_groups_canonical(p):
    for r in range(p):
        assert S.classify_monomial(S.branch_semidirect_group(p, r)).is_canonical, r


def test_semidirect_order_3p_exactly_at_cube_roots():
    for r in range(13):
        g = S.branch_semidirect_group(13, r)
        assert (g.order == 39) == ((r * r + r + 1) % 13 == 0)


def test_eigen_arguments_match_numpy():
    rng = random.Random(SEED)
    for _ in range(200):
        perm = tuple(rng.sample(range(3), 3))
        phases = tuple(Fraction(rng.randrange(12), 12) for _ in range(3))
        m = S.MonomialMatrix(perm, phases)
        ev = np.linalg.eigvals(np.array(m.to_matrix()))
        got = sorted(cmath.phase(x) / (2 * cmath.pi) % 1.0 for x in ev)
        want = [float(t) for t in m.eigen_arguments()]
        # Arguments near 1 wrap to 0 under floating point.
        got = sorted(0.0 if abs(g - 1) < 1e-9 else g for g in got)
        assert np.allclose(got, want, atol=1e-9), (perm, phases)


def test_eh_examples():
    e = S.eh_series_type(13, 2)
    assert e.quotient.weights == (3, 11, 6)
    assert not e.excluded
    assert S.eh_series_type(7, 2).excluded
    assert S.eh_series_type(5, 0).excluded


@pytest.mark.parametrize("p", [13, 173])
def test_eh_family_has_non_canonical_members(p):
    table = S.eh_series_table(p)
    assert len(table) == p
    assert any(not row["excluded"] and row["verdict"] == "NOT_CANONICAL" for row in table)


def test_eh_golden():
    from paramodular.verify import load_eh_golden
    golden = load_eh_golden()
    for p in (13, 173):
        assert S.eh_series_table(p) == golden[str(p)]


def test_catalog_matches():
    summary = S.catalog_summary()
    assert summary["mismatches"] == []
    assert summary["unchecked"] == ["P_{2,1}"]
    by_name = {row["name"]: row for row in summary["records"]}
    assert by_name["Q_{1,0}"]["computed"] == "CANONICAL"
    assert by_name["C_{3,1}"]["computed"] == "NOT_CANONICAL"
    assert by_name["EH_ORDER2"]["computed"] == "CANONICAL"
