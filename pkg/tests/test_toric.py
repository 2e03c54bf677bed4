import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import primerange

from paramodular import kernels, toric
from paramodular.toric import QuotientLatticeData as D

SEED = 0


def test_data_validation():
    with pytest.raises(ValueError):
        D(6, (1, 1, 1))
    with pytest.raises(ValueError):
        D(5, (0, 1, 1))


def test_dual_membership_examples():
    d = D(5, (1, 2, 3))
    assert toric.dual_membership((0, 0, 0), d)
    assert toric.dual_membership((5, 0, 0), d)
    assert toric.dual_membership((1, 2, 0), d)
    assert not toric.dual_membership((1, 0, 0), d)


@pytest.mark.parametrize("p, nu", [(5, (1, 2, 3)), (7, (1, 1, 1)), (13, (3, 5, 11))])
def test_dual_index_examples(p, nu):
    assert toric.dual_index(D(p, nu)) == p


def test_dual_index_random():
    rng = random.Random(SEED)
    primes = list(primerange(3, 38))
    for _ in range(50):
        p = rng.choice(primes)
        assert toric.dual_index(D(p, tuple(rng.randint(1, p - 1) for _ in range(3)))) == p


small_data = st.sampled_from([3, 5, 7, 11, 13]).flatmap(
    lambda p: st.tuples(st.just(p), st.tuples(*[st.integers(1, p - 1)] * 3)))


@settings(max_examples=40)
@given(small_data, st.integers(0, 6))
def test_kernel_matches_brute_force(data, n):
    d = D(*data)
    assert toric.plurigenus_count(d, n, threads=1) == toric.brute_force_count(d, n)


def test_regression_baseline():
    d = D(5, (1, 1, 1))
    assert toric.brute_force_count(d, 6) == 15
    assert toric.plurigenus_count(d, 6) == 15


def test_empty_cases():
    assert toric.plurigenus_count(D(11, (1, 2, 3)), 0) == 0
    d = D(5, (2, 2, 3))
    assert all(toric.plurigenus_count(d, n) == 0 for n in (1, 10, 100))
    rep = toric.asymptotic_report(d, 50)
    assert rep.identically_zero and rep.rows == []
    assert toric.simplex_volume(d).region_volume == 0


@pytest.mark.parametrize("backend", ["python", "cython"])
def test_backends_agree(backend):
    if backend == "cython" and kernels.BACKEND != "cython":
        pytest.skip("compiled kernels not built")
    d = D(11, (1, 2, 3))
    ref = toric.plurigenus_count(d, 40, threads=1, backend="python")
    assert toric.plurigenus_count(d, 40, threads=1, backend=backend) == ref
    assert toric.plurigenus_count(d, 40, threads=3, backend=backend) == ref


@settings(max_examples=25)
@given(small_data, st.integers(1, 20), st.permutations(range(3)))
def test_permutation_invariance(data, n, perm):
    p, nu = data
    a = toric.plurigenus_count(D(p, nu), n, threads=1)
    b = toric.plurigenus_count(D(p, tuple(nu[i] for i in perm)), n, threads=1)
    assert a == b


@pytest.mark.parametrize("p, nu", [(11, (1, 2, 3)), (5, (1, 1, 1)), (13, (1, 3, 4))])
def test_monotone_in_n(p, nu):
    d = D(p, nu)
    counts = [toric.plurigenus_count(d, n) for n in range(1, 60)]
    first = next(i for i, c in enumerate(counts) if c)
    assert all(a <= b for a, b in zip(counts[first:], counts[first + 1:]))


@pytest.mark.parametrize("p, nu", [(11, (1, 2, 3)), (5, (1, 1, 1))])
def test_convergence_under_doubling(p, nu):
    d = D(p, nu)
    ratios = [Fraction(toric.plurigenus_count(d, n), n ** 3) for n in (25, 50, 100, 200)]
    gaps = [abs(b - a) for a, b in zip(ratios, ratios[1:])]
    assert all(x > y for x, y in zip(gaps, gaps[1:]))


def test_volume_examples():
    v = toric.simplex_volume(D(5, (1, 1, 1)))
    assert v.region_volume == Fraction(4, 3)
    assert v.printed_formula == Fraction(32, 3)
    assert not v.agree
    assert toric.simplex_volume(D(11, (1, 2, 3))).region_volume == Fraction(125, 36)


def test_volume_monte_carlo():
    rng = random.Random(SEED)
    p, nu = 11, (1, 2, 3)
    hi = [Fraction(p - sum(nu), v) + 1 for v in nu]  # bounding box of the shifted simplex
    box = 1.0
    for h in hi:
        box *= float(h) - 1
    trials, hits = 400_000, 0
    for _ in range(trials):
        x = [1 + rng.random() * (float(h) - 1) for h in hi]
        if sum(a * b for a, b in zip(nu, x)) < p:
            hits += 1
    estimate = box * hits / trials
    assert abs(estimate - 125 / 36) / (125 / 36) < 0.02


@pytest.mark.parametrize("p, nu, n", [(11, (1, 2, 3), 120), (5, (1, 1, 1), 200)])
def test_asymptotic_within_ten_percent(p, nu, n):
    rep = toric.asymptotic_report(D(p, nu), n)
    assert rep.deviation < Fraction(1, 10)
    assert rep.rows[-1][0] == n
