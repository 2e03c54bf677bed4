import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from paramodular import groups
from paramodular.exact_arith import (GaussRational, Mat, QuadScalar, RadicandMismatchError,
                                     SingularMatrixError, frac, mat_inverse, rational_from_json,
                                     rational_json)

rationals = st.fractions(max_denominator=10 ** 6)


@pytest.mark.parametrize("q, expected", [(Fraction(7, 3), Fraction(1, 3)),
                                         (Fraction(-1, 3), Fraction(2, 3)),
                                         (2, 0)])
def test_frac_examples(q, expected):
    assert frac(q) == expected


@given(rationals)
def test_frac_range(q):
    f = frac(q)
    assert 0 <= f < 1
    assert (q - f).denominator == 1


@given(rationals, rationals, rationals, rationals)
def test_quad_commutative_and_norm(a, b, c, d):
    x, y = QuadScalar(a, b, 5), QuadScalar(c, d, 5)
    assert x * y == y * x
    assert x * x.conjugate() == a * a - 5 * b * b
    assert (x * x.conjugate()).is_rational()


def test_quad_refuses_mixed_radicands():
    with pytest.raises(RadicandMismatchError):
        QuadScalar.sqrt(5) + QuadScalar.sqrt(7)
    with pytest.raises(ValueError):
        QuadScalar.sqrt(4)


def test_quad_inverse():
    x = QuadScalar(3, 2, 13)
    assert x * x.inverse() == 1
    assert QuadScalar.sqrt(7) * QuadScalar.sqrt(7) == 7


def test_gauss_rational():
    i = GaussRational(0, 1)
    assert i * i == GaussRational(-1)
    z = GaussRational(Fraction(1, 2), 3)
    assert z * z.inverse() == GaussRational(1)


def test_inverse_examples():
    assert mat_inverse(Mat.identity(4)) == Mat.identity(4)
    q = Fraction(3)
    assert mat_inverse(Mat.diag(1, 1 / q ** 2, 1, q ** 2)) == Mat.diag(1, q ** 2, 1, 1 / q ** 2)
    for p in (5, 7, 13):
        th = groups.theta(p).matrix
        assert mat_inverse(th) == th


def test_singular_matrix():
    with pytest.raises(SingularMatrixError):
        mat_inverse(Mat([[1, 2], [2, 4]]))


def test_random_inverses():
    rng = random.Random(0)
    done = 0
    while done < 1000:
        n = rng.choice((2, 3, 4))
        m = Mat([[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
                 for _ in range(n)])
        if m.det() == 0:
            continue
        inv = mat_inverse(m)
        assert inv @ m == Mat.identity(n)
        assert m @ inv == Mat.identity(n)
        done += 1


@given(rationals)
def test_rational_json_roundtrip(q):
    obj = rational_json(q)
    assert isinstance(obj["num"], str) and isinstance(obj["den"], str)
    assert rational_from_json(obj) == q
