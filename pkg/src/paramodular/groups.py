"""Paramodular groups, their level subgroups and the action on the Siegel space.

Matrices are 4x4 ``Mat`` objects acting by ``Z -> (AZ + B)(CZ + D)^-1`` and
preserving ``J = [[0, 1], [-1, 0]]`` (2x2 blocks).  Membership in the
paramodular group of level ``t`` is an entrywise lattice pattern plus the
symplectic condition; the level subgroup imposes a congruence pattern on
``g - 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_arith import GaussRational, Mat, QuadScalar, SingularMatrixError, mat_inverse

# Slot codes: 0 -> Z, 1 -> tZ, -1 -> (1/t)Z, 2 -> t^2 Z  (exponent of t).
PARAMODULAR_PATTERN = (
    (0, 0, 0, 1),
    (1, 0, 1, 1),
    (0, 0, 0, 1),
    (0, -1, 0, 0),
)
# Pattern on g - 1 for the level subgroup.
LEVEL_PATTERN = (
    (0, 0, 0, 1),
    (1, 1, 1, 2),
    (0, 0, 0, 1),
    (0, 0, 0, 1),
)

J = Mat([
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
])
ONE = Mat.identity(4)


@dataclass(frozen=True)
class GroupElement:
    matrix: Mat
    label: str | None = None

    def __matmul__(self, other):
        return GroupElement(self.matrix @ _mat(other))


def _mat(g) -> Mat:
    return g.matrix if isinstance(g, GroupElement) else g


I1 = GroupElement(Mat.diag(-1, 1, -1, 1), "I1")
# Printed form of the second involution: both diagonal blocks equal A.  It is
# not symplectic for J; the symplectic element with upper block A is
# diag(A, A^-T) = diag(A, A^T), which is what I2 denotes here.
I2_PRINTED = GroupElement(Mat([
    [-1, -1, 0, 0],
    [0, 1, 0, 0],
    [0, 0, -1, -1],
    [0, 0, 0, 1],
]), "I2_PRINTED")
I2 = GroupElement(Mat([
    [-1, -1, 0, 0],
    [0, 1, 0, 0],
    [0, 0, -1, 0],
    [0, 0, -1, 1],
]), "I2")
MINUS_ONE = GroupElement(-ONE, "MINUS_ONE")


def theta(p: int) -> GroupElement:
    """Duality involution; entries in Q(sqrt p)."""
    s = QuadScalar.sqrt(p)
    si = s.inverse()
    return GroupElement(Mat([
        [0, si, 0, 0],
        [s, 0, 0, 0],
        [0, 0, 0, s],
        [0, 0, si, 0],
    ]), "THETA")


def pq2_conjugator_printed(q: int) -> GroupElement:
    """``diag(1, q^-2, 1, q^2)`` exactly as printed for the level-p*q^2 comparison."""
    q = Fraction(q)
    return GroupElement(Mat.diag(1, 1 / q ** 2, 1, q ** 2), "Q_PRINTED")


def pq2_conjugator(q: int) -> GroupElement:
    """``diag(1, q^-1, 1, q)``: conjugates the level-p*q^2 group into the level-p group.

    Conjugation by ``diag(1, u, 1, 1/u)`` rescales the (2,4) entry by ``u^2``
    and the (4,2) entry by ``u^-2``; matching ``pq^2 Z -> pZ`` forces ``u = 1/q``.
    """
    q = Fraction(q)
    return GroupElement(Mat.diag(1, 1 / q, 1, q), "Q_OF_COR62")


def e_block(p: int) -> Mat:
    return Mat.diag(1, p)


def is_symplectic(g) -> bool:
    m = _mat(g)
    if m.shape != (4, 4):
        return False
    return m.T @ J @ m == J


def _as_rational(x):
    if isinstance(x, QuadScalar):
        if not x.is_rational():
            return None
        return x.a
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    return None


def _matches(m: Mat, pattern, t: int) -> bool:
    for i in range(4):
        for j in range(4):
            x = _as_rational(m[i, j])
            if x is None:
                return False
            scaled = x / Fraction(t) ** pattern[i][j]
            if scaled.denominator != 1:
                return False
    return True


def in_paramodular(g, t: int) -> bool:
    m = _mat(g)
    return _matches(m, PARAMODULAR_PATTERN, t) and is_symplectic(m)


def in_level(g, t: int) -> bool:
    m = _mat(g)
    return _matches(m - ONE, LEVEL_PATTERN, t) and is_symplectic(m)


def conjugate(g, h) -> GroupElement:
    """``h g h^-1``; rational output when every sqrt part cancels."""
    hm = _mat(h)
    out = hm @ _mat(g) @ _inverse(hm)
    if out.is_rational():
        out = out.to_rational()
    return GroupElement(out)


@lru_cache(maxsize=256)
def _inverse(m: Mat) -> Mat:
    return mat_inverse(m)


def _upper(b: Mat) -> Mat:
    return Mat.blocks(Mat.identity(2), b, Mat.zeros(2), Mat.identity(2))


def _lower(c: Mat) -> Mat:
    return Mat.blocks(Mat.identity(2), Mat.zeros(2), c, Mat.identity(2))


def _levi(a: Mat) -> Mat:
    return Mat.blocks(a, Mat.zeros(2), Mat.zeros(2), mat_inverse(a).T)


@lru_cache(maxsize=64)
def generators(t: int) -> tuple[Mat, ...]:
    """Pattern-respecting elements used to build random words (not a proven generating set)."""
    t = Fraction(t)
    return (
        _upper(Mat([[1, 0], [0, 0]])),
        _upper(Mat([[0, t], [t, 0]])),
        _upper(Mat([[0, 0], [0, t]])),
        _lower(Mat([[1, 0], [0, 0]])),
        _lower(Mat([[0, 1], [1, 0]])),
        _lower(Mat([[0, 0], [0, 1 / t]])),
        _levi(Mat([[1, 1], [0, 1]])),
        _levi(Mat([[1, 0], [t, 1]])),
        I1.matrix,
        I2.matrix,
        MINUS_ONE.matrix,
    )


def random_element(t: int, seed: int, word_length: int) -> GroupElement:
    """Deterministic random word of the given length in :func:`generators`."""
    rng = random.Random(f"paramodular:{t}:{seed}")
    gens = generators(t)
    invs = [_inverse(g) for g in gens]
    m = ONE
    for _ in range(word_length):
        k = rng.randrange(len(gens))
        m = m @ (gens[k] if rng.random() < 0.5 else invs[k])
    return GroupElement(m)


@dataclass(frozen=True)
class SiegelPoint:
    """Point ``[[tau1, tau2], [tau2, tau3]]`` of the degree-2 Siegel space."""

    tau1: GaussRational
    tau2: GaussRational
    tau3: GaussRational

    def __post_init__(self):
        for name in ("tau1", "tau2", "tau3"):
            v = getattr(self, name)
            if not isinstance(v, GaussRational):
                object.__setattr__(self, name, GaussRational(v))
        y1, y2, y3 = self.tau1.im, self.tau2.im, self.tau3.im
        if not (y1 > 0 and y1 * y3 - y2 * y2 > 0):
            raise ValueError("imaginary part is not positive definite")

    def as_matrix(self) -> Mat:
        return Mat([[self.tau1, self.tau2], [self.tau2, self.tau3]])


def _complexify(m: Mat) -> Mat:
    return m.map(lambda x: x if isinstance(x, GaussRational) else GaussRational(x))


def moebius_action(g, z: SiegelPoint) -> SiegelPoint:
    m = _mat(g)
    if not m.is_rational():
        raise ValueError("Moebius action is evaluated for rational matrices only")
    m = _complexify(m.to_rational())
    a, b = m.block(0, 0, 2, 2), m.block(0, 2, 2, 2)
    c, d = m.block(2, 0, 2, 2), m.block(2, 2, 2, 2)
    zm = z.as_matrix()
    try:
        denom = mat_inverse(c @ zm + d)
    except SingularMatrixError:
        raise SingularMatrixError("CZ + D is singular at this point") from None
    w = (a @ zm + b) @ denom
    if w[0, 1] != w[1, 0]:
        raise ValueError("image is not symmetric; g is not symplectic")
    return SiegelPoint(w[0, 0], w[0, 1], w[1, 1])


def random_siegel_point(rng: random.Random, bound: int = 5) -> SiegelPoint:
    def r():
        return Fraction(rng.randint(-bound * 4, bound * 4), rng.randint(1, 4))

    while True:
        y1 = Fraction(rng.randint(1, bound * 4), rng.randint(1, 4))
        y3 = Fraction(rng.randint(1, bound * 4), rng.randint(1, 4))
        y2 = r() / 4
        if y1 * y3 - y2 * y2 > 0:
            return SiegelPoint(GaussRational(r(), y1), GaussRational(r(), y2),
                               GaussRational(r(), y3))
