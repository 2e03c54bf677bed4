"""Exact scalars and small dense matrices.

Rationals are :class:`fractions.Fraction`.  On top of that we provide
:class:`QuadScalar` (elements ``a + b*sqrt(d)`` of a real quadratic field),
:class:`GaussRational` (elements of Q(i)) and an immutable :class:`Mat`
whose entries may be any of these.  Nothing here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction


class SingularMatrixError(ValueError):
    pass


class RadicandMismatchError(ValueError):
    pass


def frac(q) -> Fraction:
    """Fractional part ``q - floor(q)``, always in ``[0, 1)``."""
    q = Fraction(q)
    return q - math.floor(q)


def _is_rational(x) -> bool:
    return isinstance(x, _RationalABC)


@lru_cache(maxsize=None)
def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class QuadScalar:
    """``a + b*sqrt(d)`` with rational ``a, b`` and squarefree ``d > 1``."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        if type(self.a) is not Fraction:
            object.__setattr__(self, "a", Fraction(self.a))
        if type(self.b) is not Fraction:
            object.__setattr__(self, "b", Fraction(self.b))
        if not _squarefree(self.d):
            raise ValueError(f"radicand must be a squarefree integer > 1, got {self.d}")

    @classmethod
    def sqrt(cls, d: int) -> "QuadScalar":
        return cls(Fraction(0), Fraction(1), d)

    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise RadicandMismatchError(f"sqrt({self.d}) mixed with sqrt({other.d})")
            return other
        if _is_rational(other):
            return QuadScalar(Fraction(other), Fraction(0), self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.a * o.a + self.d * self.b * o.b,
                          self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.d)

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in quadratic field")
        return QuadScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def is_rational(self) -> bool:
        return self.b == 0

    def to_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if _is_rational(other):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadScalar({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.d})"


@dataclass(frozen=True)
class GaussRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if type(self.re) is not Fraction:
            object.__setattr__(self, "re", Fraction(self.re))
        if type(self.im) is not Fraction:
            object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussRational):
            return other
        if _is_rational(other):
            return GaussRational(Fraction(other), Fraction(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if _is_rational(other):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"


class Mat:
    """Immutable dense matrix over an exact field.

    Entries are stored as a tuple of row tuples.  ``@`` is matrix product,
    ``*`` by a scalar scales every entry.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_norm_entry(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _trusted(cls, rows) -> "Mat":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Mat":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, *entries) -> "Mat":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def blocks(cls, a: "Mat", b: "Mat", c: "Mat", d: "Mat") -> "Mat":
        top = [ra + rb for ra, rb in zip(a.rows, b.rows)]
        bottom = [rc + rd for rc, rd in zip(c.rows, d.rows)]
        return cls(top + bottom)

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def entries(self):
        for r in self.rows:
            yield from r

    def block(self, i0: int, j0: int, h: int, w: int) -> "Mat":
        return Mat([r[j0:j0 + w] for r in self.rows[i0:i0 + h]])

    @property
    def T(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def map(self, fn) -> "Mat":
        return Mat([[fn(x) for x in r] for r in self.rows])

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return self.map(lambda x: -x)

    def __mul__(self, scalar) -> "Mat":
        if isinstance(scalar, Mat):
            return NotImplemented
        return self.map(lambda x: x * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return Mat._trusted(tuple(tuple(_dot(r, c) for c in cols) for r in self.rows))

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return mat_inverse(self) ** (-e)
        result = Mat.identity(self.shape[0])
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for x, y in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Mat([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]"
                                   for r in self.rows) + "])"

    def det(self):
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        det = Fraction(1)
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det = det * a[col][col]
            inv = 1 / a[col][col]
            for i in range(col + 1, n):
                f = a[i][col] * inv
                if f != 0:
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return det

    def is_rational(self) -> bool:
        return all(_is_rational(x) or (isinstance(x, QuadScalar) and x.is_rational())
                   for x in self.entries())

    def to_rational(self) -> "Mat":
        """Drop a vanishing sqrt part; raises if an entry is irrational."""
        return self.map(lambda x: x.to_rational() if isinstance(x, QuadScalar) else x)


def _norm_entry(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, (Fraction, QuadScalar, GaussRational)):
        return x
    if _is_rational(x):
        return Fraction(x)
    raise TypeError(f"unsupported matrix entry {x!r} of type {type(x).__name__}")


def _dot(r, c):
    acc = None
    for x, y in zip(r, c):
        if x == 0 or y == 0:
            continue
        acc = x * y if acc is None else acc + x * y
    return Fraction(0) if acc is None else acc


def mat_inverse(m: Mat) -> Mat:
    """Gauss-Jordan inverse; raises :class:`SingularMatrixError`."""
    n, k = m.shape
    if n != k:
        raise SingularMatrixError(f"non-square matrix {m.shape}")
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return Mat([r[n:] for r in a])


def rational_json(q) -> dict:
    """Serialise an exact rational as decimal numerator/denominator strings."""
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))
