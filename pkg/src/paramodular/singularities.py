"""Reid-Tai classification of 3-dimensional quotient singularities.

A cyclic type ``1/r(a1, a2, a3)`` is the quotient of C^3 by the diagonal
action of ``e^{2 pi i/r}`` with weights ``a_i``.  It is canonical when every
nontrivial power has age ``sum frac(k a_i / r) >= 1`` and terminal when every
age exceeds 1.  Monomial groups are handled the same way using exact
eigenvalue arguments computed from cycle decompositions.

The catalog at the bottom encodes every singular locus named in the proof
with its stated type and expected verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from sympy import isprime

from . import kernels
from .exact_arith import frac, rational_json


class QuasiReflectionError(ValueError):
    """Raised when an element fixes a hyperplane; reflections must be removed first."""


class ClosureTooLargeError(RuntimeError):
    pass


class Verdict(enum.Enum):
    SMOOTH = "SMOOTH"
    TERMINAL = "TERMINAL"
    CANONICAL = "CANONICAL"
    NOT_CANONICAL = "NOT_CANONICAL"

    @property
    def is_canonical(self) -> bool:
        return self is not Verdict.NOT_CANONICAL


@dataclass(frozen=True)
class CyclicQuotient:
    r: int
    weights: tuple[int, int, int]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("order must be positive")
        w = tuple(int(a) % self.r for a in self.weights)
        if len(w) != 3:
            raise ValueError("three weights expected")
        object.__setattr__(self, "weights", w)

    def __str__(self):
        a, b, c = self.weights
        return f"1/{self.r}({a},{b},{c})"

    def to_json(self):
        return {"kind": "cyclic", "r": self.r, "weights": list(self.weights)}


def reid_tai_age(q: CyclicQuotient, k: int) -> Fraction:
    if not 1 <= k < q.r:
        raise ValueError(f"k must lie in [1, {q.r - 1}]")
    return sum((frac(Fraction(k * a, q.r)) for a in q.weights), Fraction(0))


def _nontrivial_count(q: CyclicQuotient, k: int) -> int:
    return sum(1 for a in q.weights if (k * a) % q.r)


def is_quasireflection(q: CyclicQuotient, k: int) -> bool:
    return _nontrivial_count(q, k) == 1


def classify_cyclic(q: CyclicQuotient) -> Verdict:
    ages = []
    for k in range(1, q.r):
        nz = _nontrivial_count(q, k)
        if nz == 0:
            continue
        if nz == 1:
            raise QuasiReflectionError(
                f"{q}: k={k} acts as a quasi-reflection; pass to the quotient by the "
                "reflection subgroup before classifying")
        ages.append(reid_tai_age(q, k))
    if not ages:
        return Verdict.SMOOTH
    lowest = min(ages)
    if lowest > 1:
        return Verdict.TERMINAL
    if lowest == 1:
        return Verdict.CANONICAL
    return Verdict.NOT_CANONICAL


def classify_cyclic_fast(q: CyclicQuotient) -> tuple[Verdict, Fraction | None]:
    """Same verdict as :func:`classify_cyclic` via the integer kernel; also the least age."""
    best, _, quasi = kernels.min_age_sum(q.r, *q.weights)
    if quasi:
        raise QuasiReflectionError(f"{q}: quasi-reflection present")
    if best < 0:
        return Verdict.SMOOTH, None
    age = Fraction(best, q.r)
    if age > 1:
        return Verdict.TERMINAL, age
    if age == 1:
        return Verdict.CANONICAL, age
    return Verdict.NOT_CANONICAL, age


# --- monomial groups ------------------------------------------------------

@dataclass(frozen=True)
class MonomialMatrix:
    """``M e_j = exp(2 pi i * phases[j]) e_{perm[j]}`` with phases in Q/Z."""

    perm: tuple[int, ...]
    phases: tuple[Fraction, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm must be a permutation of 0..n-1")
        object.__setattr__(self, "phases", tuple(frac(x) for x in self.phases))

    @classmethod
    def diagonal(cls, *phases):
        return cls(tuple(range(len(phases))), tuple(Fraction(x) for x in phases))

    @classmethod
    def identity(cls, n=3):
        return cls.diagonal(*([0] * n))

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        # (self @ other) e_j = phase_o[j] * phase_s[perm_o[j]] e_{perm_s[perm_o[j]]}
        perm = tuple(self.perm[other.perm[j]] for j in range(len(self.perm)))
        phases = tuple(other.phases[j] + self.phases[other.perm[j]] for j in range(len(self.perm)))
        return MonomialMatrix(perm, phases)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm))) and all(x == 0 for x in self.phases)

    def eigen_arguments(self) -> list[Fraction]:
        """Eigenvalues as ``exp(2 pi i * theta)``, ``theta`` in [0, 1).

        A cycle of length c with total phase s contributes ``(s + j)/c``, j < c.
        """
        n = len(self.perm)
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            cyc, j = [], start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.perm[j]
            s = sum((self.phases[i] for i in cyc), Fraction(0))
            c = len(cyc)
            out.extend(frac((s + m) / c) for m in range(c))
        return sorted(out)

    def age(self) -> Fraction:
        return sum(self.eigen_arguments(), Fraction(0))

    def to_matrix(self):
        """Dense complex matrix (floating point; for cross-checks only)."""
        import cmath
        n = len(self.perm)
        m = [[0j] * n for _ in range(n)]
        for j in range(n):
            m[self.perm[j]][j] = cmath.exp(2j * cmath.pi * float(self.phases[j]))
        return m


def zeta3() -> MonomialMatrix:
    """``(z1, z2, z3) -> (z3, z1, z2)``."""
    return MonomialMatrix((1, 2, 0), (Fraction(0),) * 3)


def zeta_p(p: int, r: int) -> MonomialMatrix:
    return MonomialMatrix.diagonal(Fraction(1 + r, p), Fraction(-r, p), Fraction(-1, p))


@dataclass
class MonomialGroup:
    generators: list[MonomialMatrix]
    max_order: int = 10000
    elements: list[MonomialMatrix] = field(init=False)

    def __post_init__(self):
        self.elements = _closure(self.generators, self.max_order)

    @property
    def order(self) -> int:
        return len(self.elements)

    def to_json(self):
        return {"kind": "monomial", "order": self.order,
                "generators": [{"perm": list(g.perm), "phases": [rational_json(x) for x in g.phases]}
                               for g in self.generators]}


def _closure(gens, max_order):
    n = len(gens[0].perm) if gens else 3
    ident = MonomialMatrix.identity(n)
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g @ x
                if y not in elems:
                    elems.add(y)
                    if len(elems) > max_order:
                        raise ClosureTooLargeError(f"group order exceeds {max_order}")
                    nxt.append(y)
        frontier = nxt
    return sorted(elems, key=lambda m: (m.perm, m.phases))


def classify_monomial(g: MonomialGroup) -> Verdict:
    least = None
    for x in g.elements:
        if x.is_identity():
            continue
        args = x.eigen_arguments()
        if sum(1 for a in args if a != 0) == 1:
            raise QuasiReflectionError(f"{x} is a quasi-reflection")
        a = sum(args, Fraction(0))
        least = a if least is None else min(least, a)
    if least is None:
        return Verdict.SMOOTH
    if least > 1:
        return Verdict.TERMINAL
    return Verdict.CANONICAL if least == 1 else Verdict.NOT_CANONICAL


def branch_semidirect_group(p: int, r: int, max_order: int = 10000) -> MonomialGroup:
    return MonomialGroup([zeta3(), zeta_p(p, r)], max_order=max_order)


def cyclic_as_monomial(q: CyclicQuotient) -> MonomialGroup:
    return MonomialGroup([MonomialMatrix.diagonal(*(Fraction(a, q.r) for a in q.weights))])


# --- the E(h) family --------------------------------------------------------

@dataclass(frozen=True)
class EHSeriesEntry:
    p: int
    r: int
    quotient: CyclicQuotient
    excluded: bool
    exclusion_reason: str | None


def _order_mod(r: int, p: int) -> int:
    x, k = r % p, 1
    while x != 1:
        x = x * r % p
        k += 1
    return k


def eh_series_type(p: int, r: int) -> EHSeriesEntry:
    if not isprime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    r %= p
    q = CyclicQuotient(p, (r + 1, -r, r * (r + 1)))
    reason = None
    if r == 0:
        reason = "r = 0"
    elif r == 1:
        reason = "r = 1"
    else:
        order = _order_mod(r, p)
        if order == 3:
            reason = "primitive cube root of unity"
        elif order == 4:
            reason = "primitive fourth root of unity"
    return EHSeriesEntry(p, r, q, reason is not None, reason)


def eh_series_table(p: int) -> list[dict]:
    """Classify every residue ``r mod p``; rows carry the verdict and least age."""
    rows = []
    for r in range(p):
        e = eh_series_type(p, r)
        row = {"r": r, "weights": list(e.quotient.weights), "excluded": e.excluded,
               "exclusion_reason": e.exclusion_reason}
        try:
            verdict, age = classify_cyclic_fast(e.quotient)
        except QuasiReflectionError:
            row.update(verdict="QUASI_REFLECTION", min_age=None)
        else:
            row.update(verdict=verdict.value, min_age=None if age is None else rational_json(age))
        rows.append(row)
    return rows


# --- catalog -----------------------------------------------------------------

@dataclass
class SingularityRecord:
    name: str
    locus: str
    quotient_data: CyclicQuotient | MonomialGroup | None
    expected_canonical: bool | None
    provenance: str
    note: str = ""

    def computed(self) -> Verdict | None:
        if self.quotient_data is None:
            return None
        if isinstance(self.quotient_data, CyclicQuotient):
            return classify_cyclic(self.quotient_data)
        return classify_monomial(self.quotient_data)

    def matches(self) -> bool | None:
        v = self.computed()
        if v is None or self.expected_canonical is None:
            return None
        return v.is_canonical == self.expected_canonical

    def to_json(self):
        v = self.computed()
        return {
            "name": self.name,
            "locus": self.locus,
            "type": None if self.quotient_data is None else self.quotient_data.to_json(),
            "type_str": str(self.quotient_data) if isinstance(self.quotient_data, CyclicQuotient) else None,
            "provenance": self.provenance,
            "expected": ("unstated" if self.expected_canonical is None
                         else "CANONICAL" if self.expected_canonical else "NOT_CANONICAL"),
            "computed": None if v is None else v.value,
            "computed_is_canonical": None if v is None else v.is_canonical,
            "match": self.matches(),
            "note": self.note,
        }


HALF_011 = CyclicQuotient(2, (0, 1, 1))
THIRD_011 = CyclicQuotient(3, (0, 1, 1))
HALF_111 = CyclicQuotient(2, (1, 1, 1))
THIRD_121 = CyclicQuotient(3, (1, 2, 1))
HALF_121 = CyclicQuotient(2, (1, 2, 1))


def catalog(semidirect_primes=(7, 13)) -> list[SingularityRecord]:
    recs = [
        SingularityRecord("C_{3,1}", "generic point of the curve {diag(tau1, rho)} in H_1",
                          THIRD_011, False, "interior curve in H_1",
                          "transverse cone on the twisted cubic = 1/3(1,1)"),
        SingularityRecord("C_{5,1}", "generic point of the curve {diag(rho, tau3)} in H_1",
                          THIRD_011, False, "interior curve in H_1", "exchanged with C_{3,1} by Theta"),
        SingularityRecord("C_{4,1}", "generic point of a side of the H_1 square",
                          HALF_011, True, "interior curve in H_1", "transverse ordinary double point"),
        SingularityRecord("C_{6,1}", "generic point of a side of the H_1 square",
                          HALF_011, True, "interior curve in H_1", "transverse ordinary double point"),
        SingularityRecord("P_{1,1}", "corner C_{3,1} n C_{5,1}", THIRD_011, False,
                          "interior curve in H_1",
                          "isotropy contains the transverse order-3 element of C_{3,1}; "
                          "that subgroup already violates the age bound"),
        SingularityRecord("P_{4,1}", "corner C_{3,1} n C_{6,1}", THIRD_011, False,
                          "interior curve in H_1", "contains the transverse element of C_{3,1}"),
        SingularityRecord("P_{3,1}", "corner C_{4,1} n C_{5,1}", THIRD_011, False,
                          "interior curve in H_1", "contains the transverse element of C_{5,1}"),
        SingularityRecord("P_{2,1}", "corner C_{4,1} n C_{6,1}", None, True,
                          "interior curve in H_1", "stated canonical; local group not given"),
        SingularityRecord("Q_{1,0}", "(t1, tau2, tau3) = (0, 0, p i) in D(l_0)", HALF_011, True,
                          "corank-1 boundary", "1/2(0,1,1); resolved by the second blow-up"),
        SingularityRecord("Q_{2,0}", "(0, 0, rho) in D(l_0)", THIRD_011, False,
                          "corank-1 boundary", "neither isolated nor canonical"),
        SingularityRecord("Q_{3,0}", "(0, p(i-1)/2, p i) in D(l_0)", HALF_111, True,
                          "corank-1 boundary", "cone on the Veronese surface"),
        SingularityRecord("Q_{4,0}", "isolated point of D(l_0)", THIRD_121, True,
                          "corank-1 boundary", "same type as Q_{4,1}"),
        SingularityRecord("Q_{1,1}", "C_{6,1} n D(l_1)", HALF_011, True, "corank-1 boundary",
                          "Theta-image of Q_{1,0}"),
        SingularityRecord("Q_{2,1}", "C_{5,1} n D(l_1)", THIRD_011, False, "corank-1 boundary",
                          "Theta-image of Q_{2,0}"),
        SingularityRecord("Q_{3,1}", "isolated point of D(l_1)", HALF_111, True,
                          "corank-1 boundary", "image of Q'_1 from the level cover"),
        SingularityRecord("Q_{4,1}", "isolated point of D(l_1)", THIRD_121, True,
                          "corank-1 boundary", "image of Q'_2 from the level cover"),
        SingularityRecord("EH_ORDER2", "E(h) n closure of branch locus, p = 1, 5 mod 12",
                          HALF_121, True, "corank-2 boundary, branch-locus closure"),
    ]
    for p in semidirect_primes:
        for r in range(p):
            recs.append(SingularityRecord(
                f"EH_ZP_Z3[p={p},r={r}]", "E(h) n closure of branch locus, p = 1, 7 mod 12",
                branch_semidirect_group(p, r), True, "corank-2 boundary, branch-locus closure"))
    return recs


def catalog_summary(records=None) -> dict:
    records = catalog() if records is None else records
    rows = [r.to_json() for r in records]
    return {
        "records": rows,
        "checked": sum(1 for r in rows if r["match"] is not None),
        "mismatches": [r["name"] for r in rows if r["match"] is False],
        "unchecked": [r["name"] for r in rows if r["match"] is None],
    }
