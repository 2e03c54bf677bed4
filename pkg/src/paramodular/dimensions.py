"""Cusp-form dimension bookkeeping.

Weight-2 Jacobi cusp form dimensions, the orders and indices relating the
paramodular group to its level subgroup, and leading ``k^3`` coefficients of
the cusp-form dimension growth together with an exact audit of the index
chain that produces the paramodular coefficient.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import isprime

from .exact_arith import rational_json


class GroupKind(enum.Enum):
    PARAMODULAR = "paramodular"
    LEVEL = "level"
    PRINCIPAL = "principal"


@dataclass(frozen=True)
class GroupTag:
    kind: GroupKind
    level: int

    @classmethod
    def paramodular(cls, p):
        return cls(GroupKind.PARAMODULAR, p)

    @classmethod
    def level_subgroup(cls, p):
        return cls(GroupKind.LEVEL, p)

    @classmethod
    def principal(cls, l):
        return cls(GroupKind.PRINCIPAL, l)


@dataclass(frozen=True)
class DimensionCoefficient:
    group_tag: GroupTag
    leading: Fraction


@dataclass(frozen=True)
class IndexRecord:
    p: int
    sl2_order: int
    level_index: int
    covering_degree: int


def _require_odd_prime(p: int) -> None:
    if not (isinstance(p, int) and p > 2 and isprime(p)):
        raise ValueError(f"expected an odd prime, got {p!r}")


def bracket6(m: int) -> int:
    """``floor(m/6)``, minus one when ``m = 1 mod 6``."""
    if m < 1:
        raise ValueError("bracket6 is defined for m >= 1")
    q = m // 6
    return q - 1 if m % 6 == 1 else q


def jacobi_cusp_dim_weight2(t: int) -> int:
    """Dimension of weight-2 Jacobi cusp forms of index ``t``.

    The closed formula is established for prime ``t``; for composite ``t``
    the same sum is returned but should be read as an extrapolation.
    """
    if t < 1:
        raise ValueError("index must be positive")
    four_t = 4 * t
    return sum(bracket6(1 + j) - (j * j) // four_t for j in range(1, t + 1))


def jacobi_formula_status(t: int) -> str:
    return "prime index" if isprime(t) else "formula extrapolation"


def index_record(p: int) -> IndexRecord:
    _require_odd_prime(p)
    sl2 = p * (p * p - 1)
    return IndexRecord(p=p, sl2_order=sl2, level_index=p * (p ** 4 - 1) // 2,
                       covering_degree=sl2 // 2)


def principal_index(l: int) -> int:
    """``[Sp(4,Z)/+-1 : Gamma(l)]`` for ``l >= 3``."""
    if l < 3:
        raise ValueError("principal congruence index formula needs l >= 3")
    idx = l ** 10
    for q in _prime_divisors(l):
        idx = idx * (q ** 2 - 1) * (q ** 4 - 1) // q ** 6
    return idx // 2


def _prime_divisors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def cusp_dim_leading(tag: GroupTag) -> DimensionCoefficient:
    n = tag.level
    if tag.kind is GroupKind.PARAMODULAR:
        _require_odd_prime(n)
        lead = Fraction(n * n + 1, 8640)
    elif tag.kind is GroupKind.LEVEL:
        _require_odd_prime(n)
        lead = Fraction(n * (n ** 4 - 1), 17280)
    else:
        lead = Fraction(principal_index(n), 8640)
    return DimensionCoefficient(tag, lead)


@dataclass
class AuditStep:
    label: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self):
        return {"label": self.label, "lhs": rational_json(self.lhs), "rhs": rational_json(self.rhs),
                "holds": self.holds}


@dataclass
class AuditReport:
    name: str
    p: int
    steps: list[AuditStep] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    factor: Fraction | None = None

    @property
    def passed(self) -> bool:
        return all(s.holds for s in self.steps)

    def to_json(self):
        return {"name": self.name, "p": self.p, "passed": self.passed,
                "steps": [s.to_json() for s in self.steps], "notes": list(self.notes),
                "factor": None if self.factor is None else rational_json(self.factor)}


def audit_prop22_chain(p: int) -> AuditReport:
    """Recompute the paramodular leading coefficient from indices.

    ``2 / [Gamma_p : Gamma(l)] * [Gamma(1)bar : Gamma(l)] / 8640`` collapses
    to ``[Gamma(1)bar : level] / [Gamma_p : level] / 4320``, which must equal
    ``(p^2 + 1)/8640``.  Each link is recorded with both sides.
    """
    rec = index_record(p)
    rep = AuditReport("index-chain", p)
    via_indices = Fraction(rec.level_index, rec.sl2_order) / 4320
    stated = cusp_dim_leading(GroupTag.paramodular(p)).leading
    rep.steps.append(AuditStep("level index p(p^4-1)/2 = p(p^2-1)(p^2+1)/2",
                               Fraction(rec.level_index),
                               Fraction(p * (p * p - 1) * (p * p + 1), 2)))
    rep.steps.append(AuditStep("(level_index / sl2_order) / 4320 = (p^2+1)/8640",
                               via_indices, stated))
    level_lead = cusp_dim_leading(GroupTag.level_subgroup(p)).leading
    rep.steps.append(AuditStep("level coefficient / paramodular coefficient = covering degree",
                               level_lead / stated, Fraction(rec.covering_degree)))
    # Principal-level route with l = p^2: 2/|Gamma_p(l)| * dim S_k(Gamma(l)).
    l = p * p
    quotient_order = Fraction(principal_index(l) * rec.sl2_order, rec.level_index)
    principal_lead = cusp_dim_leading(GroupTag.principal(l)).leading
    rep.steps.append(AuditStep(f"2/|Gamma_p(l)| * k^3/8640 [Gamma(1)bar : Gamma(l)], l = {l}",
                               2 / quotient_order * principal_lead, stated))
    return rep
