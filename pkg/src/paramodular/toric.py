"""Lattice-point plurigenera of a 3-fold cyclic quotient germ.

For a prime ``p`` and weights ``0 < nu_i < p`` the overlattice
``N' = Z^3 + Z * nu/p`` has dual ``M' = {x in Z^3 : nu.x = 0 (mod p)}``.
The plurigenus attached to the ray through ``nu/p`` counts points of ``M'``
in the open dilated region ``{x_i > n, nu.x < n p}``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy import isprime

from . import kernels


@dataclass(frozen=True)
class QuotientLatticeData:
    p: int
    nu: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(int(v) for v in self.nu))
        if len(self.nu) != 3:
            raise ValueError("nu must have three entries")
        if not isprime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if not all(0 < v < self.p for v in self.nu):
            raise ValueError(f"weights must satisfy 0 < nu_i < p, got {self.nu}")

    @property
    def weight_sum(self) -> int:
        return sum(self.nu)

    @property
    def weight_product(self) -> int:
        a, b, c = self.nu
        return a * b * c


def dual_membership(x, data: QuotientLatticeData) -> bool:
    return sum(a * b for a, b in zip(x, data.nu)) % data.p == 0


def dual_index(data: QuotientLatticeData) -> int:
    """``|Z^3 : M'|``, counted as the number of residues ``nu.x mod p`` on a cube of side p."""
    p = data.p
    seen = {sum(a * b for a, b in zip(x, data.nu)) % p for x in product(range(p), repeat=3)}
    return len(seen)


def _threads() -> int:
    env = os.environ.get("THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def plurigenus_count(data: QuotientLatticeData, n: int, *, threads: int | None = None,
                     backend: str | None = None) -> int:
    """Number of ``x`` in ``M'`` with ``x_i >= n+1`` and ``nu.x <= n p - 1``.

    Substituting ``y = x - (n+1)`` leaves ``y >= 0``, ``nu.y <= bound`` and one
    residue class for ``y3`` per ``(y1, y2)``; slabs of ``y1`` run in parallel.
    """
    if n < 0:
        raise ValueError("dilation must be non-negative")
    p = data.p
    nu1, nu2, nu3 = data.nu
    bound = n * p - 1 - (n + 1) * data.weight_sum
    if bound < 0:
        return 0
    target = (-(n + 1) * data.weight_sum) % p
    inv3 = pow(nu3, -1, p)
    span = bound // nu1 + 1
    threads = _threads() if threads is None else threads
    if threads <= 1 or span < 64:
        return kernels.count_slab(nu1, nu2, nu3, p, bound, target, inv3, 0, span,
                                  backend=backend)
    # Early slabs are heavier (more y2 values); cut more slabs than threads.
    pieces = min(span, threads * 8)
    edges = [span * i // pieces for i in range(pieces + 1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(
            lambda lo_hi: kernels.count_slab(nu1, nu2, nu3, p, bound, target, inv3,
                                             lo_hi[0], lo_hi[1], backend=backend),
            zip(edges[:-1], edges[1:]))
        return sum(parts)


def brute_force_count(data: QuotientLatticeData, n: int) -> int:
    """Direct triple loop over the box; used to check :func:`plurigenus_count`."""
    p = data.p
    hi = n * p
    total = 0
    for x in product(range(n + 1, hi + 1), repeat=3):
        if sum(a * b for a, b in zip(x, data.nu)) < n * p and dual_membership(x, data):
            total += 1
    return total


@dataclass(frozen=True)
class VolumeReport:
    region_volume: Fraction
    printed_formula: Fraction

    @property
    def agree(self) -> bool:
        return self.region_volume == self.printed_formula


def simplex_volume(data: QuotientLatticeData) -> VolumeReport:
    """Volume of ``{x_i > 1, nu.x < p}`` next to the product ``(1/6) prod (p/nu_i - 1)``.

    Shifting by ``(1,1,1)`` turns the region into a standard simplex with
    edge lengths ``(p - sum nu)/nu_i``.
    """
    c = max(0, data.p - data.weight_sum)
    region = Fraction(c ** 3, 6 * data.weight_product)
    printed = Fraction(1, 6)
    for v in data.nu:
        printed *= Fraction(data.p, v) - 1
    return VolumeReport(region, printed)


@dataclass
class AsymptoticReport:
    data: QuotientLatticeData
    rows: list[tuple[int, int, Fraction]]
    volume: VolumeReport
    predicted_ratio: Fraction
    leading_in_p: Fraction
    deviation: Fraction | None
    identically_zero: bool

    def to_json(self) -> dict:
        from .exact_arith import rational_json
        return {
            "p": self.data.p,
            "nu": list(self.data.nu),
            "rows": [{"n": n, "count": c, "ratio": rational_json(r)} for n, c, r in self.rows],
            "region_volume": rational_json(self.volume.region_volume),
            "printed_volume_formula": rational_json(self.volume.printed_formula),
            "volume_formulas_agree": self.volume.agree,
            "predicted_ratio": rational_json(self.predicted_ratio),
            "leading_in_p": rational_json(self.leading_in_p),
            "relative_deviation": None if self.deviation is None else rational_json(self.deviation),
            "identically_zero": self.identically_zero,
        }


def asymptotic_report(data: QuotientLatticeData, n_max: int, *, sample: list[int] | None = None,
                      threads: int | None = None) -> AsymptoticReport:
    """Tabulate ``P_n / n^3`` and compare with ``Vol(region) / p`` at ``n_max``."""
    vol = simplex_volume(data)
    predicted = vol.region_volume / data.p
    leading = Fraction(data.p ** 2, 6 * data.weight_product)
    if data.weight_sum >= data.p:
        return AsymptoticReport(data, [], vol, predicted, leading, None, True)
    if sample is None:
        sample = sorted({max(1, n_max // 2 ** k) for k in range(6)} | {n_max})
    rows = []
    for n in sample:
        c = plurigenus_count(data, n, threads=threads)
        rows.append((n, c, Fraction(c, n ** 3)))
    final = rows[-1][2]
    deviation = abs(final - predicted) / predicted
    return AsymptoticReport(data, rows, vol, predicted, leading, deviation, False)
