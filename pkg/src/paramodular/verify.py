"""End-to-end checks behind ``paramodular verify-paper``.

Each check is a function returning a :class:`Check`; :func:`run_all` runs
them in order.  The test suite and the CLI share these definitions.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from sympy import primerange

from . import dimensions, groups, ledger, singularities, toric
from .exact_arith import GaussRational


@dataclass
class Check:
    key: str
    title: str
    passed: bool
    seconds: float
    limit: float | None
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"[{status}] {self.key}: {self.title} [{self.seconds:.2f}s{budget}]"


def _timed(key, title, limit, fn) -> Check:
    t0 = time.perf_counter()
    ok, details = fn()
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        details["runtime_exceeded"] = True
        ok = False
    return Check(key, title, bool(ok), dt, limit, details)


def check_threshold() -> Check:
    def body():
        p_min = ledger.min_general_type_prime()
        d167, d173 = ledger.general_type_test(167), ledger.general_type_test(173)
        ok = p_min == 173 and not d167.verdict and d173.verdict
        ok = ok and d173.supply_coeff > d173.obstruction_rhs
        ok = ok and not d167.supply_coeff > d167.obstruction_rhs
        below = [p for p in primerange(3, 173) if ledger.general_type_test(p).verdict]
        ok = ok and not below
        return ok, {"min_prime": p_min, "p167": d167.to_json(), "p173": d173.to_json(),
                    "passing_below_173": below}
    return _timed("C1", "threshold prime is 173 (strict exact comparison)", 1.0, body)


def jacobi_dim_oracle(t: int) -> int:
    """Second summation: bracket by residue table, floor sum by counting lattice points."""
    table = {0: 0, 1: -1, 2: 0, 3: 0, 4: 0, 5: 0}
    first = sum((m - m % 6) // 6 + table[m % 6] for m in range(2, t + 2))
    # sum_j floor(j^2 / 4t) = #{(j, k) : k >= 1, 4tk <= j^2, 1 <= j <= t}
    second, k = 0, 1
    while 4 * t * k <= t * t:
        j0 = math.isqrt(4 * t * k - 1) + 1
        second += t - j0 + 1
        k += 1
    return first - second


def check_weight2_supply() -> Check:
    def body():
        primes = list(primerange(72, 1001))
        bad = [p for p in primes if dimensions.jacobi_cusp_dim_weight2(p) <= 0]
        v73 = dimensions.jacobi_cusp_dim_weight2(73)
        o73 = jacobi_dim_oracle(73)
        ok = not bad and v73 == o73 and v73 > 0
        return ok, {"primes_checked": len(primes), "nonpositive": bad, "dim_73": v73,
                    "oracle_73": o73, "dim_71": dimensions.jacobi_cusp_dim_weight2(71)}
    return _timed("C2", "weight-2 Jacobi cusp forms exist for primes 73..997", 1.0, body)


def check_index_chain() -> Check:
    def body():
        failures, ratio_fail = [], []
        for p in primerange(3, 201):
            if not dimensions.audit_prop22_chain(p).passed:
                failures.append(p)
            lv = dimensions.cusp_dim_leading(dimensions.GroupTag.level_subgroup(p)).leading
            pm = dimensions.cusp_dim_leading(dimensions.GroupTag.paramodular(p)).leading
            if lv / pm != Fraction(p * (p * p - 1), 2):
                ratio_fail.append(p)
        return not failures and not ratio_fail, {"chain_failures": failures,
                                                 "ratio_failures": ratio_fail}
    return _timed("C3", "index chain gives (p^2+1)/8640; level/paramodular = p(p^2-1)/2",
                  None, body)


def check_catalog() -> Check:
    def body():
        C, V = singularities.CyclicQuotient, singularities.Verdict
        spot = {
            "1/2(1,1,1)": singularities.classify_cyclic(C(2, (1, 1, 1))).is_canonical,
            "1/3(1,2,1)": singularities.classify_cyclic(C(3, (1, 2, 1))).is_canonical,
            "1/2(0,1,1)": singularities.classify_cyclic(C(2, (0, 1, 1))).is_canonical,
            "1/3(0,1,1)": singularities.classify_cyclic(C(3, (0, 1, 1))) is V.NOT_CANONICAL,
            "1/2(1,2,1)": singularities.classify_cyclic(C(2, (1, 2, 1))).is_canonical,
        }
        summary = singularities.catalog_summary(singularities.catalog((7, 13)))
        semidirect = {f"p={p}": all(singularities.classify_monomial(singularities.branch_semidirect_group(p, r))
                               .is_canonical for r in range(p)) for p in (7, 13)}
        ok = all(spot.values()) and not summary["mismatches"] and all(semidirect.values())
        return ok, {"spot_checks": spot, "checked": summary["checked"],
                    "mismatches": summary["mismatches"], "unchecked": summary["unchecked"],
                    "semidirect_groups_canonical": semidirect}
    return _timed("C4", "Reid-Tai catalog matches every stated verdict", 5.0, body)


def load_eh_golden() -> dict:
    text = resources.files("paramodular").joinpath("data/eh_series_golden.json").read_text()
    return json.loads(text)


def check_eh_family() -> Check:
    def body():
        golden = load_eh_golden()
        details, ok = {}, True
        for p in (13, 173):
            table = singularities.eh_series_table(p)
            noncanon = [row["r"] for row in table
                        if not row["excluded"] and row["verdict"] == "NOT_CANONICAL"]
            matches = table == golden[str(p)]
            ok = ok and bool(noncanon) and matches
            details[str(p)] = {"non_canonical_residues": len(noncanon),
                               "canonical_non_excluded": [row["r"] for row in table
                                                          if not row["excluded"]
                                                          and row["verdict"] in ("CANONICAL", "TERMINAL")],
                               "golden_match": matches}
        return ok, details
    return _timed("C5", "E(h) family has non-canonical members; table matches golden", None, body)


def check_toric(threads: int | None = None) -> Check:
    def body():
        rng = random.Random(0)
        bad_index = []
        small_primes = list(primerange(2, 38))
        for _ in range(50):
            p = rng.choice(small_primes[1:])
            data = toric.QuotientLatticeData(p, tuple(rng.randint(1, p - 1) for _ in range(3)))
            if toric.dual_index(data) != p:
                bad_index.append((p, data.nu))
        cases = {}
        ok = not bad_index
        for p, nu, n in ((11, (1, 2, 3), 120), (5, (1, 1, 1), 200)):
            data = toric.QuotientLatticeData(p, nu)
            serial = toric.plurigenus_count(data, n, threads=1)
            parallel = toric.plurigenus_count(data, n, threads=threads or 4)
            vol = toric.simplex_volume(data)
            predicted = vol.region_volume / p
            ratio = Fraction(serial, n ** 3)
            dev = abs(ratio - predicted) / predicted
            printed_dev = abs(ratio - vol.printed_formula / p) / (vol.printed_formula / p)
            cases[f"p={p},nu={nu}"] = {
                "n": n, "count": serial, "parallel_equal": serial == parallel,
                "region_volume": str(vol.region_volume), "printed_volume": str(vol.printed_formula),
                "relative_deviation": float(dev), "deviation_vs_printed": float(printed_dev),
            }
            ok = ok and serial == parallel and dev < Fraction(1, 10)
            ok = ok and not vol.agree and printed_dev > Fraction(1, 10)
        return ok, {"dual_index_failures": bad_index, "cases": cases}
    return _timed("C6", "lattice counts converge to the region volume; printed formula differs",
                  30.0, body)


def check_groups(samples: int = 200) -> Check:
    def body():
        out = {}
        member = {p: all(groups.in_paramodular(groups.random_element(p, s, 8), p)
                         for s in range(samples)) for p in (5, 7, 13)}
        theta_ok = {p: all(groups.in_paramodular(
            groups.conjugate(groups.random_element(p, s, 8), groups.theta(p)), p)
            for s in range(samples)) for p in (5, 7, 13)}
        q_ok, printed_counterexample = {}, {}
        for p, q in ((5, 2), (7, 3)):
            elems = [groups.random_element(p * q * q, s, 8) for s in range(samples)]
            q_ok[f"{p},{q}"] = all(groups.in_paramodular(
                groups.conjugate(g, groups.pq2_conjugator(q)), p) for g in elems)
            printed_counterexample[f"{p},{q}"] = sum(
                1 for g in elems
                if not groups.in_paramodular(groups.conjugate(g, groups.pq2_conjugator_printed(q)), p))
        one = groups.ONE
        squares = {
            "theta": all((groups.theta(p).matrix ** 2) == one for p in (5, 7, 13)),
            "I1": groups.I1.matrix ** 2 == one,
            "I2": groups.I2.matrix ** 2 == one,
        }
        i = GaussRational(0, 1)
        z1 = groups.SiegelPoint(GaussRational(Fraction(1, 3), 2), GaussRational(0), GaussRational(-1, 1))
        z2 = groups.SiegelPoint(i, GaussRational(0, Fraction(-1, 2)), i)
        fixed = {"I1": groups.moebius_action(groups.I1, z1) == z1,
                 "I2": groups.moebius_action(groups.I2, z2) == z2}
        ok = (all(member.values()) and all(theta_ok.values()) and all(q_ok.values())
              and all(squares.values()) and all(fixed.values()))
        out.update(membership=member, theta_normalises=theta_ok, q_conjugation=q_ok,
                   printed_q_failures=printed_counterexample, involutions=squares,
                   fixed_loci=fixed, samples=samples, printed_I2_symplectic=groups.is_symplectic(groups.I2_PRINTED))
        return ok, out
    return _timed("C7", "sampled group memberships, conjugations and fixed loci", 10.0, body)


def check_audit_honesty() -> Check:
    def body():
        factors, bad = set(), []
        for p in primerange(3, 1001):
            rep = ledger.audit_thm49(p)
            factors.add(rep.factor)
            if ledger.interior_coeff(p) != 2 * ledger.e2_coeff(p):
                bad.append(("double", p))
            if 27 * ledger.interior_coeff(p) != Fraction(7, 2) - Fraction(9, p):
                bad.append(("assembly", p))
        ok = factors == {Fraction(6)} and not bad
        return ok, {"factors": sorted(str(f) for f in factors), "identity_failures": bad}
    return _timed("C8", "E2 audit factor is exactly 6; stated coefficients consistent", None, body)


ALL_CHECKS = (check_threshold, check_weight2_supply, check_index_chain, check_catalog,
              check_eh_family, check_toric, check_groups, check_audit_honesty)


def run_all() -> list[Check]:
    return [fn() for fn in ALL_CHECKS]
