"""Command-line front end.

Every subcommand builds a :class:`CommandResult`; ``--json`` prints it as
JSON, otherwise a short text summary is printed.  Exit status is 0 when all
claims checked by the command hold, 1 when one fails (the failing claim is
named), and 2 for usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import isprime

from . import dimensions, groups, kernels, ledger, singularities, toric, verify
from .exact_arith import rational_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandResult:
    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    provenance: list[str] = field(default_factory=list)
    claims: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(self.claims.values())

    @property
    def failed_claims(self) -> list[str]:
        return [k for k, v in self.claims.items() if not v]

    def claim(self, name: str, holds: bool):
        self.claims[name] = bool(holds)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "provenance": self.provenance,
            "claims": self.claims,
            "ok": self.ok,
            "error": self.error,
        }

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_USAGE
        return EXIT_OK if self.ok else EXIT_FAIL


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --- subcommands -------------------------------------------------------------

def cmd_threshold(args, res: CommandResult):
    p_min = ledger.min_general_type_prime()
    d167, d173 = ledger.general_type_test(167), ledger.general_type_test(173)
    res.outputs.update(min_prime=p_min, p167=d167.to_json(), p173=d173.to_json(),
                       equality_has_integer_root=ledger.equality_has_integer_solution())
    res.provenance += ["supply (p^2+1)/8640 against obstruction 7/2 - 9/p, strict",
                       "weight-2 cusp form required (p > 71)"]
    res.claim("least passing prime is 173", p_min == 173)
    res.claim("p = 167 fails", not d167.verdict)
    res.claim("p = 173 passes", d173.verdict)
    res.lines.append(str(p_min))
    for d in (d167, d173):
        rel = ">" if d.supply_coeff > d.obstruction_rhs else "<="
        res.lines.append(f"p={d.p}: (p^2+1)/8640 = {_q(d.supply_coeff)} {rel} "
                         f"7/2 - 9/p = {_q(d.obstruction_rhs)}  "
                         f"(~{float(d.supply_coeff):.6f} vs {float(d.obstruction_rhs):.6f})")


def cmd_check_prime(args, res: CommandResult):
    d = ledger.general_type_test(args.p)
    res.outputs.update(d.to_json())
    res.provenance.append("threshold inequality evaluated exactly")
    if d.is_prime and args.p > 2:
        res.claim("27 * interior coefficient = 7/2 - 9/p",
                  27 * ledger.interior_coeff(args.p) == Fraction(7, 2) - Fraction(9, args.p))
    res.lines.append(f"p={args.p}: {'general type' if d.verdict else 'not established'}")
    if d.supply_coeff is not None:
        res.lines.append(f"  supply {_q(d.supply_coeff)}  obstruction {_q(d.obstruction_rhs)}"
                         f"  dim J_2,p^cusp = {d.jacobi_dim}")
    res.lines += [f"  {r}" for r in d.reasons]


def cmd_jacobi_dim(args, res: CommandResult):
    if args.t < 1:
        raise ValueError("index t must be positive")
    v = dimensions.jacobi_cusp_dim_weight2(args.t)
    oracle = verify.jacobi_dim_oracle(args.t)
    status = dimensions.jacobi_formula_status(args.t)
    res.outputs.update(t=args.t, dim=v, oracle=oracle, status=status)
    res.provenance.append("sum of {m}_6 minus sum floor(j^2/4t), recomputed by lattice counting")
    res.claim("two summations agree", v == oracle)
    res.lines.append(f"dim J_2,{args.t}^cusp = {v}  ({status})")


def cmd_reid_tai(args, res: CommandResult):
    q = singularities.CyclicQuotient(args.r, (args.a1, args.a2, args.a3))
    ages = []
    for k in range(1, q.r):
        ages.append({"k": k, "age": rational_json(singularities.reid_tai_age(q, k)),
                     "quasi_reflection": singularities.is_quasireflection(q, k)})
    res.outputs.update(type=q.to_json(), type_str=str(q), ages=ages)
    verdict = singularities.classify_cyclic(q)
    fast, _ = singularities.classify_cyclic_fast(q)
    res.outputs.update(verdict=verdict.value, is_canonical=verdict.is_canonical)
    res.provenance.append("Reid-Tai: canonical iff every age >= 1")
    res.claim("exact and kernel classifiers agree", verdict is fast)
    res.lines.append(f"{q}: {verdict.value}")
    for row in ages:
        res.lines.append(f"  k={row['k']}: age {row['age']['num']}/{row['age']['den']}")


def cmd_monomial_check(args, res: CommandResult):
    if not isprime(args.p) or args.p == 2:
        raise ValueError(f"p must be an odd prime, got {args.p}")
    g = singularities.branch_semidirect_group(args.p, args.r)
    v = singularities.classify_monomial(g)
    res.outputs.update(group=g.to_json(), verdict=v.value, is_canonical=v.is_canonical,
                       closes_at_3p=g.order == 3 * args.p)
    res.provenance.append("group generated by the cyclic permutation and diag((1+r,-r,-1)/p)")
    res.claim("monomial group is canonical", v.is_canonical)
    res.lines.append(f"<zeta_3, zeta_p> with p={args.p}, r={args.r}: order {g.order}, {v.value}")


def cmd_eh_series(args, res: CommandResult):
    table = singularities.eh_series_table(args.p)
    if args.r is not None:
        table = [row for row in table if row["r"] == args.r % args.p]
    bad = [row["r"] for row in table if not row["excluded"] and row["verdict"] == "NOT_CANONICAL"]
    res.outputs.update(p=args.p, rows=table, non_canonical_residues=bad)
    res.provenance.append("types (1/p)(r+1, -r, r(r+1)); excluded: r = 0, 1, cube and fourth roots")
    for row in table:
        tag = f" excluded ({row['exclusion_reason']})" if row["excluded"] else ""
        w = ",".join(map(str, row["weights"]))
        res.lines.append(f"r={row['r']}: 1/{args.p}({w}) {row['verdict']}{tag}")
    if args.r is None:
        res.lines.append(f"{len(bad)} non-excluded residues are not canonical")


def cmd_catalog(args, res: CommandResult):
    summary = singularities.catalog_summary()
    res.outputs.update(summary)
    res.provenance.append("each record carries the locus it comes from")
    res.claim("no catalog mismatches", not summary["mismatches"])
    for row in summary["records"]:
        if row["name"].startswith("EH_ZP_Z3"):
            continue
        res.lines.append(f"{row['name']:<10} {row['type_str'] or '-':<12} expected "
                         f"{row['expected']:<14} computed {row['computed']}")
    res.lines.append(f"checked {summary['checked']}, mismatches {len(summary['mismatches'])}, "
                     f"unchecked {summary['unchecked']}")


def cmd_plurigenus(args, res: CommandResult):
    data = toric.QuotientLatticeData(args.p, (args.n1, args.n2, args.n3))
    if args.n_max < 1:
        raise ValueError("--n-max must be positive")
    rep = toric.asymptotic_report(data, args.n_max, threads=args.threads)
    res.outputs.update(rep.to_json())
    res.provenance.append("points of M' with x_i > n and nu.x < n p")
    if rep.rows:
        n = rep.rows[-1][0]
        res.claim("serial and parallel counts agree",
                  toric.plurigenus_count(data, n, threads=1) == rep.rows[-1][1])
    for n, c, r in rep.rows:
        res.lines.append(f"n={n:>6} P_n={c:>14} P_n/n^3={float(r):.6f}")
    res.lines.append(f"region volume / p = {_q(rep.predicted_ratio)} (~{float(rep.predicted_ratio):.6f}); "
                     f"printed volume = {_q(rep.volume.printed_formula)}")
    if rep.deviation is not None:
        res.lines.append(f"relative deviation at n={rep.rows[-1][0]}: {float(rep.deviation):.4f}")
    else:
        res.lines.append("region is empty: every count is zero")


def cmd_group_sample(args, res: CommandResult):
    if args.t < 1 or args.count < 0:
        raise ValueError("t must be positive and count non-negative")
    rows = []
    for s in range(args.seed, args.seed + args.count):
        g = groups.random_element(args.t, s, args.word_length)
        rows.append({"seed": s, "symplectic": groups.is_symplectic(g),
                     "in_paramodular": groups.in_paramodular(g, args.t)})
    res.outputs.update(t=args.t, seed=args.seed, count=args.count, word_length=args.word_length,
                       samples=rows)
    res.provenance.append("random words in generators of the paramodular group")
    res.claim("samples are symplectic", all(r["symplectic"] for r in rows))
    res.claim("samples lie in the paramodular group", all(r["in_paramodular"] for r in rows))
    if isprime(args.t):
        th = groups.theta(args.t)
        ok = all(groups.in_paramodular(groups.conjugate(groups.random_element(args.t, s, args.word_length),
                                                        th), args.t)
                 for s in range(args.seed, args.seed + args.count))
        res.outputs["theta_normalises"] = ok
        res.claim("Theta-conjugates stay in the group", ok)
    res.lines.append(f"seed {args.seed}: {args.count} elements of level {args.t}, "
                     f"all in group: {all(r['in_paramodular'] for r in rows)}")


def cmd_audit(args, res: CommandResult):
    p = args.p
    if not isprime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    e2 = ledger.audit_thm49(p)
    chain = dimensions.audit_prop22_chain(p)
    res.outputs.update(e2_obstruction=e2.to_json(), index_chain=chain.to_json(),
                       factor=rational_json(e2.factor))
    res.provenance += ["E2 coefficient recomputed from nu_inf, mu and |G|",
                       "index chain from the principal congruence subgroup"]
    res.claim("index chain holds exactly", chain.passed)
    res.claim("interior coefficient = 2 * E2 coefficient",
              ledger.interior_coeff(p) == 2 * ledger.e2_coeff(p))
    res.lines.append(f"index chain at p={p}: {'exact' if chain.passed else 'FAILS'}")
    res.lines.append(f"E2 coefficient: stated / recomputed = {_q(e2.factor)}")


def cmd_verify(args, res: CommandResult):
    checks = verify.run_all()
    res.outputs["checks"] = [{"key": c.key, "title": c.title, "passed": c.passed,
                              "seconds": round(c.seconds, 3), "limit": c.limit}
                             for c in checks]
    res.outputs["backend"] = kernels.BACKEND
    for c in checks:
        res.claim(f"{c.key}: {c.title}", c.passed)
        res.lines.append(c.line())
    res.lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} criteria pass")


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    parser = argparse.ArgumentParser(prog="paramodular", parents=[common],
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("threshold", cmd_threshold, "least prime passing the criterion")
    add("check-prime", cmd_check_prime, "evaluate the criterion at P").add_argument("p", type=int)
    add("jacobi-dim", cmd_jacobi_dim, "dimension of weight-2 Jacobi cusp forms").add_argument("t", type=int)
    sp = add("reid-tai", cmd_reid_tai, "classify 1/R(A1,A2,A3)")
    for name in ("r", "a1", "a2", "a3"):
        sp.add_argument(name, type=int)
    sp = add("monomial-check", cmd_monomial_check, "classify <zeta_3, zeta_p>")
    sp.add_argument("p", type=int)
    sp.add_argument("r", type=int)
    sp = add("eh-series", cmd_eh_series, "classify the E(h) family")
    sp.add_argument("p", type=int)
    sp.add_argument("r", type=int, nargs="?")
    add("catalog", cmd_catalog, "classify every catalogued singularity")
    sp = add("plurigenus", cmd_plurigenus, "toric plurigenus counts")
    for name in ("p", "n1", "n2", "n3"):
        sp.add_argument(name, type=int)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--threads", type=int, default=None)
    sp = add("group-sample", cmd_group_sample, "random paramodular elements")
    sp.add_argument("t", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--word-length", type=int, default=8)
    add("audit", cmd_audit, "diagnostic audits").add_argument("p", type=int, nargs="?", default=173)
    add("verify-paper", cmd_verify, "run every acceptance check")
    return parser


def run(argv=None) -> tuple[CommandResult, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        res = CommandResult("usage", {"argv": list(argv or [])}, error="usage error")
        return res, EXIT_USAGE if e.code else EXIT_OK
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "command", "json")}
    res = CommandResult(args.command, inputs)
    try:
        args.func(args, res)
    except (ValueError, singularities.ClosureTooLargeError) as e:
        res.error = str(e)
    return res, res.exit_code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    res, code = run(argv)
    if res.command == "usage":
        return code
    if "--json" in argv:
        print(json.dumps(res.to_json(), indent=2))
    else:
        for line in res.lines:
            print(line)
        if res.error:
            print(f"error: {res.error}", file=sys.stderr)
        for name in res.failed_claims:
            print(f"FAILED: {name}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
