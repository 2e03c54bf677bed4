import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from paramodular import cli

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("UPDATE_GOLDEN") == "1"

CASES = {
    "threshold": ["threshold"],
    "check_prime_167": ["check-prime", "167"],
    "check_prime_15": ["check-prime", "15"],
    "jacobi_dim_73": ["jacobi-dim", "73"],
    "reid_tai_3_011": ["reid-tai", "3", "0", "1", "1"],
    "monomial_check_7_2": ["monomial-check", "7", "2"],
    "eh_series_13": ["eh-series", "13"],
    "eh_series_13_2": ["eh-series", "13", "2"],
    "catalog": ["catalog"],
    "plurigenus_11_123": ["plurigenus", "11", "1", "2", "3", "--n-max", "120"],
    "group_sample_7": ["group-sample", "7", "--seed", "0", "--count", "5"],
    "audit_173": ["audit", "173"],
}


def shape(obj):
    """Key structure and value types, ignoring values."""
    if isinstance(obj, dict):
        return {k: shape(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [shape(obj[0])] if obj else []
    return type(obj).__name__


@pytest.mark.parametrize("name", sorted(CASES))
def test_json_golden(name):
    res, code = cli.run(CASES[name] + ["--json"])
    assert code == 0, res.failed_claims
    out = json.loads(json.dumps(res.to_json()))
    path = GOLDEN / f"cli_{name}.json"
    if UPDATE:
        path.write_text(json.dumps(out, indent=2) + "\n")
    assert out == json.loads(path.read_text())


def test_verify_paper_schema():
    res, code = cli.run(["verify-paper", "--json"])
    assert code == 0, res.failed_claims
    out = res.to_json()
    keys = [c["key"] for c in out["outputs"]["checks"]]
    assert keys == [f"C{i}" for i in range(1, 9)]
    path = GOLDEN / "cli_verify_paper.schema.json"
    if UPDATE:
        path.write_text(json.dumps(shape(out), indent=2) + "\n")
    got = shape(out)
    # limit is null for untimed checks; compare the structure of a timed one
    assert got["outputs"]["checks"][0].keys() == json.loads(path.read_text())["outputs"]["checks"][0].keys()
    assert got.keys() == json.loads(path.read_text()).keys()


def test_reid_tai_text():
    res, code = cli.run(["reid-tai", "3", "0", "1", "1"])
    assert code == 0
    assert "NOT_CANONICAL" in res.lines[0]
    assert any("k=1: age 2/3" in line for line in res.lines)


def test_threshold_text():
    res, _ = cli.run(["threshold"])
    assert res.lines[0] == "173"
    assert any(line.startswith("p=167") for line in res.lines)
    assert any(line.startswith("p=173") for line in res.lines)


@pytest.mark.parametrize("argv", [["bogus"], ["reid-tai", "3"], ["plurigenus", "11", "1", "2", "3"],
                                  ["check-prime", "x"]])
def test_usage_errors(argv):
    _, code = cli.run(argv)
    assert code == 2


@pytest.mark.parametrize("argv", [["reid-tai", "2", "1", "0", "0"], ["audit", "15"],
                                  ["plurigenus", "6", "1", "1", "1", "--n-max", "5"],
                                  ["monomial-check", "9", "1"]])
def test_domain_errors(argv):
    res, code = cli.run(argv)
    assert code == 2
    assert res.error


def test_failing_claim_exits_one(monkeypatch):
    monkeypatch.setattr(cli.ledger, "min_general_type_prime", lambda: 179)
    res, code = cli.run(["threshold"])
    assert code == 1
    assert res.failed_claims == ["least passing prime is 173"]


def test_json_roundtrip_all():
    for argv in CASES.values():
        res, _ = cli.run(argv + ["--json"])
        text = json.dumps(res.to_json())
        assert json.loads(text) == res.to_json()


def test_group_sample_prints_seed():
    res, _ = cli.run(["group-sample", "5", "--count", "2", "--seed", "7"])
    assert "seed 7" in res.lines[0]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "paramodular.cli", "reid-tai", "2", "1", "1", "1",
                           "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["verdict"] == "TERMINAL"
