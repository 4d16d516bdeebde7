from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from qloggamma import harness
from qloggamma.cli import main, parse_integrand, parse_levels
from qloggamma.padic import PadicContext

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report.schema.json").read_text())


def test_render_formats():
    assert harness.render(Fraction(-3, 6)) == "-1/2"
    assert harness.render(0.1) == "0.10000000000000001"
    assert harness.render(PadicContext(5, 3).element(5)).startswith("5^1")


def test_prop1_suite_all_exact_zero():
    rep = harness.run_suite("prop1")
    assert rep.ok and rep.summary["total"] == 99
    assert all(c.residual == 0 for c in rep.cases)


def test_unknown_suite():
    with pytest.raises(KeyError):
        harness.run_suite("nope")
    assert main(["verify", "nope"]) != 0


def test_summary_consistent_with_cases():
    rep = harness.run_suite("stirling")
    d = rep.as_dict()
    assert d["summary"]["total"] == len(d["cases"])
    assert d["summary"]["passed"] == sum(c["pass"] for c in d["cases"])


def test_thm2_records_choice_and_other_variant():
    rep = harness.run_suite("thm2")
    assert rep.summary["chosen_variant"] in ("paper", "derived")
    for c in rep.cases:
        assert c.transcript["other_variant"]["variant"] != rep.summary["chosen_variant"]


def test_forced_variant_is_reported():
    rep = harness.run_suite("thm3", harness.SuiteOptions(variant="paper"))
    assert rep.summary["chosen_variant"] == "paper"
    assert not rep.ok


def test_json_validates_against_schema():
    for name in ("witt", "thm2", "cor1"):
        jsonschema.validate(json.loads(harness.emit(harness.run_suite(name))), SCHEMA)


def test_json_deterministic_and_sorted():
    a = harness.emit(harness.run_suite("expansion"))
    b = harness.emit(harness.run_suite("expansion"))
    assert a == b
    keys = [c["key"] for c in json.loads(a)["cases"]]
    assert keys == sorted(keys)


def test_csv_one_row_per_case(tmp_path):
    rep = harness.run_suite("cor2")
    out = tmp_path / "r.csv"
    harness.emit(rep, "csv", out)
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert tuple(rows[0]) == harness.CSV_FIELDS
    assert len(rows) == 1 + len(rep.cases)


def test_parse_helpers():
    assert parse_levels("2..4") == (2, 4)
    assert parse_levels("3") == (3, 3)
    spec = parse_integrand("poly:[1, 1/2, -3];twist:2")
    assert spec.f.coeffs == (1, Fraction(1, 2), -3) and spec.twist_beta == 2 and spec.f.twisted
    assert parse_integrand("exp:6").f.base == 6


def test_cli_subcommands(capsys):
    assert main(["numbers", "genocchi", "--n", "6"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[6]["value"] == "-3/1"
    assert main(["numbers", "qgenocchi", "--n", "3", "--q", "1/2"]) == 0
    capsys.readouterr()
    assert main(["integrate", "poly:[0,1]", "--backend", "padic", "--levels", "2..3", "--q", "6"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [r["level"] for r in rows] == [2, 3]
    assert main(["loggamma", "--x", "3", "--q", "1/2", "--series", "thm2"]) == 0
    row = json.loads(capsys.readouterr().out)[0]
    assert abs(float(row["value"]) - float(row["series"])) < 1e-8


def test_cli_domain_error_is_reported(capsys):
    assert main(["loggamma", "--x", "1/25", "--backend", "padic"]) == 2
    assert "qloggamma loggamma:" in capsys.readouterr().err


def test_cli_verify_exit_code_and_file(tmp_path):
    out = tmp_path / "prop1.json"
    assert main(["verify", "prop1", "--out", str(out)]) == 0
    jsonschema.validate(json.loads(out.read_text()), SCHEMA)


def test_module_entry_point_byte_identical():
    cmd = [sys.executable, "-m", "qloggamma", "verify", "stirling", "--format", "csv"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"key,inputs,")
