import csv
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from cyclodiv import analysis, cli
from cyclodiv.analysis import Prediction

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report_schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


# ----------------------------------------------------------------- phi / psi

def test_phi_text(capsys):
    code, out, _ = run(capsys, "phi", "21")
    assert code == 0
    assert "Phi_21 = x^12 - x^11 + x^9 - x^8 + x^6 - x^4 + x^3 - x + 1" in out
    assert "C = [-1,1]" in out and "degree: 12" in out and "terms: 9" in out


def test_psi_json(capsys):
    code, doc = run_json(capsys, "psi", "15")
    row = doc["rows"][0]
    assert code == 0 and doc["command"] == "psi"
    assert row["sparse"] == "x^7 + x^6 + x^5 - x^2 - x - 1"
    assert row["coefficientSet"] == [-1, 0, 1] and row["flat"]
    assert doc["summary"]["elapsedMillis"] is None


def test_dense_flag(capsys):
    _, out, _ = run(capsys, "phi", "6", "--dense")
    assert "dense: 1 -1 1" in out
    _, doc = run_json(capsys, "phi", "6", "--dense")
    assert doc["rows"][0]["dense"] == [1, -1, 1]


@pytest.mark.parametrize("argv", [["phi", "0"], ["psi", "-3"], ["phi", "x"], ["divisors"], ["bogus"], [],
                                  ["atlas", "--workers", "0"], ["phi", "5", "--format", "xml"]])
def test_usage_errors(capsys, argv):
    assert cli.main(argv) == cli.EXIT_USAGE


def test_reversed_range_is_usage_error(capsys):
    code, _, err = run(capsys, "heights", "20", "10")
    assert code == cli.EXIT_USAGE and "empty range" in err


# ------------------------------------------------------------------ divisors

def test_divisors_csv_12(capsys):
    code, out, _ = run(capsys, "divisors", "12", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 64
    assert rows[22]["coefficientSet"] == "1..3"
    assert rows[1]["coefficientSet"] == "{-1,1}"
    assert all(r["match"] == "yes" for r in rows)


def test_divisors_9_all_flat(capsys):
    code, doc = run_json(capsys, "divisors", "9")
    assert code == 0 and len(doc["rows"]) == 8
    assert all(r["flat"] for r in doc["rows"])


def test_divisors_15(capsys):
    code, doc = run_json(capsys, "divisors", "15")
    assert len(doc["rows"]) == 16
    row = next(r for r in doc["rows"] if r["factors"] == [3, 5])
    assert row["coefficientSet"] == [1, 2, 3] and row["match"]


def test_divisors_budget_exit(capsys):
    code, _, err = run(capsys, "divisors", "1680")
    assert code == cli.EXIT_BUDGET and "d(1680) = 40" in err
    code, _, _ = run(capsys, "divisors", "12", "--enum-budget", "32")
    assert code == cli.EXIT_BUDGET
    code, _, _ = run(capsys, "phi", "101", "--degree-budget", "100")
    assert code == cli.EXIT_BUDGET


# --------------------------------------------------------------------- atlas

def test_atlas_small_caps(capsys):
    code, out, _ = run(capsys, "atlas", "--p-cap", "3", "--q-cap", "3")
    assert code == 0
    assert out.splitlines() == ["p=2 q=3 n=12: 64/64 match", "p=3 q=2 n=18: 64/64 match",
                                "pairs: 2  mismatches: 0"]


def test_atlas_json_schema(capsys):
    code, doc = run_json(capsys, "atlas", "--p-cap", "5", "--q-cap", "7")
    assert code == 0
    assert [(r["p"], r["q"]) for r in doc["rows"]] == [(2, 3), (2, 5), (2, 7), (3, 2), (3, 5), (3, 7),
                                                       (5, 2), (5, 3), (5, 7)]
    assert doc["summary"] == {"pairs": 9, "mismatches": 0, "elapsedMillis": None}
    assert json.loads(json.dumps(doc)) == doc


def test_atlas_degree_budget_filters_pairs(capsys):
    _, doc = run_json(capsys, "atlas", "--p-cap", "7", "--q-cap", "7", "--degree-budget", "50")
    assert [(r["p"], r["q"]) for r in doc["rows"]] == [(2, 3), (2, 5), (2, 7), (3, 2), (3, 5), (5, 2)]


def test_atlas_mismatch_exit(capsys, monkeypatch):
    real = analysis.predict_p2q

    def wrong(params, k):
        return Prediction((5, 5)) if k == 22 else real(params, k)

    monkeypatch.setattr(analysis, "predict_p2q", wrong)
    code, out, err = run(capsys, "atlas", "--p-cap", "3", "--q-cap", "3")
    assert code == cli.EXIT_MISMATCH
    assert "pairs: 2  mismatches: 2" in out and "k=22 predicted {5}" in out
    assert "mismatch" in err


@pytest.mark.parametrize("fmt", ["text", "json", "csv"])
def test_atlas_deterministic_across_workers(capsys, fmt):
    outs = []
    for w in ("1", "3"):
        code, out, _ = run(capsys, "atlas", "--p-cap", "11", "--q-cap", "11", "--workers", w, "--format", fmt)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("CYCLODIV_WORKERS", "3")
    assert cli.build_parser().parse_args(["atlas"]).workers == 3
    monkeypatch.setenv("CYCLODIV_WORKERS", "junk")
    assert cli.build_parser().parse_args(["atlas"]).workers == 1


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "atlas", "--p-cap", "3", "--q-cap", "3", "--format", "json",
                       "--output", str(target))
    assert code == 0 and out == ""
    jsonschema.validate(json.loads(target.read_text()), SCHEMA)


def test_timing_flag(capsys):
    _, doc = run_json(capsys, "phi", "30", "--timing")
    assert isinstance(doc["summary"]["elapsedMillis"], int)


# ------------------------------------------------------------------- heights

def test_heights_rows(capsys):
    code, doc = run_json(capsys, "heights", "12", "16")
    rows = {r["n"]: r for r in doc["rows"]}
    assert code == 0
    assert rows[12]["B"] == 3 and rows[12]["kind"] == "p^2q" and rows[12]["match"]
    assert rows[16]["B"] == 1 and rows[16]["match"]
    assert rows[15]["Bprime"] == 2 and rows[15]["C"] == 4 and rows[15]["match"]
    assert "match" not in rows[14] or rows[14]["match"]


def test_heights_skips_over_budget(capsys):
    code, doc = run_json(capsys, "heights", "1680", "--enum-budget", "1024")
    assert code == 0 and doc["rows"][0]["skipped"]


def test_heights_csv(capsys):
    code, out, _ = run(capsys, "heights", "1", "20", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 20 and rows[11]["B"] == "3"


# ------------------------------------------------------------ flat and scans

def test_flat_count(capsys):
    code, doc = run_json(capsys, "flat-count", "15")
    assert code == 0 and doc["rows"][0]["flat"] == 14


def test_convexity_scan_psi(capsys):
    code, doc = run_json(capsys, "convexity-scan", "23100", "23205", "--target", "psi")
    assert code == 0
    assert [r["n"] for r in doc["rows"]] == [23205]
    assert doc["rows"][0]["height"] == 13 and doc["rows"][0]["missing"] == [-12, 12]


def test_convexity_scan_phi(capsys):
    _, doc = run_json(capsys, "convexity-scan", "7735", "--target", "phi")
    assert doc["rows"][0]["missing"] == [-6]
    assert doc["rows"][0]["coefficientSet"][0] == -7 and doc["rows"][0]["coefficientSet"][-1] == 5


def test_convexity_scan_psi_clean_below_first_witness(capsys):
    _, doc = run_json(capsys, "convexity-scan", "1", "3000", "--target", "psi")
    assert doc["rows"] == []


def test_console_script_entry_point():
    env = dict(os.environ, CYCLODIV_WORKERS="1")
    proc = subprocess.run([sys.executable, "-m", "cyclodiv.cli", "phi", "0"], capture_output=True, env=env)
    assert proc.returncode == 2 and proc.stdout == b""
    proc = subprocess.run([sys.executable, "-m", "cyclodiv.cli", "psi", "15"], capture_output=True, env=env)
    assert proc.returncode == 0 and b"Psi_15" in proc.stdout and proc.stderr == b""
