import math
import subprocess
import sys
from pathlib import Path

import pytest

from linesearch.cli import dumps_record, main, parse_record
from linesearch.optimal import SearchProblem, optimize


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --- serialization ------------------------------------------------------------


def test_dumps_parse_roundtrip():
    rec = {
        "schema_version": "1",
        "command": "demo",
        "inputs": {"x": 0.1, "n": 3, "flag": True, "none": None},
        "results": {"seq": [1.0, 2.5e-300, 3.0], "names": ["a", "b"]},
        "diagnostics": {},
    }
    back = parse_record(dumps_record(rec))
    assert back == rec


def test_floats_roundtrip_exactly():
    vals = [math.pi, 1.0 / 3.0, 7.059109650863786, 2.0**-1000, 1.7976931348623157e308]
    text = dumps_record({"v": vals})
    assert parse_record(text)["v"] == vals


def test_float_formatting_has_full_precision():
    text = dumps_record({"x": 2.0})
    assert "2.0000000000000000e+00" in text


# --- optimal -------------------------------------------------------------------


def test_optimal_rho_ten(capsys):
    code, out, _ = run_cli(capsys, "optimal", "--lambda", "1", "--Lambda", "10", "--eps", "1e-9")
    assert code == 0
    rec = parse_record(out)
    assert rec["schema_version"] == "1"
    assert rec["command"] == "optimal"
    assert rec["results"]["n"] == 3
    assert rec["results"]["cr"] == pytest.approx(7.0592, abs=1e-4)
    assert rec["results"]["sequence"][-1] == 10.0
    assert rec["results"]["sequence"][:-1] == pytest.approx([3.0296, 6.149, 9.451], abs=2e-3)
    # Printed doubles reproduce the library's values exactly.
    rep = optimize(SearchProblem(1.0, 10.0, 1e-9))
    assert rec["results"]["a0"] == rep.a0
    assert rec["results"]["cr"] == rep.cr


def test_optimal_known_distance(capsys):
    code, out, _ = run_cli(capsys, "optimal", "--lambda", "1", "--Lambda", "1")
    rec = parse_record(out)
    assert code == 0
    assert rec["results"]["cr"] == 3.0
    assert rec["results"]["sequence"] == [1.0]


def test_optimal_scaled(capsys):
    _, out1, _ = run_cli(capsys, "optimal", "--lambda", "1", "--Lambda", "10")
    _, out2, _ = run_cli(capsys, "optimal", "--lambda", "2", "--Lambda", "20")
    r1, r2 = parse_record(out1), parse_record(out2)
    assert r2["results"]["cr"] == r1["results"]["cr"]
    assert r2["results"]["turns"] == pytest.approx(
        [2.0 * t for t in r1["results"]["turns"]], rel=1e-12
    )


def test_optimal_log2_rho(capsys):
    code, out, _ = run_cli(capsys, "optimal", "--log2-rho", "1000")
    rec = parse_record(out)
    assert code == 0
    assert rec["results"]["cr"] < 9.0
    assert rec["results"]["n"] == 999
    assert len(rec["results"]["turns"]) == 999


def test_optimal_invalid_flags(capsys):
    code, _, err = run_cli(capsys, "optimal", "--lambda", "2", "--Lambda", "1")
    assert code == 1
    assert "error" in err.lower()
    code, _, err = run_cli(capsys, "optimal", "--lambda", "1")
    assert code == 1


def test_optimal_csv_format(capsys):
    code, out, _ = run_cli(capsys, "optimal", "--Lambda", "10", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    cols = dict(zip(header.split(","), row.split(",")))
    assert cols["results.n"] == "3"
    assert float(cols["results.cr"]) == pytest.approx(7.0592, abs=1e-4)


def test_optimal_sweep_csv(capsys):
    code, out, _ = run_cli(
        capsys, "optimal", "--sweep", "--rho-min", "1", "--rho-max", "1000", "--points", "7"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",")[:4] == ["rho", "n", "a0", "cr"]
    assert len(lines) == 8
    first = lines[1].split(",")
    assert float(first[0]) == 1.0
    assert float(first[3]) == 3.0


def test_optimal_sweep_needs_range(capsys):
    code, _, err = run_cli(capsys, "optimal", "--sweep")
    assert code == 1 and "rho-min" in err


# --- reach ----------------------------------------------------------------------


def test_reach_five(capsys):
    code, out, _ = run_cli(capsys, "reach", "--ratio", "5", "--lambda", "1")
    rec = parse_record(out)
    assert code == 0
    assert rec["results"]["Lambda"] == 2.0
    assert rec["results"]["n"] == 1


def test_reach_seven(capsys):
    code, out, _ = run_cli(capsys, "reach", "--ratio", "7", "--lambda", "1")
    rec = parse_record(out)
    assert rec["results"]["Lambda"] == pytest.approx(9.0, abs=1e-12)
    assert rec["results"]["n"] == 3


def test_reach_unbounded(capsys):
    code, out, err = run_cli(capsys, "reach", "--ratio", "9")
    assert code == 1
    assert "unbounded" in err


# --- verify ---------------------------------------------------------------------


def test_verify_rho_ten(capsys):
    code, out, _ = run_cli(capsys, "verify", "--lambda", "1", "--Lambda", "10")
    rec = parse_record(out)
    assert code == 0
    checks = rec["results"]["checks"]
    assert all(checks.values())
    assert rec["results"]["worst_case_ratio"] == pytest.approx(rec["results"]["cr"], rel=1e-12)
    assert set(rec["results"]["baseline_ratios"]) == {
        "power_of_two", "f_infinity", "los_sqrt", "single_shot"
    }


def test_verify_small_rho(capsys):
    code, out, _ = run_cli(capsys, "verify", "--Lambda", "1.5")
    rec = parse_record(out)
    assert code == 0
    assert rec["results"]["cr"] == pytest.approx(4.0, rel=1e-12)


def test_verify_large_rho_band(capsys):
    code, out, _ = run_cli(capsys, "verify", "--Lambda", str(2.0**20), "--grid-points", "20000")
    rec = parse_record(out)
    assert code == 0
    assert rec["results"]["cr"] < 9.0


def test_verify_sweep(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--sweep", "--rho-min", "2", "--rho-max", "100",
        "--points", "3", "--grid-points", "5000",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert lines[0].split(",")[-1] == "passed"
    assert all(line.endswith("true") for line in lines[1:])


# --- mray -----------------------------------------------------------------------


def test_mray_power_of_two(capsys):
    code, out, _ = run_cli(capsys, "mray", "--m", "2", "--a", "0", "--b", "1")
    rec = parse_record(out)
    assert code == 0
    assert rec["results"]["feasible"] is True
    assert rec["results"]["worst_ratio"] == pytest.approx(9.0, abs=1e-9)
    assert rec["results"]["bound_upper"] == 9.0


def test_mray_three_rays(capsys):
    code, out, _ = run_cli(capsys, "mray", "--m", "3", "--a", "0", "--b", "1")
    rec = parse_record(out)
    assert code == 0
    assert rec["results"]["bound_upper"] == pytest.approx(14.5, rel=1e-12)


def test_mray_infeasible(capsys):
    code, out, _ = run_cli(capsys, "mray", "--m", "2", "--a", "0", "--b", "5")
    rec = parse_record(out)
    assert code == 1
    assert rec["results"]["feasible"] is False
    assert rec["results"]["b_interval"] == [1.0, 4.0]


# --- process-level behaviour -------------------------------------------------------


def test_module_entry_point_and_logging():
    repo_root = Path(__file__).resolve().parent.parent
    proc = subprocess.run(
        [sys.executable, "-m", "linesearch", "optimal", "--Lambda", "10"],
        capture_output=True,
        text=True,
        env={"PATH": "", "LINESEARCH_LOG": "debug", "PYTHONPATH": str(repo_root / "src")},
        cwd=repo_root,
    )
    assert proc.returncode == 0
    rec = parse_record(proc.stdout)  # stdout stays clean JSON
    assert rec["results"]["n"] == 3
    assert "optimize" in proc.stderr  # diagnostics went to stderr
