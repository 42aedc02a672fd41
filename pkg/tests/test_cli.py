"""Command-line behavior: exit codes, file formats, reproducibility."""

from __future__ import annotations

import json

import numpy as np
import pytest

from siwr import BASELINE_PARAMS, BASELINE_STATE, integrate
from siwr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(path):
    meta, header, rows = {}, None, []
    for line in path.read_text().splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = json.loads(value)
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, header, rows


def test_r0_prints_value_first(tmp_path, capsys):
    code, out, _ = run(capsys, "r0", "--out", str(tmp_path))
    assert code == 0
    assert out.splitlines()[0] == "1.9576555412732888"


def test_r0_zero_under_full_controls(tmp_path, capsys):
    code, out, _ = run(capsys, "r0", "--out", str(tmp_path),
                       "--set", "parameters.eps_h=1", "--set", "parameters.eps_w=1")
    assert code == 0
    assert out.splitlines()[0] == "0"


def test_simulate_writes_expected_grid(tmp_path, capsys):
    code, _, _ = run(capsys, "simulate", "--out", str(tmp_path))
    assert code == 0
    meta, header, rows = read_csv(tmp_path / "trajectory.csv")
    assert header == ["t", "S", "I", "R", "W", "C"]
    assert len(rows) == 101
    assert meta["seed"] == 42
    assert meta["parameters"]["lambda"] == 1.0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["summary"]["peak_time"] == 44.0
    assert summary["meta"]["solver"]["t_end"] == 100.0


def test_serialized_trajectory_round_trips_exactly(tmp_path, capsys):
    run(capsys, "simulate", "--out", str(tmp_path))
    _, _, rows = read_csv(tmp_path / "trajectory.csv")
    parsed = np.array([[float(v) for v in row] for row in rows])
    tr = integrate(BASELINE_PARAMS, BASELINE_STATE)
    assert np.array_equal(parsed[:, 0], tr.times)
    assert np.array_equal(parsed[:, 1:5], tr.y)
    assert np.array_equal(parsed[:, 5], tr.cum_incidence)


def test_config_error_names_offending_field(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"parameters": {"gamma": -0.2}}')
    code, _, err = run(capsys, "simulate", "--config", str(cfg), "--out", str(tmp_path))
    assert code == 1
    assert "gamma" in err


def test_unknown_key_reported_with_path(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"solver": {"reltol": 1e-9}}')
    code, _, err = run(capsys, "simulate", "--config", str(cfg), "--out", str(tmp_path))
    assert code == 1
    assert "solver.reltol" in err


def test_type_error_reported_with_path(tmp_path, capsys):
    code, _, err = run(capsys, "simulate", "--out", str(tmp_path),
                       "--set", "solver.rel_tol=tight")
    assert code == 1
    assert "solver.rel_tol" in err


def test_missing_config_file(tmp_path, capsys):
    code, _, err = run(capsys, "r0", "--config", str(tmp_path / "nope.json"))
    assert code == 1
    assert "config" in err


def test_numerical_failure_leaves_no_partial_outputs(tmp_path, capsys):
    out_dir = tmp_path / "results"
    code, _, err = run(capsys, "simulate", "--out", str(out_dir),
                       "--set", "solver.rel_tol=1e-13", "--set", "solver.abs_tol=1e-13",
                       "--set", "solver.h_init=1", "--set", "solver.h_min=1",
                       "--set", "solver.h_max=1")
    assert code == 2
    assert "numerical failure" in err
    assert not out_dir.exists() or list(out_dir.iterdir()) == []


def test_dump_config_round_trip(tmp_path, capsys):
    code, dumped, _ = run(capsys, "simulate", "--dump-config",
                          "--set", "parameters.beta1=0.3", "--seed", "7")
    assert code == 0
    cfg_path = tmp_path / "echo.json"
    cfg_path.write_text(dumped)
    code2, dumped2, _ = run(capsys, "simulate", "--dump-config", "--config", str(cfg_path))
    assert code2 == 0
    assert dumped2 == dumped
    parsed = json.loads(dumped)
    assert parsed["parameters"]["beta1"] == 0.3
    assert parsed["seed"] == 7


def test_dump_config_reproduces_identical_outputs(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "simulate", "--out", str(a))
    code, dumped, _ = run(capsys, "simulate", "--dump-config")
    cfg_path = tmp_path / "echo.json"
    cfg_path.write_text(dumped)
    run(capsys, "simulate", "--config", str(cfg_path), "--out", str(b))
    assert (a / "trajectory.csv").read_bytes() == (b / "trajectory.csv").read_bytes()
    assert (a / "summary.json").read_text() == (b / "summary.json").read_text()


def test_seed_flag_threads_into_outputs(tmp_path, capsys):
    code, _, _ = run(capsys, "prcc", "--out", str(tmp_path), "--seed", "7",
                     "--set", "prcc.n=40")
    assert code == 0
    meta, header, rows = read_csv(tmp_path / "prcc.csv")
    assert meta["seed"] == 7
    assert meta["generator"] == "numpy-pcg64"
    assert header == ["parameter", "prcc"]
    assert len(rows) == 10
    coeffs7 = {row[0]: float(row[1]) for row in rows}
    run(capsys, "prcc", "--out", str(tmp_path), "--seed", "8", "--set", "prcc.n=40")
    _, _, rows8 = read_csv(tmp_path / "prcc.csv")
    assert {r[0] for r in rows8} == set(coeffs7)
    assert any(float(r[1]) != coeffs7[r[0]] for r in rows8)


def test_endemic_subcommand_reports_roots(tmp_path, capsys):
    code, out, _ = run(capsys, "endemic", "--out", str(tmp_path))
    assert code == 0
    report = json.loads((tmp_path / "endemic.json").read_text())["report"]
    assert report["kind"] == "endemic"
    assert report["stability"] == "stable"
    assert report["state"]["i"] == pytest.approx(2.40375975596554, rel=1e-7)
    code, out, _ = run(capsys, "endemic", "--out", str(tmp_path),
                       "--set", "parameters.beta1=0.01", "--set", "parameters.beta_max=0.01")
    assert code == 0
    report = json.loads((tmp_path / "endemic.json").read_text())["report"]
    assert report["kind"] == "no_endemic"
    assert "no endemic" in out


def test_dfe_subcommand(tmp_path, capsys):
    code, _, _ = run(capsys, "dfe", "--out", str(tmp_path))
    assert code == 0
    report = json.loads((tmp_path / "dfe.json").read_text())["report"]
    assert report["kind"] == "disease_free"
    assert report["state"]["s"] == 10000.0
    assert report["stability"] == "unstable"
    assert len(report["eigenvalues"]) == 4


def test_sweep_subcommand_table(tmp_path, capsys):
    code, _, _ = run(capsys, "sweep", "--out", str(tmp_path),
                     "--set", "sweep.which=nu", "--set", "sweep.values=[0,0.01,0.02,0.03]")
    assert code == 0
    meta, header, rows = read_csv(tmp_path / "sweep_nu.csv")
    assert len(rows) == 4
    assert header[0] == "parameter"
    peaks = [float(r[header.index("peak_infected")]) for r in rows]
    assert all(a >= b for a, b in zip(peaks, peaks[1:]))


def test_scenarios_subcommand_table(tmp_path, capsys):
    code, _, _ = run(capsys, "scenarios", "--out", str(tmp_path))
    assert code == 0
    _, header, rows = read_csv(tmp_path / "scenarios.csv")
    assert len(rows) == 14
    assert rows[0][0] == "baseline"


def test_bifurcation_subcommand_table(tmp_path, capsys):
    code, _, _ = run(capsys, "bifurcation", "--out", str(tmp_path),
                     "--set", "bifurcation.steps=10")
    assert code == 0
    _, header, rows = read_csv(tmp_path / "bifurcation_beta1.csv")
    assert len(rows) == 10
    assert header == ["parameter", "value", "r0", "endemic_i", "converged"]


def test_contour_subcommand_matrix(tmp_path, capsys):
    code, _, _ = run(capsys, "contour", "--out", str(tmp_path),
                     "--set", "contour.grid_n=5")
    assert code == 0
    _, header, rows = read_csv(tmp_path / "r0_contour.csv")
    assert len(header) == 6 and header[0] == "eps_h\\eps_w"
    assert len(rows) == 5
    assert float(rows[0][1]) == 1.9576555412732888
    assert float(rows[-1][-1]) == 0.0


def test_calibration_subcommand(tmp_path, capsys):
    code, out, _ = run(capsys, "calibration", "--out", str(tmp_path))
    assert code == 0
    cal = json.loads((tmp_path / "calibration.json").read_text())["calibration"]
    assert cal["baseline_peak_time_days"] == 44.0
    assert cal["eps_w_r0_crossing"] is None
    assert "reference" in out


def test_set_rejects_malformed_assignment(tmp_path, capsys):
    code, _, err = run(capsys, "r0", "--out", str(tmp_path), "--set", "parameters.gamma")
    assert code == 1
    assert "--set" in err


def test_negative_seed_rejected(tmp_path, capsys):
    code, _, err = run(capsys, "r0", "--out", str(tmp_path), "--seed", "-3")
    assert code == 1
    assert "seed" in err
