import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from isac_sensing import cli, validation
from isac_sensing.cfar import frame_to_bin
from isac_sensing.params import KM2_PER_M2, parse_config_text


def run(tmp_path, *argv, name="out"):
    out = tmp_path / name
    code = cli.main([*argv, "--out", str(out)])
    return code, out


def columns(path):
    header, rows = cli.read_csv(path)
    return {h: np.array([float(r[i]) for r in rows]) for i, h in enumerate(header)}


def test_dist_tsd_column_monotone(tmp_path):
    code, out = run(tmp_path, "dist", "--model", "tsd", "--lambda-b", "1e-4")
    assert code == 0
    data = columns(out / "dist_lambda_km2_0.0001.csv")
    assert list(data) == ["x", "ccdf_tsd"]
    assert np.all(np.diff(data["ccdf_tsd"]) <= 0)
    manifest = parse_config_text((out / "manifest.txt").read_text())
    assert manifest["csv_schema"] == "1"
    assert {"lambda_B_m2", "lambda_B_km2", "outputs"} <= set(manifest)


def test_dist_dense_regime_summary(tmp_path):
    code, out = run(tmp_path, "dist", "--model", "all", "--lambda-b", "100",
                    "--mc-trials", "1e6", "--seed", "41")
    assert code == 0
    summary = columns(out / "dist_summary.csv")
    assert summary["lambda_B_m2"][0] == pytest.approx(1e-4)
    assert summary["ks_tsd"][0] < summary["ks_sia"][0]


def test_dist_sparse_regime_summary(tmp_path):
    code, out = run(tmp_path, "dist", "--model", "all", "--lambda-b", "1",
                    "--mc-trials", "1e5", "--seed", "42")
    assert code == 0
    summary = columns(out / "dist_summary.csv")
    assert summary["ks_sia"][0] < summary["ks_tsd"][0]


def test_csv_keeps_full_precision(tmp_path):
    code, out = run(tmp_path, "dist", "--model", "sia", "--grid-points", "7")
    data = columns(out / "dist_lambda_km2_10.csv")
    text = (out / "dist_lambda_km2_10.csv").read_bytes().decode("utf-8")
    assert text.startswith("x,ccdf_sia\r\n")
    assert repr(float(data["x"][3])) in text


def test_cfar_report(tmp_path, capsys):
    code, out = run(tmp_path, "cfar", "--p-frame", "0.1")
    assert code == 0
    row = dict(zip(*_row(out / "cfar.csv")))
    assert float(row["p_bin"]) == pytest.approx(1.0288e-4, rel=1e-4)
    assert float(row["p_bin"]) == frame_to_bin(0.1, 64, 16)
    assert "p_bin" in capsys.readouterr().out


def _row(path):
    header, rows = cli.read_csv(path)
    return header, rows[0]


def test_cfar_power_scaling(tmp_path):
    _, a = run(tmp_path, "cfar", name="a")
    _, b = run(tmp_path, "cfar", "--set", "P_t=2", name="b")
    ra, rb = dict(zip(*_row(a / "cfar.csv"))), dict(zip(*_row(b / "cfar.csv")))
    assert ra["eta"] == rb["eta"] and ra["t_r"] == rb["t_r"]
    assert float(rb["eta_prime"]) == pytest.approx(2 * float(ra["eta_prime"]))


def test_cfar_stable_refused(tmp_path, capsys):
    code, _ = run(tmp_path, "cfar", "--model", "stable")
    assert code == cli.EXIT_UNDEFINED
    assert "infinite" in capsys.readouterr().err


def test_ardcp_t_r_sweep_non_increasing(tmp_path):
    code, out = run(tmp_path, "ardcp", "--sweep", "t_r", "--values", "1", "10", "100", "1e3", "1e4")
    assert code == 0
    assert np.all(np.diff(columns(out / "ardcp.csv")["ardcp_analytic"]) <= 0)


@pytest.mark.parametrize("sweep, values, extra", [
    ("n_c", ["1", "3", "7"], ["--set", "lambda_B_km2=100"]),
    ("h_b", ["10", "30", "50"], ["--set", "lambda_B_km2=1", "--set", "h_T=100"]),
])
def test_ardcp_trend_sweeps(tmp_path, sweep, values, extra):
    code, out = run(tmp_path, "ardcp", "--sweep", sweep, "--values", *values, "--t-r", "1e3",
                    "--mc-trials", "1e5", "--seed", "7", *extra)
    assert code == 0
    data = columns(out / "ardcp.csv")
    assert np.all(np.diff(data["ardcp_analytic"]) > 0)
    assert np.all(np.diff(data["ardcp_mc"]) > 0)


def test_ardcp_lambda_sweep_in_km2(tmp_path):
    code, out = run(tmp_path, "ardcp", "--sweep", "lambda_b", "--values", "1", "10", "--t-r", "0")
    data = columns(out / "ardcp.csv")
    np.testing.assert_allclose(data["ardcp_analytic"], np.array([1, 10]) / KM2_PER_M2)


@pytest.mark.parametrize("argv", [
    ["dist", "--mc-trials", "1e4"],
    ["cfar", "--set", "alpha_c=2"],
    ["cfar", "--set", "mc.trails=5"],
    ["cfar", "--set", "nonsense"],
    ["cfar", "--config", "/nonexistent/file.cfg"],
])
def test_config_errors_exit_2(tmp_path, argv):
    assert run(tmp_path, *argv)[0] == cli.EXIT_CONFIG


def test_numerical_failure_exit_4(tmp_path):
    code, _ = run(tmp_path, "cfar", "--set", "inversion.max_subdivisions=1")
    assert code == cli.EXIT_NUMERICAL


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lambda_B = 1e-4\nN_c = 1\nmc.trials = 2000\nmc.seed = 3\n")
    code, out = run(tmp_path, "cfar", "--config", str(cfg), "--set", "N_c=5", "--seed", "4")
    assert code == 0
    manifest = parse_config_text((out / "manifest.txt").read_text())
    assert manifest["config.N_c"] == "5"
    assert manifest["seed"] == "4"
    assert "p_bin_mc" in _row(out / "cfar.csv")[0]


def test_replay_is_byte_identical(tmp_path):
    code, first = run(tmp_path, "ardcp", "--sweep", "n_c", "--values", "1", "3",
                      "--mc-trials", "5000", "--seed", "11", name="first")
    assert code == 0
    second = tmp_path / "second"
    assert cli.main(["replay", str(first / "manifest.txt"), "--out", str(second)]) == 0
    assert (first / "ardcp.csv").read_bytes() == (second / "ardcp.csv").read_bytes()
    assert (first / "manifest.txt").read_bytes() == (second / "manifest.txt").read_bytes()


def test_validate_writes_summary(tmp_path):
    code, out = run(tmp_path, "validate", "--only", "2", "10")
    assert code == 0
    summary = json.loads((out / "validation_summary.json").read_text())
    assert summary["passed"] and [c["number"] for c in summary["criteria"]] == [2, 10]


def test_validate_catches_tampered_mean(tmp_path, monkeypatch, capsys):
    real = validation.campbell_cumulant

    def off_by_ten_percent(n, params, r_c):
        return real(n, params, r_c) * (1.1 if n == 1 else 1.0)

    monkeypatch.setattr(validation, "campbell_cumulant", off_by_ten_percent)
    code, out = run(tmp_path, "validate", "--only", "1", "--level", "fast")
    assert code == cli.EXIT_VALIDATION
    assert "Campbell cumulant match" in capsys.readouterr().out
    summary = json.loads((out / "validation_summary.json").read_text())
    assert summary["criteria"][0]["passed"] is False


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "isac_sensing", "cfar", "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "t_r" in proc.stdout


def test_shipped_default_config_is_accepted(tmp_path):
    shipped = Path(__file__).resolve().parents[1] / "configs" / "default.cfg"
    code, out = run(tmp_path, "validate", "--config", str(shipped), "--only", "2", "6", "10")
    assert code == 0
    code, _ = run(tmp_path, "cfar", "--config", str(shipped), name="cfar")
    assert code == 0
