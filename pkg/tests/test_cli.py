import csv
import json

import numpy as np
import pytest

from dirichlet_recurrence import ScanResult, cholesky, gram_matrix
from dirichlet_recurrence.cli import main
from dirichlet_recurrence.serialize import (FORMAT_VERSION, factor_from_dict,
                                            gram_from_dict)


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--output", str(out)])
    return code, out


def test_gram_json_round_trip(tmp_path, rect):
    code, out = run(tmp_path, "gram", "--N", "5", "--precision", "128")
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["format_version"] == FORMAT_VERSION
    assert payload["config"]["N"] == 5
    A = gram_from_dict(payload)
    assert A == gram_matrix(rect, 5, 128)


def test_cholesky_artifact(tmp_path, rect):
    code, out = run(tmp_path, "cholesky", "--N", "10", "--precision", "256")
    assert code == 0
    payload = json.loads(out.read_text())
    U = factor_from_dict(payload)
    assert U == cholesky(gram_matrix(rect, 10, 256))
    assert float(payload["residual"]) <= payload["residual_bound"]


def test_deterministic_artifacts(tmp_path):
    _, a = run(tmp_path, "cholesky", "--N", "6", "--scale", "K", name="a.json")
    _, b = run(tmp_path, "cholesky", "--N", "6", "--scale", "K", name="b.json")
    assert a.read_bytes() == b.read_bytes()


def test_cholesky_breakdown_exit_code(tmp_path, capsys):
    code, out = run(tmp_path, "cholesky", "--N", "512", "--precision", "53")
    assert code == 3
    assert "pivot 9" in capsys.readouterr().err
    assert not out.exists()


def test_basis_csv(tmp_path):
    code, out = run(tmp_path, "basis", "--N", "4", "--format", "csv", name="b.csv")
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 1 + 2 + 3 + 4
    first = [r for r in rows if r["n"] == "1"][0]
    assert float(first["value"]) == pytest.approx(1 / np.sqrt(0.4))


def test_lstar_point(tmp_path):
    code, out = run(tmp_path, "lstar", "--sigma", "2", "--modulus", "4", "--char-index", "0")
    assert code == 0
    value = json.loads(out.read_text())["value"]
    assert value[0] == pytest.approx(-np.pi ** 2 / 12, abs=1e-12)


def test_distance_both_methods(tmp_path):
    code, out = run(tmp_path, "distance", "--N", "12", "--t", "1.5")
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["abs_diff"] < 1e-10


@pytest.mark.parametrize("argv", [
    ["scan", "--epsilons", "0.5,0.1"],
    ["gram", "--alpha", "0.4"],
    ["gram", "--beta", "1.2"],
    ["gram", "--gamma", "-1"],
    ["distance", "--modulus", "5", "--char-index", "4"],
])
def test_config_errors(tmp_path, argv):
    code, out = run(tmp_path, *argv)
    assert code == 2
    assert not out.exists()


def test_scan_bundle(tmp_path, monkeypatch):
    monkeypatch.setenv("DIRICHLET_RECURRENCE_THREADS", "2")
    base = ["scan", "--N", "64", "--t-max", "4", "--t-step", "0.1",
            "--epsilons", "0.5,1,3", "--relative"]
    code, js = run(tmp_path, *base)
    assert code == 0
    res = ScanResult.from_dict(json.loads(js.read_text()))
    res.check_invariants()
    code, out = run(tmp_path, *base, "--format", "csv", name="scan.csv")
    assert code == 0
    trace = np.loadtxt(out, delimiter=",", skiprows=1)
    assert np.array_equal(trace[:, 1], res.distances)
    density = np.loadtxt(tmp_path / "scan_density.csv", delimiter=",", skiprows=1)
    assert np.array_equal(density[:, 1], res.densities)
    plot = np.loadtxt(tmp_path / "scan_plot.dat")
    assert plot.shape == (len(res.grid), 2)


def test_verify_passes(tmp_path, capsys):
    code, out = run(tmp_path, "verify")
    assert code == 0
    err = capsys.readouterr().err
    assert err.count("PASS") == 4
    assert all(c["passed"] for c in json.loads(out.read_text())["checks"])


def test_verify_reports_mismatch(monkeypatch, tmp_path):
    from dirichlet_recurrence import verification
    monkeypatch.setattr(verification, "gram_identity",
                        lambda rect, order: verification.Check("gram identity", False, 1.0, 1e-9))
    monkeypatch.setattr("dirichlet_recurrence.cli.run_all", verification.run_all)
    code, _ = run(tmp_path, "verify")
    assert code == 4
