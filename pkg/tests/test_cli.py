import csv
import json

import numpy as np
import pytest

from lorentzsoliton.cli import main
from lorentzsoliton.geodesic import CSV_COLUMNS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_timestamp(text):
    doc = json.loads(text)
    doc.pop("timestamp")
    return json.dumps(doc, sort_keys=True)


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--mu", "1", "--eps", "-1", "--samples", "1000", "--tol", "1e-8", "--seed", "42")
    assert code == 0
    doc = json.loads(out)
    assert doc["overall_pass"] is True
    assert all(c["passed"] for c in doc["checks"])
    assert doc["config"]["seed"] == 42
    assert doc["engine"]["rng"]


def test_verify_is_deterministic(capsys):
    argv = ("verify", "--mu", "-0.5", "--eps", "1", "--samples", "200", "--seed", "7")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert strip_timestamp(first) == strip_timestamp(second)
    a = [line for line in first.splitlines() if '"timestamp"' not in line]
    b = [line for line in second.splitlines() if '"timestamp"' not in line]
    assert a == b


def test_verify_seed_changes_samples(capsys):
    _, a, _ = run(capsys, "verify", "--samples", "50", "--seed", "1")
    _, b, _ = run(capsys, "verify", "--samples", "50", "--seed", "2")
    assert strip_timestamp(a) != strip_timestamp(b)


def test_verify_floats_round_trip(capsys):
    _, out, _ = run(capsys, "verify", "--samples", "50")
    for check in json.loads(out)["checks"]:
        value = check["max_residual"]
        assert float(repr(value)) == value


def test_check_failure_exit_code(capsys):
    # at |mu| = 2 the (1,1) Einstein defect dips below the 1e-3 floor near x3 = 2
    code, out, _ = run(capsys, "verify", "--mu", "2", "--eps", "1", "--samples", "1000")
    assert code == 1
    failed = [c["name"] for c in json.loads(out)["checks"] if not c["passed"]]
    assert failed == ["non-einstein"]


@pytest.mark.parametrize(
    "flag, value, field",
    [("--mu", "0", "mu"), ("--eps", "2", "eps"), ("--samples", "0", "samples"), ("--tol", "-1", "tol")],
)
def test_config_errors_name_the_field(capsys, flag, value, field):
    code, _, err = run(capsys, "verify", f"{flag}={value}")
    assert code == 2
    assert f"{field}:" in err


def test_unknown_quantity_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["query", "torsion"])
    assert info.value.code == 2


def test_malformed_point_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["query", "metric", "--point", "1,2"])
    assert info.value.code == 2


def test_report_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--samples", "20", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["overall_pass"] is True


def test_unwritable_output_is_io_error(tmp_path, capsys):
    target = tmp_path / "missing" / "report.json"
    code, _, err = run(capsys, "verify", "--samples", "20", "--out", str(target))
    assert code == 3
    assert "I/O error" in err


def test_query_ricci(capsys):
    code, out, _ = run(capsys, "query", "ricci", "--mu", "1", "--eps", "1", "--point", "0,0,0")
    assert code == 0
    value = np.array(json.loads(out)["value"])
    want = np.zeros((3, 3))
    want[0, 0], want[0, 1], want[1, 0], want[2, 2] = -1, -0.5, -0.5, -0.5
    np.testing.assert_allclose(value, want, atol=1e-14)


def test_query_scalar(capsys):
    _, out, _ = run(capsys, "query", "scalar", "--mu", "2", "--point=-1,0.5,1")
    assert json.loads(out)["value"] == pytest.approx(-6.0, abs=1e-12)


def test_query_minkowski_metric(capsys):
    _, out, _ = run(capsys, "query", "metric", "--metric", "minkowski")
    assert json.loads(out)["value"] == [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_query_text_format(capsys):
    code, out, _ = run(capsys, "query", "christoffel", "--format", "text")
    assert code == 0 and out.startswith("christoffel at (0.0, 0.0, 0.0):")


def test_geodesic_reference_run(tmp_path, capsys):
    path = tmp_path / "trace.csv"
    code, out, _ = run(capsys, "geodesic", "--mu", "1", "--eps", "1", "--T", "10", "--h", "1e-3", "--out", str(path))
    assert code == 0
    summary = json.loads(out)
    assert summary["max_energy_drift"] <= 1e-6 and summary["max_momentum_drift"] <= 1e-6
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 10002


def test_geodesic_minkowski_line(tmp_path, capsys):
    path = tmp_path / "line.csv"
    code, _, _ = run(
        capsys, "geodesic", "--metric", "minkowski", "--velocity", "1,0,0", "--T", "1", "--h", "0.01", "--out", str(path)
    )
    assert code == 0
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    np.testing.assert_array_equal(data[:, 4:7], np.tile([1.0, 0.0, 0.0], (101, 1)))
    np.testing.assert_allclose(data[-1, 1:4], [1, 0, 0], atol=1e-14)


@pytest.mark.parametrize("h", ["0", "-0.1"])
def test_geodesic_bad_step(capsys, h):
    code, _, err = run(capsys, "geodesic", f"--h={h}")
    assert code == 2 and "h:" in err


def test_geodesic_blow_up_exit(capsys):
    code, _, err = run(
        capsys, "geodesic", "--mu", "2", "--eps=-1", "--point=-1.68,-1.474,-1.778", "--velocity=-0.904,0.945,-0.582",
        "--T", "1", "--h", "1e-3",
    )
    assert code == 1 and "bounded region" in err


def test_geodesic_unwritable(tmp_path, capsys):
    code, _, _ = run(capsys, "geodesic", "--T", "0.1", "--h", "0.01", "--out", str(tmp_path / "no" / "t.csv"))
    assert code == 3


def test_soliton_sweep(capsys):
    code, out, _ = run(capsys, "soliton", "--mu", "-1", "--eps", "1", "--samples", "50", "--seed", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["k_draws"] == 50 and doc["max_residual"] <= 1e-8 and doc["lambda"] == -0.5


def test_soliton_fixed_k_text(capsys):
    code, out, _ = run(capsys, "soliton", "--k=0.7,-1.2,0.4,1.5", "--format", "text")
    assert code == 0 and "k_draws: 1" in out


def test_soliton_minkowski_is_rejected(capsys):
    code, _, _ = run(capsys, "soliton", "--metric", "minkowski")
    assert code == 2
