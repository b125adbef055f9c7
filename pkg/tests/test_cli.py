import csv
import io
import json
import math

import pytest

from quantum_carnot_pkg import cli
from quantum_carnot_pkg.core.cycle import REPORT_KEYS
from quantum_carnot_pkg.utils import config


@pytest.fixture(autouse=True)
def no_user_settings(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "DEFAULT_SETTINGS_FILE", str(tmp_path / "absent.json"))


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_solve(capsys):
    code, out = run(capsys, "solve", "--model", "square-well", "--lambda", "2")
    assert code == 0
    result = json.loads(out)
    assert result["model"] == "square-well"
    assert 0 < result["alpha"] < 1
    assert result["constraint_residual"] <= 1e-10
    assert result["normalization_residual"] <= 1e-12
    assert result["S"] > 0 and result["T"] > 0


def test_solve_boundary(capsys):
    code, out = run(capsys, "solve", "--lambda", "1")
    result = json.loads(out)
    assert code == 0
    assert result["alpha"] == 0.0
    assert result["log_alpha"] is None
    assert result["S"] == 0.0
    assert result["at_boundary"] is True


def test_solve_harmonic(capsys):
    code, out = run(capsys, "solve", "--model", "harmonic", "--lambda", str(1.5 ** 0.5))
    assert code == 0
    assert json.loads(out)["alpha"] == pytest.approx(0.5, abs=1e-12)


def test_infeasible_lambda_fails(capsys):
    code, out = run(capsys, "solve", "--lambda", "0.5")
    assert code == 1
    assert out == ""


def test_energy_scale(capsys):
    _, plain = run(capsys, "solve", "--lambda", "3")
    _, scaled = run(capsys, "solve", "--lambda", "3", "--energy-scale", "2.5")
    assert json.loads(scaled)["T"] == pytest.approx(2.5 * json.loads(plain)["T"], rel=1e-15)
    assert json.loads(scaled)["S"] == json.loads(plain)["S"]


def test_settings_file(capsys, tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"energy_scale": 2.0, "tol": 1e-9}))
    _, plain = run(capsys, "solve", "--lambda", "3")
    code, configured = run(capsys, "solve", "--lambda", "3", "--config", str(path))
    assert code == 0
    assert json.loads(configured)["T"] == pytest.approx(2.0 * json.loads(plain)["T"], rel=1e-8)


def test_bad_settings_file(capsys, tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"tol": -1.0}))
    assert run(capsys, "solve", "--lambda", "3", "--config", str(path))[0] == 1
    assert run(capsys, "solve", "--lambda", "3", "--config", str(tmp_path / "missing.json"))[0] == 1


@pytest.mark.parametrize("argv, content", [
    (["cycle", "--v1", "1", "--v2", "2", "--v3", "4"], {"samples_per_stroke": 3.5}),
    (["solve", "--lambda", "3"], {"max_bisections": 20.5}),
    (["sweep", "--lambda-start", "1", "--lambda-end", "2"], {"workers": 2.5}),
])
def test_fractional_integer_setting_fails(argv, content, capsys, tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps(content))
    code, out = run(capsys, *argv, "--config", str(path))
    assert code == 1
    assert out == ""


def test_cycle(capsys, tmp_path):
    samples = tmp_path / "strokes.csv"
    code, out = run(capsys, "cycle", "--v1", "1", "--v2", "2", "--v3", "4",
                    "--samples", "10", "--output", str(samples))
    assert code == 0
    summary = json.loads(out)
    assert list(summary) == list(REPORT_KEYS)
    assert summary["v4"] == 2.0
    assert summary["eta"] == 0.75
    assert abs(summary["clausius_residual"]) <= 1e-12

    with open(samples, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["stroke", "V", "P", "E", "S", "T"]
    assert len(rows) == 1 + 4 * 10
    assert rows[1][0] == "IsoHot" and rows[-1][0] == "AdiabaticCompress"


def test_cycle_reports(capsys, tmp_path):
    report_path = tmp_path / "cycle.json"
    code, _ = run(capsys, "cycle", "--v1", "1", "--v2", "1.5", "--v3", "3", "--e-h", "2",
                  "--samples", "5", "--workers", "2", "--energy-scale", "3",
                  "--report-path", str(report_path))
    assert code == 0
    data = json.loads(report_path.read_text())
    assert data["kind"] == "cycle"
    assert data["summary"]["q_h"] == pytest.approx(3.0 * data["report"]["q_h"], rel=1e-15)
    assert len(data["rows"]) == 20

    html_path = tmp_path / "cycle.html"
    code, _ = run(capsys, "cycle", "--v1", "1", "--v2", "2", "--v3", "4", "--samples", "5",
                  "--report-format", "html", "--report-path", str(html_path))
    assert code == 0
    assert "<html" in html_path.read_text().lower()


def test_infeasible_cycle(capsys):
    assert run(capsys, "cycle", "--v1", "2", "--v2", "1", "--v3", "4")[0] == 1
    assert run(capsys, "cycle", "--v1", "1", "--v2", "2", "--v3", "4", "--e-h", "0.5")[0] == 1


def test_sweep_is_deterministic(capsys, tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (first, second):
        code, _ = run(capsys, "sweep", "--lambda-start", "1.5", "--lambda-end", "6",
                      "--points", "12", "--output", str(path))
        assert code == 0
    assert first.read_bytes() == second.read_bytes()

    rows = list(csv.DictReader(io.StringIO(first.read_text())))
    assert list(rows[0]) == list(cli.SWEEP_COLUMNS)
    S = [float(row["S"]) for row in rows]
    assert all(b > a for a, b in zip(S, S[1:]))
    for row in rows:
        lam, alpha = float(row["lambda"]), float(row["alpha"])
        assert float(row["dS_dlambda"]) == pytest.approx(-2 * lam * math.log(alpha), rel=1e-12)
        assert float(row["dS_dlambda"]) > 0
    assert all(float(row["residual"]) <= 1e-10 for row in rows)


def test_sweep_json_to_stdout(capsys):
    code, out = run(capsys, "sweep", "--model", "harmonic", "--lambda-start", "1",
                    "--lambda-end", "2", "--points", "3", "--format", "json", "--workers", "1")
    assert code == 0
    records = json.loads(out)
    assert [r["lambda"] for r in records] == [1.0, 1.5, 2.0]
    assert set(records[0]) == set(cli.SWEEP_COLUMNS)


def test_sweep_csv_to_stdout(capsys):
    code, out = run(capsys, "sweep", "--lambda-start", "1", "--lambda-end", "2", "--points", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(cli.SWEEP_COLUMNS)
    # lambda = 1 sits on the boundary.
    assert lines[1].startswith("1.0,0.0,0.0,0.0,")


def test_sweep_below_boundary_fails(capsys):
    code, out = run(capsys, "sweep", "--lambda-start", "0.5", "--lambda-end", "2")
    assert code == 1
    assert out == ""
    # sqrt(1/2) is the harmonic boundary.
    assert run(capsys, "sweep", "--model", "harmonic", "--lambda-start", "0.8",
               "--lambda-end", "2", "--points", "2")[0] == 0


@pytest.mark.parametrize("argv", [
    ["solve"],
    ["solve", "--lambda", "-1"],
    ["solve", "--lambda", "2", "--model", "triangle"],
    ["cycle", "--v1", "1", "--v2", "2", "--v3", "4", "--samples", "1"],
    ["sweep", "--lambda-start", "1", "--lambda-end", "2", "--points", "1"],
    ["sweep", "--lambda-start", "3", "--lambda-end", "2"],
    ["verify", "--level", "exhaustive"],
    [],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(argv)
    assert excinfo.value.code == 2


def test_verify(capsys, tmp_path):
    report_path = tmp_path / "verify.json"
    code, out = run(capsys, "verify", "--level", "quick", "--report-path", str(report_path))
    assert code == 0
    assert json.loads(out)["passed"] is True
    saved = json.loads(report_path.read_text())
    assert saved["kind"] == "verification"
    assert "system_info" in saved


def test_verify_catches_wrong_temperature(capsys, monkeypatch, tampered_solver):
    monkeypatch.setattr(cli, "MaxEntSolver", type(tampered_solver))
    code, out = run(capsys, "verify")
    assert code == 1
    assert "finite_difference_temperature" in json.loads(out)["failed_checks"]


def test_log_file(capsys, tmp_path):
    log_file = tmp_path / "qcarnot.log"
    code, _ = run(capsys, "solve", "--lambda", "2", "--verbose", "--log-file", str(log_file))
    assert code == 0
    assert "Logging to file" in log_file.read_text()


def test_report_messages_reach_log_file(capsys, tmp_path):
    log_file = tmp_path / "qcarnot.log"
    html_path = tmp_path / "cycle.html"
    code, _ = run(capsys, "cycle", "--v1", "1", "--v2", "2", "--v3", "4", "--samples", "3",
                  "--report-format", "html", "--report-path", str(html_path),
                  "--verbose", "--log-file", str(log_file))
    assert code == 0
    text = log_file.read_text()
    assert "Cycle report saved" in text
    assert "HTML report saved" in text
