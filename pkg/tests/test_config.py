import json
import logging

import pytest

from quantum_carnot_pkg.core.exceptions import DomainError
from quantum_carnot_pkg.core.maxent import MaxEntSolver
from quantum_carnot_pkg.utils import config
from quantum_carnot_pkg.utils.config import SolverSettings, load_settings
from quantum_carnot_pkg.utils.logging_setup import LOGGER_NAME, setup_logging
from quantum_carnot_pkg.utils.system_info import get_cpu_info, get_system_info


def test_defaults(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "DEFAULT_SETTINGS_FILE", str(tmp_path / "absent.json"))
    settings = load_settings()
    assert settings == SolverSettings()
    assert settings.tol == 1e-10
    assert settings.max_terms == 10 ** 6
    assert settings.samples_per_stroke == 50


def test_file_overrides_and_unknown_keys(tmp_path, caplog):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"tol": 1e-8, "workers": 3, "colour": "blue"}))
    with caplog.at_level(logging.WARNING):
        settings = load_settings(str(path), logger=logging.getLogger(__name__))
    assert settings.tol == 1e-8
    assert settings.workers == 3
    assert settings.max_bisections == 200
    assert "colour" in caplog.text


@pytest.mark.parametrize("content", [
    "[1, 2]",
    "{not json",
    json.dumps({"tol": 0.0}),
    json.dumps({"samples_per_stroke": 1}),
    json.dumps({"probability_floor": 2.0}),
    json.dumps({"workers": 0}),
    json.dumps({"tol": "small"}),
    json.dumps({"samples_per_stroke": 3.5}),
    json.dumps({"max_bisections": 20.5}),
    json.dumps({"max_terms": 1e6}),
    json.dumps({"workers": 2.5}),
    json.dumps({"workers": True}),
    json.dumps({"max_bisections": "200"}),
])
def test_bad_files(tmp_path, content):
    path = tmp_path / "settings.json"
    path.write_text(content)
    with pytest.raises(DomainError):
        load_settings(str(path))


def test_missing_explicit_file(tmp_path):
    with pytest.raises(DomainError):
        load_settings(str(tmp_path / "missing.json"))


def test_solver_from_settings():
    solver = MaxEntSolver.from_settings(SolverSettings(tol=1e-9, max_bisections=50))
    assert solver.tol == 1e-9
    assert solver.max_bisections == 50
    assert SolverSettings().to_dict()["energy_scale"] == 1.0


def test_setup_logging(tmp_path):
    log_file = tmp_path / "run.log"
    logger = setup_logging(logging.INFO, str(log_file))
    assert logger.name == LOGGER_NAME
    assert not logger.propagate
    assert len(logger.handlers) == 2
    logger.info("hello")
    for handler in logger.handlers:
        handler.flush()
    assert "INFO - hello" in log_file.read_text()
    assert len(setup_logging().handlers) == 1


def test_system_info():
    info = get_system_info()
    assert {"timestamp", "platform", "numpy_version", "scipy_version", "cpu_info"} <= set(info)
    assert info["libraries"]["numpy"] == info["numpy_version"]
    assert info["cpu_info"]["count"] >= 1
    assert "brand" in get_cpu_info()
