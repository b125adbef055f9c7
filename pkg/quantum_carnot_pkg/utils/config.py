"""
Solver and output settings for the quantum Carnot tools.

Settings live in a JSON object, by default ~/.config/quantum_carnot/settings.json.
The file is optional; missing keys keep their defaults and explicit CLI flags
override whatever the file says.
"""

import dataclasses
import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, Optional

from quantum_carnot_pkg.core.exceptions import DomainError

DEFAULT_CONFIG_DIR = os.path.join(os.path.expanduser("~"), ".config", "quantum_carnot")
DEFAULT_SETTINGS_FILE = os.path.join(DEFAULT_CONFIG_DIR, "settings.json")


@dataclass
class SolverSettings:
    """Tunable numerical and output parameters."""

    tol: float = 1e-10
    max_bisections: int = 200
    probability_floor: float = 1e-300
    max_terms: int = 10 ** 6
    samples_per_stroke: int = 50
    workers: Optional[int] = None
    energy_scale: float = 1.0

    def validate(self) -> "SolverSettings":
        """
        Check value types and ranges.

        Returns:
            self, for chaining

        Raises:
            DomainError: if any value has the wrong type or is out of range
        """
        for name in ("max_bisections", "max_terms", "samples_per_stroke", "workers"):
            value = getattr(self, name)
            if value is None and name == "workers":
                continue
            if isinstance(value, bool) or not isinstance(value, int):
                raise DomainError(f"{name} must be an integer, got {value!r}")
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_bisections < 1:
            raise DomainError(f"max_bisections must be >= 1, got {self.max_bisections}")
        if not 0 < self.probability_floor < 1:
            raise DomainError(f"probability_floor must lie in (0, 1), got {self.probability_floor}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")
        if self.samples_per_stroke < 2:
            raise DomainError(f"samples_per_stroke must be >= 2, got {self.samples_per_stroke}")
        if self.workers is not None and self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")
        if not self.energy_scale > 0:
            raise DomainError(f"energy_scale must be positive, got {self.energy_scale}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


def load_settings(path: Optional[str] = None,
                  logger: Optional[logging.Logger] = None) -> SolverSettings:
    """
    Load settings from a JSON file.

    Args:
        path: Settings file; if None the default file is used when it exists
        logger: Logger instance

    Returns:
        Validated SolverSettings

    Raises:
        DomainError: if the file is unreadable, not a JSON object, or holds bad values
    """
    logger = logger or logging.getLogger(__name__)
    settings_path = path or DEFAULT_SETTINGS_FILE

    if not os.path.exists(settings_path):
        if path is not None:
            raise DomainError(f"Settings file {path} does not exist")
        return SolverSettings()

    try:
        with open(settings_path, "r") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise DomainError(f"Could not read settings from {settings_path}: {e}") from e

    if not isinstance(raw, dict):
        raise DomainError(f"Settings file {settings_path} must hold a JSON object")

    known = {f.name for f in dataclasses.fields(SolverSettings)}
    for key in sorted(set(raw) - known):
        logger.warning(f"Ignoring unknown setting '{key}' in {settings_path}")

    try:
        settings = SolverSettings(**{k: v for k, v in raw.items() if k in known}).validate()
    except TypeError as e:
        raise DomainError(f"Invalid settings in {settings_path}: {e}") from e

    logger.debug(f"Loaded settings from {settings_path}: {settings.to_dict()}")
    return settings
