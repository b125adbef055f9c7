import math

import pytest

from quantum_carnot_pkg.core.maxent import MaxEntSolver
from quantum_carnot_pkg.core.spectrum import HARMONIC, SQUARE_WELL


class WrongSignSolver(MaxEntSolver):
    """Reports T = +1 / (lambda^2 ln alpha), the sign error a careless port makes."""

    def _temperature(self, lambda_sq: float, log_alpha: float) -> float:
        if log_alpha == -math.inf:
            return 0.0
        return 1.0 / (lambda_sq * log_alpha)


@pytest.fixture
def square_well():
    return SQUARE_WELL


@pytest.fixture
def harmonic():
    return HARMONIC


@pytest.fixture(scope="session")
def solver():
    return MaxEntSolver()


@pytest.fixture
def tampered_solver():
    return WrongSignSolver()
