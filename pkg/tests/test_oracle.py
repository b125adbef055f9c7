import math

import numpy as np
import pytest

from quantum_carnot_pkg.core.exceptions import DomainError, InfeasibleConstraintError
from quantum_carnot_pkg.core.maxent import truncated_equilibrium
from quantum_carnot_pkg.core.oracle import (
    MAX_ORACLE_LEVELS,
    TruncatedProblem,
    brute_force_maxent,
    finite_difference_entropy_slope,
    finite_difference_temperature,
    stationary_family,
)
from quantum_carnot_pkg.core.spectrum import HARMONIC, SQUARE_WELL

CUBE = TruncatedProblem((1.0, 4.0, 9.0), 4.0)


def test_pure_states_at_range_ends():
    bottom = brute_force_maxent(TruncatedProblem((1.0, 4.0, 9.0), 1.0))
    top = brute_force_maxent(TruncatedProblem((1.0, 4.0, 9.0), 9.0))
    np.testing.assert_allclose(bottom, [1.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(top, [0.0, 0.0, 1.0], atol=1e-12)


def test_three_levels_interior():
    brute = brute_force_maxent(CUBE)
    reference = truncated_equilibrium(CUBE.coefficients, CUBE.target)
    assert np.max(np.abs(brute - reference)) <= 1e-6
    assert math.fsum(brute) == pytest.approx(1.0, abs=1e-12)
    assert math.fsum(np.array(CUBE.coefficients) * brute) == pytest.approx(4.0, abs=1e-10)


@pytest.mark.parametrize("N", [4, 5])
@pytest.mark.parametrize("fraction", [0.2, 0.5])
def test_agrees_with_exponential_family(N, fraction):
    problem = TruncatedProblem.from_model(SQUARE_WELL, N, 1.0 + fraction * (N * N - 1.0))
    brute = brute_force_maxent(problem)
    reference = truncated_equilibrium(problem.coefficients, problem.target)
    assert np.max(np.abs(brute - reference)) <= 1e-6


@pytest.mark.slow
def test_agrees_at_largest_size():
    problem = TruncatedProblem.from_model(SQUARE_WELL, MAX_ORACLE_LEVELS, 8.0)
    brute = brute_force_maxent(problem)
    reference = truncated_equilibrium(problem.coefficients, problem.target)
    assert np.max(np.abs(brute - reference)) <= 1e-6


def test_harmonic_truncation():
    problem = TruncatedProblem.from_model(HARMONIC, 4, 1.25)
    assert problem.coefficients == (0.5, 1.5, 2.5, 3.5)
    brute = brute_force_maxent(problem)
    reference = truncated_equilibrium(problem.coefficients, problem.target)
    assert np.max(np.abs(brute - reference)) <= 1e-6


def test_elimination_pair_does_not_matter():
    problem = TruncatedProblem.from_model(SQUARE_WELL, 4, 5.0)
    first = brute_force_maxent(problem, pair=(0, 1))
    other = brute_force_maxent(problem, pair=(3, 1))
    assert np.max(np.abs(first - other)) <= 1e-6


def test_stationary_family_reproduces_equilibrium():
    c = SQUARE_WELL.coefficients(SQUARE_WELL.levels(5))
    p = truncated_equilibrium(c, 6.0)
    for k, l in ((0, 1), (2, 0), (4, 3)):
        family = stationary_family(p[k], p[l], c[k], c[l], c)
        np.testing.assert_allclose(family, p, rtol=1e-9)


def test_stationary_family_rejects_bad_references():
    with pytest.raises(DomainError):
        stationary_family(0.3, 0.2, 4.0, 4.0, [1.0, 4.0, 9.0])
    with pytest.raises(DomainError):
        stationary_family(0.0, 0.2, 1.0, 4.0, [1.0, 4.0, 9.0])


@pytest.mark.parametrize("problem, error", [
    (TruncatedProblem((1.0, 4.0), 2.0), DomainError),
    (TruncatedProblem((1.0, 9.0, 4.0), 2.0), DomainError),
    (TruncatedProblem((1.0, 4.0, 9.0), 0.5), InfeasibleConstraintError),
    (TruncatedProblem((1.0, 4.0, 9.0), 9.5), InfeasibleConstraintError),
    (TruncatedProblem.from_model(SQUARE_WELL, 7, 10.0), DomainError),
])
def test_rejects_bad_problems(problem, error):
    with pytest.raises(error):
        brute_force_maxent(problem)


def test_rejects_bad_arguments():
    with pytest.raises(DomainError):
        brute_force_maxent(CUBE, pair=(1, 1))
    with pytest.raises(DomainError):
        brute_force_maxent(CUBE, pair=(0, 3))
    with pytest.raises(DomainError):
        brute_force_maxent(CUBE, grid_tol=0.0)


@pytest.mark.parametrize("lam", [2.0, 5.0, 10.0])
def test_finite_difference_temperature(solver, lam):
    state = solver.equilibrium_state(SQUARE_WELL, lam)
    estimate = finite_difference_temperature(SQUARE_WELL, lam, 1e-4, solver=solver)
    assert estimate == pytest.approx(1.0 / state.T, rel=1e-4)


def test_finite_difference_temperature_scales_with_energy(solver):
    unit = finite_difference_temperature(SQUARE_WELL, 3.0, 1e-4, solver=solver)
    scaled = finite_difference_temperature(SQUARE_WELL, 3.0, 1e-4, energy=2.5, solver=solver)
    assert scaled == pytest.approx(unit / 2.5, rel=1e-12)


def test_second_order_convergence(solver):
    inverse_t = 1.0 / solver.equilibrium_state(SQUARE_WELL, 2.0).T
    coarse = abs(finite_difference_temperature(SQUARE_WELL, 2.0, 1e-2, solver=solver) - inverse_t)
    fine = abs(finite_difference_temperature(SQUARE_WELL, 2.0, 5e-3, solver=solver) - inverse_t)
    assert coarse / fine == pytest.approx(4.0, abs=0.5)


def test_harmonic_finite_difference_temperature(solver):
    # alpha = 1/2 at E V^2 = 3/2.
    estimate = finite_difference_temperature(HARMONIC, math.sqrt(1.5), 1e-4, solver=solver)
    assert estimate == pytest.approx(1.5 * math.log(2.0), rel=1e-4)


def test_finite_difference_entropy_slope(solver):
    slope = float(solver.entropy_slope(SQUARE_WELL, 4.0))
    assert finite_difference_entropy_slope(SQUARE_WELL, 4.0, 1e-4, solver=solver) == pytest.approx(slope, rel=1e-6)


@pytest.mark.parametrize("lam, h", [(2.0, 0.0), (2.0, -1e-3), (1.05, 0.1), (0.9, 0.01)])
def test_finite_difference_step_domain(lam, h):
    with pytest.raises(DomainError):
        finite_difference_temperature(SQUARE_WELL, lam, h)
    with pytest.raises(DomainError):
        finite_difference_entropy_slope(SQUARE_WELL, lam, h)
