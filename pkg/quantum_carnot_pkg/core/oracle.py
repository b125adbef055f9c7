"""
Independent verifiers for the maximum-entropy solver.

brute_force_maxent searches the feasible set directly: two populations are
eliminated through the normalization and energy constraints, and the entropy
is maximised over the remaining free coordinates by nested one-dimensional
refinement. No Lagrange multipliers and no exponential-family ansatz are used,
so agreement with the solver is a genuine check.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import entr

from quantum_carnot_pkg.core.exceptions import DomainError, InfeasibleConstraintError
from quantum_carnot_pkg.core.maxent import MaxEntSolver
from quantum_carnot_pkg.core.spectrum import SpectrumModel

logger = logging.getLogger(__name__)

MIN_ORACLE_LEVELS = 3
MAX_ORACLE_LEVELS = 6
DEFAULT_GRID_TOL = 1e-8

_SCAN_POINTS = 257


@dataclass(frozen=True)
class TruncatedProblem:
    """
    Entropy maximisation on the first N levels.

    Attributes:
        coefficients: c(n_min) .. c(n_min + N - 1)
        target: Required mean coefficient (lambda^2)
    """

    coefficients: Tuple[float, ...]
    target: float

    @classmethod
    def from_model(cls, model: SpectrumModel, N: int, target: float) -> "TruncatedProblem":
        return cls(tuple(float(c) for c in model.coefficients(model.levels(N))), float(target))

    @property
    def N(self) -> int:
        return len(self.coefficients)

    def validate(self) -> "TruncatedProblem":
        """
        Raises:
            DomainError: fewer than three levels or coefficients not increasing
            InfeasibleConstraintError: target outside [c_first, c_last]
        """
        if self.N < MIN_ORACLE_LEVELS:
            raise DomainError(f"A truncated problem needs at least {MIN_ORACLE_LEVELS} levels, got {self.N}")
        if any(b <= a for a, b in zip(self.coefficients, self.coefficients[1:])):
            raise DomainError("Coefficients must be strictly increasing")
        if not self.coefficients[0] <= self.target <= self.coefficients[-1]:
            raise InfeasibleConstraintError(
                f"target {self.target} outside [{self.coefficients[0]}, {self.coefficients[-1]}]")
        return self


class _EliminatedSearch:
    """Entropy over the free coordinates once levels k and l are eliminated."""

    def __init__(self, problem: TruncatedProblem, pair: Tuple[int, int], grid_tol: float):
        self.c = np.asarray(problem.coefficients, dtype=float)
        self.target = problem.target
        self.k, self.l = pair
        self.free = [i for i in range(problem.N) if i not in pair]
        self.grid_tol = grid_tol

    def _interval(self, depth: int, fixed: Sequence[float]) -> Tuple[float, float]:
        """
        Feasible range of the free coordinate at ``depth`` given the outer ones.

        Whatever mass is left must be spread over the eliminated pair and the
        deeper free levels, which is possible exactly when its mean coefficient
        lies between their smallest and largest coefficient.
        """
        index = self.free[depth]
        mass = 1.0 - math.fsum(fixed)
        moment = self.target - math.fsum(self.c[i] * q for i, q in zip(self.free, fixed))
        rest = [self.k, self.l] + self.free[depth + 1:]
        c_min = float(min(self.c[rest]))
        c_max = float(max(self.c[rest]))
        c_f = float(self.c[index])

        lo, hi = 0.0, mass
        # Each constraint reads a + b q >= 0.
        for a, b in ((moment - c_min * mass, c_min - c_f), (c_max * mass - moment, c_f - c_max)):
            if b > 0:
                lo = max(lo, -a / b)
            elif b < 0:
                hi = min(hi, -a / b)
        if hi < lo:
            hi = lo
        return lo, hi

    def _pair(self, mass, moment):
        """Populations of the eliminated pair from the remaining mass and moment."""
        c_k, c_l = self.c[self.k], self.c[self.l]
        p_l = (moment - c_k * mass) / (c_l - c_k)
        return mass - p_l, p_l

    def _line_entropy(self, fixed: Sequence[float], q: np.ndarray) -> np.ndarray:
        last = self.free[-1]
        mass = 1.0 - math.fsum(fixed) - q
        moment = (self.target - math.fsum(self.c[i] * v for i, v in zip(self.free, fixed))
                  - self.c[last] * q)
        p_k, p_l = self._pair(mass, moment)
        outer = math.fsum(entr(np.asarray(fixed, dtype=float))) if fixed else 0.0
        return outer + entr(q) + entr(np.maximum(p_k, 0.0)) + entr(np.maximum(p_l, 0.0))

    def _scan(self, fixed: List[float], lo: float, hi: float) -> Tuple[float, List[float]]:
        """Grid scan of the innermost coordinate, refined around the best point."""
        a, b = lo, hi
        while True:
            q = np.linspace(a, b, _SCAN_POINTS)
            h = self._line_entropy(fixed, q)
            best = int(np.argmax(h))
            if b - a <= self.grid_tol:
                return float(h[best]), fixed + [float(q[best])]
            step = (b - a) / (_SCAN_POINTS - 1)
            a, b = max(lo, q[best] - step), min(hi, q[best] + step)

    def best(self, depth: int = 0, fixed: Optional[List[float]] = None) -> Tuple[float, List[float]]:
        """Maximum entropy and maximiser over free coordinates ``depth`` onwards."""
        fixed = fixed or []
        lo, hi = self._interval(depth, fixed)
        if depth == len(self.free) - 1:
            return self._scan(fixed, lo, hi)

        def value(q: float) -> Tuple[float, List[float]]:
            return self.best(depth + 1, fixed + [float(q)])

        if hi - lo <= self.grid_tol:
            return value(0.5 * (lo + hi))
        # The partial maximum of a concave function is concave in this coordinate.
        result = minimize_scalar(lambda q: -value(q)[0], bounds=(lo, hi), method="bounded",
                                 options={"xatol": self.grid_tol})
        candidates = [value(result.x), value(lo), value(hi)]
        return max(candidates, key=lambda candidate: candidate[0])

    def assemble(self, coords: Sequence[float]) -> np.ndarray:
        p = np.zeros_like(self.c)
        p[self.free] = coords
        mass = 1.0 - math.fsum(coords)
        moment = self.target - math.fsum(self.c[i] * q for i, q in zip(self.free, coords))
        p[self.k], p[self.l] = self._pair(mass, moment)
        return np.maximum(p, 0.0)


def brute_force_maxent(problem: TruncatedProblem, grid_tol: float = DEFAULT_GRID_TOL,
                       pair: Tuple[int, int] = (0, 1)) -> np.ndarray:
    """
    Maximise -sum p_n ln p_n over the feasible populations of a truncated problem.

    Args:
        problem: Levels and target, 3 <= N <= 6
        grid_tol: Width at which each one-dimensional refinement stops
        pair: Indices of the two populations eliminated through the constraints

    Returns:
        Maximising probability vector

    Raises:
        DomainError: bad problem shape, N above the oracle cap, or bad pair
        InfeasibleConstraintError: target outside the truncated range
    """
    problem.validate()
    if problem.N > MAX_ORACLE_LEVELS:
        raise DomainError(f"The brute-force oracle handles at most {MAX_ORACLE_LEVELS} levels")
    k, l = pair
    if k == l or not (0 <= k < problem.N and 0 <= l < problem.N):
        raise DomainError(f"Invalid elimination pair {pair} for {problem.N} levels")
    if not grid_tol > 0:
        raise DomainError(f"grid_tol must be positive, got {grid_tol}")

    search = _EliminatedSearch(problem, (k, l), grid_tol)
    entropy, coords = search.best()
    p = search.assemble(coords)
    logger.debug(f"Brute-force maxent N={problem.N} target={problem.target}: S={entropy:.12g}")
    return p


def stationary_family(p_k: float, p_l: float, c_k: float, c_l: float,
                      coefficients: Sequence[float]) -> np.ndarray:
    """
    Populations implied by stationarity of the entropy, given two of them:

        p_n = p_l (p_k / p_l)^((c(n) - c(l)) / (c(k) - c(l)))

    Raises:
        DomainError: if c_k == c_l or a population is not positive
    """
    if c_k == c_l:
        raise DomainError("The reference levels must differ")
    if not (p_k > 0 and p_l > 0):
        raise DomainError(f"Reference populations must be positive, got {p_k}, {p_l}")
    c = np.asarray(coefficients, dtype=float)
    exponent = (c - c_l) / (c_k - c_l)
    return p_l * np.exp(exponent * (math.log(p_k) - math.log(p_l)))


def _check_step(model: SpectrumModel, lambda_eff: float, h: float) -> None:
    if not h > 0:
        raise DomainError(f"Step h must be positive, got {h}")
    lower = lambda_eff - h
    if not (lower > 0 and lower * lower > model.ground_coefficient):
        raise DomainError(f"lambda - h = {lower} does not stay above the boundary of {model.name}")


def finite_difference_temperature(model: SpectrumModel, lambda_eff: float, h: float,
                                  energy: float = 1.0,
                                  solver: Optional[MaxEntSolver] = None) -> float:
    """
    1/T from the thermodynamic definition dS/dQ with centered differences.

    Q(lambda) = 2 E ln(lambda) on an isoenergetic stroke, so
    1/T ~ [S(lambda + h) - S(lambda - h)] / [2 E ln((lambda + h) / (lambda - h))].

    Raises:
        DomainError: if lambda - h reaches the boundary or h <= 0
    """
    _check_step(model, lambda_eff, h)
    solver = solver or MaxEntSolver()
    s_plus = solver.equilibrium_state(model, lambda_eff + h).S
    s_minus = solver.equilibrium_state(model, lambda_eff - h).S
    dq = 2.0 * energy * math.log((lambda_eff + h) / (lambda_eff - h))
    return (s_plus - s_minus) / dq


def finite_difference_entropy_slope(model: SpectrumModel, lambda_eff: float, h: float,
                                    solver: Optional[MaxEntSolver] = None) -> float:
    """Centered difference of S(lambda)."""
    _check_step(model, lambda_eff, h)
    solver = solver or MaxEntSolver()
    s_plus = solver.equilibrium_state(model, lambda_eff + h).S
    s_minus = solver.equilibrium_state(model, lambda_eff - h).S
    return (s_plus - s_minus) / (2.0 * h)
