"""
Maximum von Neumann entropy states of a particle coupled to an energy bath.

For an effective width lambda = V sqrt(E) the equilibrium populations maximise
S = -sum p_n ln p_n subject to

    sum p_n = 1    and    sum c(n) p_n = lambda^2,

which gives p_n = alpha^c(n) / Z(alpha) with alpha fixed by the mean constraint
M(alpha) / Z(alpha) = lambda^2. The solver works with the decay rate
beta = -ln(alpha) throughout.
"""

import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, NamedTuple, Optional, Sequence

import numpy as np
from scipy.special import entr, softmax

from quantum_carnot_pkg.core.exceptions import (
    ConvergenceError,
    DomainError,
    InfeasibleConstraintError,
)
from quantum_carnot_pkg.core.series import (
    MAX_TERMS,
    log_partition_at_rate,
    mean_level_at_rate,
)
from quantum_carnot_pkg.core.spectrum import SpectrumKind, SpectrumModel

DEFAULT_TOL = 1e-10
MAX_BISECTIONS = 200
PROBABILITY_FLOOR = 1e-300

# Tail bound below double resolution, so the mean is smooth in the rate.
SOLVER_SERIES_REL_TOL = 1e-17
# lambda^2 this close below c(n_min) is round-off from V * sqrt(E).
BOUNDARY_SNAP_RTOL = 1e-12

_MAX_BRACKET_STEPS = 1100


@dataclass(frozen=True)
class MaxEntState:
    """
    Equilibrium diagonal density matrix at one effective width.

    Attributes:
        model: Spectrum model
        lambda_eff: Effective width V * sqrt(E)
        alpha: Base of the distribution, 0 at the ground-state boundary
        log_alpha: ln(alpha) kept at full precision (-inf at the boundary)
        N: Number of stored levels (p_n above the probability floor)
        p: Populations for levels n_min .. n_min + N - 1
        Z: Partition sum at alpha (0 at the boundary)
        S: von Neumann entropy in nats
        T: Bath temperature in natural units at unit energy
    """

    model: SpectrumModel
    lambda_eff: float
    alpha: float
    log_alpha: float
    N: int
    p: np.ndarray = field(repr=False, compare=False)
    Z: float
    S: float
    T: float

    @property
    def at_boundary(self) -> bool:
        return self.alpha == 0.0

    @property
    def lambda_sq(self) -> float:
        return self.lambda_eff * self.lambda_eff

    @property
    def levels(self) -> np.ndarray:
        return self.model.levels(self.N)

    @property
    def coefficients(self) -> np.ndarray:
        return self.model.coefficients(self.levels)

    @property
    def normalization_residual(self) -> float:
        return abs(math.fsum(self.p) - 1.0)

    @property
    def constraint_residual(self) -> float:
        return abs(math.fsum(self.coefficients * self.p) - self.lambda_sq)

    def shannon_entropy(self) -> float:
        """-sum p_n ln p_n over the stored levels."""
        return math.fsum(entr(self.p))

    def entropy_from_level(self, level: int) -> float:
        """
        Entropy from a single population, (c(l) - lambda^2) ln(alpha) - ln(p_l).

        The value does not depend on the chosen level.

        Raises:
            DomainError: at the boundary, or if the level is not stored
        """
        if self.at_boundary:
            raise DomainError("Single-level entropy is undefined at the pure-state boundary")
        index = level - self.model.n_min
        if not 0 <= index < self.N:
            raise DomainError(f"Level {level} is not among the {self.N} stored levels")
        c_l = self.model.coefficient(level)
        return (c_l - self.lambda_sq) * self.log_alpha - math.log(self.p[index])

    def mean_energy(self, V: float) -> float:
        """sum p_n E_n(V)."""
        if not V > 0:
            raise DomainError(f"Width must be positive, got V={V}")
        return math.fsum(self.coefficients * self.p) / (V * V)

    def mean_force(self, V: float) -> float:
        """Pressure P = sum p_n f_n(V) with f_n = 2 c(n) / V^3."""
        if not V > 0:
            raise DomainError(f"Width must be positive, got V={V}")
        return math.fsum(2.0 * self.coefficients / (V * V * V) * self.p)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model.name,
            "lambda": self.lambda_eff,
            "alpha": self.alpha,
            "log_alpha": self.log_alpha,
            "S": self.S,
            "T": self.T,
            "N": self.N,
            "Z": self.Z,
            "normalization_residual": self.normalization_residual,
            "constraint_residual": self.constraint_residual,
            "at_boundary": self.at_boundary,
        }


class EntropySlope(NamedTuple):
    """dS/dlambda, flagged when evaluated at the pure-state boundary."""

    value: float
    at_boundary: bool

    def __float__(self) -> float:
        return self.value


class EntropyHeatRatio(NamedTuple):
    """
    Entropy change against absorbed energy per bath energy along an isoenergetic expansion.

    Attributes:
        integrated: [S(lambda) - S(lambda_min)] / (2 ln(lambda / lambda_min))
        differential: dS / d(Q/E) = -lambda^2 ln(alpha)
    """

    integrated: float
    differential: float


def temperature_from_alpha(alpha: float, lambda_eff: float) -> float:
    """
    T = -1 / (lambda^2 ln alpha); the alpha -> 0 limit is T = 0.

    Raises:
        DomainError: alpha outside [0, 1) or lambda_eff <= 0
    """
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"alpha must lie in [0, 1), got {alpha}")
    if not lambda_eff > 0:
        raise DomainError(f"lambda_eff must be positive, got {lambda_eff}")
    if alpha == 0.0:
        return 0.0
    return -1.0 / (lambda_eff * lambda_eff * math.log(alpha))


def _log_alpha_from_populations(model: SpectrumModel, p_k: float, p_l: float, k: int, l: int) -> float:
    if k == l:
        raise DomainError("Two distinct levels are needed")
    if not (p_k > 0 and p_l > 0):
        raise DomainError(f"Populations must be positive, got p_k={p_k}, p_l={p_l}")
    return (math.log(p_k) - math.log(p_l)) / (model.coefficient(k) - model.coefficient(l))


def alpha_from_populations(model: SpectrumModel, p_k: float, p_l: float, k: int, l: int) -> float:
    """
    alpha = (p_k / p_l)^(1 / (c(k) - c(l))) from any two populations.

    Raises:
        DomainError: if k == l or a population is not positive
    """
    return math.exp(_log_alpha_from_populations(model, p_k, p_l, k, l))


def temperature_from_populations(model: SpectrumModel, p_k: float, p_l: float,
                                 k: int, l: int, lambda_eff: float) -> float:
    """Bath temperature read off two diagonal elements of the density matrix."""
    if not lambda_eff > 0:
        raise DomainError(f"lambda_eff must be positive, got {lambda_eff}")
    log_alpha = _log_alpha_from_populations(model, p_k, p_l, k, l)
    return -1.0 / (lambda_eff * lambda_eff * log_alpha)


class MaxEntSolver:
    """
    Solves the isoenergetic maximum-entropy problem for a spectrum model.
    """

    def __init__(self, tol: float = DEFAULT_TOL, max_bisections: int = MAX_BISECTIONS,
                 probability_floor: float = PROBABILITY_FLOOR, max_terms: int = MAX_TERMS,
                 closed_form: bool = True, logger: Optional[logging.Logger] = None):
        """
        Initialize the solver.

        Args:
            tol: Absolute tolerance on |M/Z - lambda^2|
            max_bisections: Cap on bisection steps
            probability_floor: Populations below this are not stored
            max_terms: Cap on series terms and stored levels
            closed_form: Use the harmonic closed forms; False forces numeric roots
            logger: Logger instance
        """
        if not tol > 0:
            raise DomainError(f"tol must be positive, got {tol}")
        self.tol = tol
        self.max_bisections = max_bisections
        self.probability_floor = probability_floor
        self.max_terms = max_terms
        self.closed_form = closed_form
        self.logger = logger or logging.getLogger(__name__)

    @classmethod
    def from_settings(cls, settings, logger: Optional[logging.Logger] = None) -> "MaxEntSolver":
        return cls(tol=settings.tol, max_bisections=settings.max_bisections,
                   probability_floor=settings.probability_floor,
                   max_terms=settings.max_terms, logger=logger)

    def _target(self, model: SpectrumModel, lambda_eff: float) -> float:
        """lambda^2, snapped onto c(n_min) when below it only by round-off."""
        if not (lambda_eff > 0 and math.isfinite(lambda_eff)):
            raise DomainError(f"lambda_eff must be positive and finite, got {lambda_eff}")
        target = lambda_eff * lambda_eff
        ground = model.ground_coefficient
        if target < ground:
            if target >= ground * (1.0 - BOUNDARY_SNAP_RTOL):
                return ground
            raise InfeasibleConstraintError(
                f"lambda^2={target:.17g} is below the ground coefficient c({model.n_min})={ground} "
                f"for {model.name}; the energy cannot be less than the ground level")
        return target

    def _mean(self, model: SpectrumModel, rate: float) -> float:
        return mean_level_at_rate(model, rate, SOLVER_SERIES_REL_TOL,
                                  self.closed_form, self.max_terms)

    def _bracket(self, model: SpectrumModel, target: float):
        """Rates (lo, hi) with mean(lo) >= target >= mean(hi); the mean falls with the rate."""
        rate = 1.0
        if self._mean(model, rate) > target:
            lo = rate
            for _ in range(_MAX_BRACKET_STEPS):
                rate *= 2.0
                if self._mean(model, rate) <= target:
                    return lo, rate
                lo = rate
        else:
            hi = rate
            for _ in range(_MAX_BRACKET_STEPS):
                rate *= 0.5
                if self._mean(model, rate) >= target:
                    return rate, hi
                hi = rate
        raise ConvergenceError(f"Could not bracket lambda^2={target} for {model.name}",
                               diagnostics={"target": target, "last_rate": rate})

    def solve_rate(self, model: SpectrumModel, lambda_eff: float) -> float:
        """
        Decay rate beta = -ln(alpha) of the equilibrium state; inf at the boundary.

        Raises:
            DomainError: lambda_eff not positive and finite
            InfeasibleConstraintError: lambda^2 < c(n_min)
            ConvergenceError: bisection did not meet tol
        """
        target = self._target(model, lambda_eff)
        if target == model.ground_coefficient:
            return math.inf

        if self.closed_form and model.kind is SpectrumKind.HARMONIC:
            # Geometric mean inversion: alpha = (m - 1/2) / (m + 1/2).
            return math.log1p(1.0 / (target - 0.5))

        lo, hi = self._bracket(model, target)
        iterations = 0
        for iterations in range(1, self.max_bisections + 1):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            value = self._mean(model, mid)
            if value == target:
                lo = hi = mid
                break
            if value > target:
                lo = mid
            else:
                hi = mid

        residual_lo = abs(self._mean(model, lo) - target)
        residual_hi = abs(self._mean(model, hi) - target)
        rate, residual = (lo, residual_lo) if residual_lo <= residual_hi else (hi, residual_hi)

        if residual > self.tol:
            raise ConvergenceError(
                f"Bisection for lambda={lambda_eff} stopped with residual {residual:.3e} > tol={self.tol:g}",
                diagnostics={
                    "lambda_eff": lambda_eff,
                    "target": target,
                    "rate_lo": lo,
                    "rate_hi": hi,
                    "residual": residual,
                    "iterations": iterations,
                })

        self.logger.debug(f"{model.name} lambda={lambda_eff:.12g}: -ln(alpha)={rate:.17g} "
                          f"after {iterations} bisections, residual {residual:.3e}")
        return rate

    def solve_alpha(self, model: SpectrumModel, lambda_eff: float) -> float:
        """
        alpha in [0, 1) with |M(alpha)/Z(alpha) - lambda^2| <= tol; exactly 0 at the boundary.

        Raises:
            InfeasibleConstraintError: lambda^2 < c(n_min)
            ConvergenceError: bisection did not meet tol
        """
        return math.exp(-self.solve_rate(model, lambda_eff))

    def _temperature(self, lambda_sq: float, log_alpha: float) -> float:
        if log_alpha == -math.inf:
            return 0.0
        return -1.0 / (lambda_sq * log_alpha)

    def equilibrium_state(self, model: SpectrumModel, lambda_eff: float) -> MaxEntState:
        """
        The maximum-entropy state p_n = alpha^c(n) / Z at lambda_eff.

        Raises:
            InfeasibleConstraintError: lambda^2 < c(n_min)
            ConvergenceError: bisection did not meet tol
        """
        rate = self.solve_rate(model, lambda_eff)
        if rate == math.inf:
            p = np.ones(1)
            p.flags.writeable = False
            return MaxEntState(model=model, lambda_eff=lambda_eff, alpha=0.0,
                               log_alpha=-math.inf, N=1, p=p, Z=0.0, S=0.0, T=0.0)

        target = self._target(model, lambda_eff)
        log_z = log_partition_at_rate(model, rate, SOLVER_SERIES_REL_TOL,
                                      self.closed_form, self.max_terms)

        count = model.levels_below((-math.log(self.probability_floor) - log_z) / rate)
        count = max(count, 1)
        if count > self.max_terms:
            self.logger.warning(f"Storing only {self.max_terms} of {count} levels above the "
                                f"probability floor at lambda={lambda_eff}")
            count = self.max_terms

        c = model.coefficients(model.levels(count))
        p = np.exp(-rate * c - log_z)
        p.flags.writeable = False

        return MaxEntState(
            model=model,
            lambda_eff=lambda_eff,
            alpha=math.exp(-rate),
            log_alpha=-rate,
            N=count,
            p=p,
            Z=math.exp(log_z),
            S=log_z + target * rate,
            T=self._temperature(target, -rate),
        )

    def bath_temperature(self, state: MaxEntState) -> float:
        """T = -1 / (lambda^2 ln alpha), 0 at the boundary."""
        return self._temperature(state.lambda_sq, state.log_alpha)

    def entropy_slope(self, model: SpectrumModel, lambda_eff: float) -> EntropySlope:
        """
        dS/dlambda = -2 lambda ln(alpha) at the solved alpha.

        At the boundary the slope diverges; the largest finite float is returned
        with ``at_boundary`` set.
        """
        rate = self.solve_rate(model, lambda_eff)
        if rate == math.inf:
            return EntropySlope(sys.float_info.max, True)
        return EntropySlope(2.0 * lambda_eff * rate, False)

    def entropy_heat_ratio(self, model: SpectrumModel, lambda_eff: float) -> EntropyHeatRatio:
        """
        Compare the entropy gained on an isoenergetic expansion with Q/E = 2 ln lambda.

        Raises:
            DomainError: at the boundary, where both ratios are 0/0
        """
        lambda_min = math.sqrt(model.ground_coefficient)
        state = self.equilibrium_state(model, lambda_eff)
        if state.at_boundary:
            raise DomainError("The entropy/heat ratio is undefined at the boundary")
        integrated = state.S / (2.0 * math.log(lambda_eff / lambda_min))
        return EntropyHeatRatio(integrated=integrated, differential=-state.lambda_sq * state.log_alpha)


def truncated_equilibrium(coefficients: Sequence[float], target: float,
                          max_bisections: int = MAX_BISECTIONS) -> np.ndarray:
    """
    Maximum-entropy populations on a finite level set with mean coefficient ``target``.

    On a finite set alpha may exceed 1 (targets above the uniform mean), so the
    rate -ln(alpha) ranges over the whole real line. The end points of the
    feasible range give the pure bottom or top state.

    Args:
        coefficients: Strictly increasing level coefficients
        target: Required mean coefficient

    Returns:
        Probability vector aligned with ``coefficients``

    Raises:
        InfeasibleConstraintError: target outside [c_first, c_last]
        DomainError: fewer than two or non-increasing coefficients
    """
    c = np.asarray(coefficients, dtype=float)
    if c.size < 2 or np.any(np.diff(c) <= 0):
        raise DomainError("Need at least two strictly increasing coefficients")
    if not c[0] <= target <= c[-1]:
        raise InfeasibleConstraintError(f"target {target} outside [{c[0]}, {c[-1]}]")

    p = np.zeros_like(c)
    if target == c[0]:
        p[0] = 1.0
        return p
    if target == c[-1]:
        p[-1] = 1.0
        return p

    def mean(rate: float) -> float:
        return float(np.dot(c, softmax(-rate * c)))

    lo, hi = -1.0, 1.0
    while mean(lo) < target:
        lo *= 2.0
    while mean(hi) > target:
        hi *= 2.0

    for _ in range(max_bisections):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if mean(mid) > target:
            lo = mid
        else:
            hi = mid

    rate = lo if abs(mean(lo) - target) <= abs(mean(hi) - target) else hi
    return softmax(-rate * c)


_DEFAULT_SOLVER = MaxEntSolver()


def _solver_for(tol: float) -> MaxEntSolver:
    return _DEFAULT_SOLVER if tol == DEFAULT_TOL else MaxEntSolver(tol=tol)


def solve_alpha(model: SpectrumModel, lambda_eff: float, tol: float = DEFAULT_TOL) -> float:
    """Module-level shortcut for MaxEntSolver.solve_alpha."""
    return _solver_for(tol).solve_alpha(model, lambda_eff)


def equilibrium_state(model: SpectrumModel, lambda_eff: float, tol: float = DEFAULT_TOL) -> MaxEntState:
    """Module-level shortcut for MaxEntSolver.equilibrium_state."""
    return _solver_for(tol).equilibrium_state(model, lambda_eff)


def bath_temperature(state: MaxEntState) -> float:
    """T = -1 / (lambda^2 ln alpha) of a solved state; 0 at the boundary."""
    if state.at_boundary:
        return 0.0
    return -1.0 / (state.lambda_sq * state.log_alpha)


def entropy_slope(model: SpectrumModel, lambda_eff: float, tol: float = DEFAULT_TOL) -> EntropySlope:
    """Module-level shortcut for MaxEntSolver.entropy_slope."""
    return _solver_for(tol).entropy_slope(model, lambda_eff)
