"""
Verification suite for the maximum-entropy solver and the Carnot cycle.

Each check compares library output against an independent computation
(brute-force search, finite differences, closed forms, quadrature or exact
identities) and records the worst discrepancy against its tolerance.
"""

import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from quantum_carnot_pkg.core.cycle import (
    CarnotCycle,
    CycleSpec,
    Stroke,
    heat_isoenergetic,
    pressure_adiabatic,
    pressure_isoenergetic,
    work_by_quadrature,
)
from quantum_carnot_pkg.core.maxent import MaxEntSolver, truncated_equilibrium
from quantum_carnot_pkg.core.oracle import (
    TruncatedProblem,
    brute_force_maxent,
    finite_difference_entropy_slope,
    finite_difference_temperature,
    stationary_family,
)
from quantum_carnot_pkg.core.series import partition_sum, theta_asymptotic
from quantum_carnot_pkg.core.spectrum import HARMONIC, SQUARE_WELL

LEVELS = ("quick", "full")
DEFAULT_SEED = 20240607


@dataclass
class CheckResult:
    """Outcome of one named check."""

    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ""
    elapsed_time: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class VerificationReport:
    level: str
    checks: List[CheckResult] = field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "passed": self.passed,
            "failed_checks": self.failed_checks,
            "checks": [check.to_dict() for check in self.checks],
            "duration": self.duration,
        }


def _rel(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


class VerificationSuite:
    """
    Runs the named verification checks at a "quick" or "full" level.
    """

    def __init__(self, level: str = "quick", solver: Optional[MaxEntSolver] = None,
                 seed: int = DEFAULT_SEED, logger: Optional[logging.Logger] = None):
        """
        Initialize the suite.

        Args:
            level: "quick" (a few seconds) or "full"
            solver: Solver under test; a default one is created if None
            seed: Seed for the randomized identity checks
            logger: Logger instance
        """
        if level not in LEVELS:
            raise ValueError(f"Unknown verification level '{level}', expected one of {LEVELS}")
        self.level = level
        self.full = level == "full"
        self.logger = logger or logging.getLogger(__name__)
        self.solver = solver or MaxEntSolver(logger=self.logger)
        self.seed = seed

    @property
    def checks(self) -> Dict[str, Callable[[], CheckResult]]:
        return {
            "equation_of_state": self.check_equation_of_state,
            "constraint_solve": self.check_constraint_solve,
            "maxent_form": self.check_maxent_form,
            "entropy_from_level": self.check_entropy_from_level,
            "oracle_agreement": self.check_oracle_agreement,
            "stationarity_pair_independence": self.check_pair_independence,
            "finite_difference_temperature": self.check_finite_difference_temperature,
            "temperature_convergence_order": self.check_temperature_convergence,
            "entropy_slope": self.check_entropy_slope,
            "clausius_equality": self.check_clausius,
            "efficiency": self.check_efficiency,
            "cycle_closure": self.check_cycle_closure,
            "work_quadrature": self.check_work_quadrature,
            "theta_asymptotics": self.check_theta_asymptotics,
            "harmonic_closed_form": self.check_harmonic,
            "harmonic_equation_of_state": self.check_harmonic_equation_of_state,
            **({
                "large_lambda_slope": self.check_large_lambda_slope,
                "entropy_heat_ratio": self.check_entropy_heat_ratio,
                "temperature_increase": self.check_temperature_increase,
            } if self.full else {}),
        }

    def run(self, names: Optional[Sequence[str]] = None) -> VerificationReport:
        """
        Run the checks of this level, or only ``names`` when given.

        A check that raises is recorded as failed with the error as its detail.
        """
        available = self.checks
        selected = list(names) if names else list(available)
        unknown = [name for name in selected if name not in available]
        if unknown:
            raise ValueError(f"Unknown checks for level '{self.level}': {', '.join(unknown)}")

        report = VerificationReport(level=self.level)
        start = time.time()
        for name in selected:
            check_start = time.time()
            try:
                result = available[name]()
            except Exception as e:
                self.logger.error(f"Check {name} raised: {e}")
                result = CheckResult(name=name, passed=False, worst=math.nan,
                                     tolerance=math.nan, detail=f"{type(e).__name__}: {e}")
            result.elapsed_time = time.time() - check_start
            level = logging.INFO if result.passed else logging.ERROR
            self.logger.log(level, f"{name}: {'passed' if result.passed else 'FAILED'} "
                                   f"(worst {result.worst:.3e}, tolerance {result.tolerance:.1e})")
            report.checks.append(result)
        report.duration = time.time() - start
        return report

    def _result(self, name: str, worst: float, tolerance: float, detail: str = "") -> CheckResult:
        passed = math.isfinite(worst) and worst <= tolerance
        return CheckResult(name=name, passed=passed, worst=worst, tolerance=tolerance, detail=detail)

    def _random_specs(self, count: int) -> List[CycleSpec]:
        rng = np.random.default_rng(self.seed)
        specs = []
        for _ in range(count):
            v1 = rng.uniform(0.5, 2.0)
            v2 = v1 * rng.uniform(1.1, 3.0)
            v3 = v2 * rng.uniform(1.1, 3.0)
            e_h = SQUARE_WELL.ground_coefficient / (v1 * v1) * rng.uniform(1.0, 4.0)
            specs.append(CycleSpec(float(v1), float(v2), float(v3), float(e_h)))
        return specs

    # Identities

    def check_equation_of_state(self) -> CheckResult:
        rng = np.random.default_rng(self.seed)
        count = 1000 if self.full else 200
        worst = 0.0
        for E, V, V_start in rng.uniform(0.1, 10.0, size=(count, 3)):
            E, V, V_start = float(E), float(V), float(V_start)
            worst = max(worst,
                        _rel(pressure_isoenergetic(E, V) * V, 2.0 * E),
                        _rel(pressure_adiabatic(E, V_start, V) * V ** 3, 2.0 * V_start ** 2 * E))
        return self._result("equation_of_state", worst, 1e-14, f"{count} random (E, V) pairs")

    def check_clausius(self) -> CheckResult:
        specs = self._random_specs(100 if self.full else 25)
        worst = 0.0
        for spec in specs:
            q_h = heat_isoenergetic(spec.e_h, spec.v1, spec.v2)
            q_c = heat_isoenergetic(spec.e_c, spec.v3, spec.v4)
            worst = max(worst, abs(q_h / spec.e_h + q_c / spec.e_c))
        return self._result("clausius_equality", worst, 1e-12, f"{len(specs)} random cycles")

    def check_efficiency(self) -> CheckResult:
        worst = 0.0
        for spec in self._random_specs(100 if self.full else 25) + [CycleSpec(1.0, 2.0, 4.0)]:
            eta = 1.0 - spec.e_c / spec.e_h
            worst = max(worst, abs(eta - (1.0 - spec.v2 ** 2 / spec.v3 ** 2)))
        worst = max(worst, abs((1.0 - CycleSpec(1.0, 2.0, 4.0).e_c) - 0.75))
        return self._result("efficiency", worst, 1e-14, "eta = 1 - V2^2/V3^2; (1, 2, 4) gives 0.75")

    # Maximum-entropy solver

    def check_constraint_solve(self) -> CheckResult:
        lambdas = (1.5, 2.0, 5.0, 10.0, 20.0, 50.0) if self.full else (1.5, 2.0, 5.0, 10.0)
        worst = 0.0
        for lam in lambdas:
            state = self.solver.equilibrium_state(SQUARE_WELL, lam)
            worst = max(worst, state.constraint_residual, state.normalization_residual)
        return self._result("constraint_solve", worst, 1e-10, f"lambda in {lambdas}")

    def check_maxent_form(self) -> CheckResult:
        worst = 0.0
        for lam in (2.0, 5.0, 10.0):
            state = self.solver.equilibrium_state(SQUARE_WELL, lam)
            # p_n alpha^(-c(n)) is the same for every stored level.
            scaled = state.p * np.exp(-state.log_alpha * state.coefficients)
            worst = max(worst, float(np.max(np.abs(scaled / scaled[0] - 1.0))))
        return self._result("maxent_form", worst, 1e-12, "p_n alpha^-c(n) across stored levels")

    def check_entropy_from_level(self) -> CheckResult:
        worst = 0.0
        for lam in (2.0, 5.0, 10.0):
            state = self.solver.equilibrium_state(SQUARE_WELL, lam)
            reference = state.shannon_entropy()
            for level in (1, 2, 3):
                worst = max(worst, abs(state.entropy_from_level(level) - reference))
        return self._result("entropy_from_level", worst, 1e-10,
                            "single-population entropy against -sum p ln p")

    def check_harmonic(self) -> CheckResult:
        numeric = MaxEntSolver(tol=self.solver.tol, closed_form=False, logger=self.logger)
        worst = 0.0
        for m in (0.75, 1.5, 3.0, 10.0):
            lam = math.sqrt(m)
            closed = (m - 0.5) / (m + 0.5)
            worst = max(worst, abs(numeric.solve_alpha(HARMONIC, lam) - closed),
                        abs(self.solver.solve_alpha(HARMONIC, lam) - closed))
        return self._result("harmonic_closed_form", worst, 1e-10,
                            "closed-form alpha against the numeric root")

    def check_harmonic_equation_of_state(self) -> CheckResult:
        worst = 0.0
        for m in (0.75, 1.5, 3.0, 10.0):
            state = self.solver.equilibrium_state(HARMONIC, math.sqrt(m))
            for V in (0.5, 1.0, 3.0):
                worst = max(worst, _rel(state.mean_force(V) * V, 2.0 * state.mean_energy(V)))
        return self._result("harmonic_equation_of_state", worst, 1e-13, "PV = 2E from the populations")

    # Oracles

    def _oracle_problems(self) -> List[TruncatedProblem]:
        top = 6 if self.full else 4
        fractions = (0.1, 0.3, 0.5, 0.8) if self.full else (0.3, 0.6)
        problems = []
        for N in range(3, top + 1):
            c = SQUARE_WELL.coefficients(SQUARE_WELL.levels(N))
            for fraction in fractions:
                target = float(c[0] + fraction * (c[-1] - c[0]))
                problems.append(TruncatedProblem.from_model(SQUARE_WELL, N, target))
        return problems

    def check_oracle_agreement(self) -> CheckResult:
        worst = 0.0
        problems = self._oracle_problems()
        for problem in problems:
            brute = brute_force_maxent(problem)
            reference = truncated_equilibrium(problem.coefficients, problem.target)
            # Anchor the family on the two most populated levels.
            l, k = (int(i) for i in np.argsort(brute)[-2:])
            c = problem.coefficients
            family = stationary_family(brute[k], brute[l], c[k], c[l], c)
            worst = max(worst, float(np.max(np.abs(brute - reference))),
                        float(np.max(np.abs(family - brute))))
        return self._result("oracle_agreement", worst, 1e-6,
                            f"{len(problems)} truncated problems, N up to {problems[-1].N}")

    def check_pair_independence(self) -> CheckResult:
        worst = 0.0
        for problem in self._oracle_problems():
            p = truncated_equilibrium(problem.coefficients, problem.target)
            c = problem.coefficients
            base = stationary_family(p[1], p[0], c[1], c[0], c)
            for k, l in ((0, 2), (2, 1), (problem.N - 1, 0)):
                other = stationary_family(p[k], p[l], c[k], c[l], c)
                worst = max(worst, float(np.max(np.abs(other - base))))
        return self._result("stationarity_pair_independence", worst, 1e-8)

    def check_finite_difference_temperature(self) -> CheckResult:
        lambdas = (2.0, 5.0, 10.0) if self.full else (2.0, 5.0)
        worst = 0.0
        for lam in lambdas:
            state = self.solver.equilibrium_state(SQUARE_WELL, lam)
            inverse_t = 1.0 / self.solver.bath_temperature(state)
            estimate = finite_difference_temperature(SQUARE_WELL, lam, 1e-4, solver=self.solver)
            worst = max(worst, _rel(estimate, inverse_t))

        # Harmonic particle at E V^2 = 3/2 has alpha = 1/2.
        lam = math.sqrt(1.5)
        inverse_t = -1.5 * math.log(0.5)
        estimate = finite_difference_temperature(HARMONIC, lam, 1e-4, solver=self.solver)
        state = self.solver.equilibrium_state(HARMONIC, lam)
        worst = max(worst, _rel(estimate, inverse_t),
                    _rel(1.0 / self.solver.bath_temperature(state), inverse_t))
        return self._result("finite_difference_temperature", worst, 1e-4,
                            f"h=1e-4 at lambda in {lambdas} and harmonic E V^2 = 1.5")

    def check_temperature_convergence(self) -> CheckResult:
        """Halving h should cut the centered-difference error about fourfold."""
        lam, h = 2.0, 1e-2
        state = self.solver.equilibrium_state(SQUARE_WELL, lam)
        inverse_t = 1.0 / self.solver.bath_temperature(state)
        coarse = abs(finite_difference_temperature(SQUARE_WELL, lam, h, solver=self.solver) - inverse_t)
        fine = abs(finite_difference_temperature(SQUARE_WELL, lam, h / 2, solver=self.solver) - inverse_t)
        ratio = coarse / fine if fine > 0 else math.inf
        return self._result("temperature_convergence_order", abs(ratio - 4.0), 0.5,
                            f"error ratio {ratio:.4f} for h={h:g} -> {h / 2:g}")

    def check_entropy_slope(self) -> CheckResult:
        worst = 0.0
        for lam in (2.0, 5.0, 10.0):
            slope = float(self.solver.entropy_slope(SQUARE_WELL, lam))
            estimate = finite_difference_entropy_slope(SQUARE_WELL, lam, 1e-4, solver=self.solver)
            worst = max(worst, _rel(estimate, slope))
        return self._result("entropy_slope", worst, 1e-6, "-2 lambda ln(alpha) against dS/dlambda")

    # Cycle

    def _cycles(self) -> List[CycleSpec]:
        specs = [CycleSpec(1.0, 2.0, 4.0), CycleSpec(1.0, 1.5, 3.0, e_h=2.0)]
        if self.full:
            specs += self._random_specs(5)
        return specs

    def check_cycle_closure(self) -> CheckResult:
        engine = CarnotCycle(solver=self.solver, logger=self.logger)
        samples_per_stroke = 40 if self.full else 15
        worst = 0.0
        problems = []
        for spec in self._cycles():
            report, samples = engine.run(spec, samples_per_stroke)
            worst = max(worst, report.entropy_closure)
            for stroke in Stroke:
                S = np.array([s.S for s in samples if s.stroke == stroke.value])
                if stroke in (Stroke.ADIABATIC_EXPAND, Stroke.ADIABATIC_COMPRESS):
                    worst = max(worst, float(np.max(np.abs(S - S[0]))))
                    continue
                steps = np.diff(S)
                monotone = np.all(steps > 0) if stroke is Stroke.ISO_HOT else np.all(steps < 0)
                if not monotone:
                    problems.append(f"{stroke.value} entropy not monotone for {spec}")
            if report.eta != 1.0 - report.e_c / report.e_h or not report.reversible:
                problems.append(f"inconsistent report for {spec}")
        if problems:
            worst = math.inf
        return self._result("cycle_closure", worst, 1e-10, "; ".join(problems))

    def check_work_quadrature(self) -> CheckResult:
        worst = 0.0
        for spec in self._cycles():
            q_h = heat_isoenergetic(spec.e_h, spec.v1, spec.v2)
            q_c = heat_isoenergetic(spec.e_c, spec.v3, spec.v4)
            worst = max(worst, _rel(work_by_quadrature(spec), q_h + q_c))
        expected = 2.0 * (1.0 - 0.25) * math.log(2.0)
        worst = max(worst, _rel(work_by_quadrature(CycleSpec(1.0, 2.0, 4.0)), expected))
        return self._result("work_quadrature", worst, 1e-8, "closed P dV integral against Q_H + Q_C")

    # Asymptotics

    def check_theta_asymptotics(self) -> CheckResult:
        eps = 1e-4
        direct = partition_sum(SQUARE_WELL, 1.0 - eps).value
        return self._result("theta_asymptotics", _rel(direct, theta_asymptotic(eps)), 1e-4,
                            f"direct sum {direct:.12g} at eps={eps:g}")

    def check_large_lambda_slope(self) -> CheckResult:
        lam = 50.0
        slope = float(self.solver.entropy_slope(SQUARE_WELL, lam))
        return self._result("large_lambda_slope", abs(slope * lam - 1.0), 0.01,
                            f"lambda dS/dlambda = {slope * lam:.6f} at lambda={lam:g}")

    def check_entropy_heat_ratio(self) -> CheckResult:
        """Differential ratio near 1/2 at large lambda; the integrated one falls toward it."""
        ratios = [self.solver.entropy_heat_ratio(SQUARE_WELL, lam) for lam in (10.0, 20.0, 50.0)]
        integrated = [r.integrated for r in ratios]
        worst = _rel(ratios[-1].differential, 0.5)
        if not all(a > b > 0.5 for a, b in zip(integrated, integrated[1:])):
            worst = math.inf
        return self._result("entropy_heat_ratio", worst, 0.02,
                            f"integrated ratios {', '.join(f'{v:.6f}' for v in integrated)}")

    def check_temperature_increase(self) -> CheckResult:
        lambdas = np.linspace(1.5, 50.0, 40)
        temperatures = np.array([self.solver.equilibrium_state(SQUARE_WELL, float(lam)).T
                                 for lam in lambdas])
        increasing = bool(np.all(np.diff(temperatures) > 0))
        below_limit = bool(np.all(temperatures < 2.0))
        worst = abs(temperatures[-1] - 2.0) / 2.0 if increasing and below_limit else math.inf
        return self._result("temperature_increase", worst, 0.02,
                            f"T from {temperatures[0]:.6f} to {temperatures[-1]:.6f}")
