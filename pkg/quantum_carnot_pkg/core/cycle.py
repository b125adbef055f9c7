"""
The four-stroke quantum Carnot cycle.

    1 -> 2  isoenergetic expansion at E_H     (PV = 2 E_H)
    2 -> 3  adiabatic expansion, p_n fixed    (PV^3 = 2 V_2^2 E_H)
    3 -> 4  isoenergetic compression at E_C   (PV = 2 E_C)
    4 -> 1  adiabatic compression, p_n fixed  (PV^3 = 2 V_4^2 E_C)

with E_C = (V_2 / V_3)^2 E_H and V_4 = V_1 V_3 / V_2 closing the cycle.
"""

import enum
import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from quantum_carnot_pkg.core.exceptions import (
    DomainError,
    InfeasibleConstraintError,
    QuantumCarnotError,
    StrokeError,
)
from quantum_carnot_pkg.core.maxent import MaxEntSolver, MaxEntState
from quantum_carnot_pkg.core.performance.batch_processing import BatchProcessor
from quantum_carnot_pkg.core.spectrum import SQUARE_WELL, SpectrumModel

CLAUSIUS_TOL = 1e-12
ENTROPY_CLOSURE_TOL = 1e-10

SAMPLE_COLUMNS = ("stroke", "V", "P", "E", "S", "T")
REPORT_KEYS = ("v4", "e_c", "q_h", "q_c", "w_net", "eta", "clausius_residual", "entropy_closure")


class Stroke(enum.Enum):
    ISO_HOT = "IsoHot"
    ADIABATIC_EXPAND = "AdiabaticExpand"
    ISO_COLD = "IsoCold"
    ADIABATIC_COMPRESS = "AdiabaticCompress"


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not (value > 0 and math.isfinite(value)):
            raise DomainError(f"{name} must be positive and finite, got {value}")


def pressure_isoenergetic(E: float, V: float) -> float:
    """
    Equation of state on an isoenergetic stroke, P = 2E / V.

    Raises:
        DomainError: if E or V is not positive
    """
    _require_positive(E=E, V=V)
    return 2.0 * E / V


def pressure_adiabatic(E_H: float, V_start: float, V: float) -> float:
    """
    Equation of state on an adiabatic stroke started at (V_start, E_H): P = 2 V_start^2 E_H / V^3.

    Raises:
        DomainError: on nonpositive inputs
    """
    _require_positive(E_H=E_H, V_start=V_start, V=V)
    return 2.0 * V_start * V_start * E_H / (V * V * V)


def adiabatic_energy(E_start: float, V_start: float, V: float) -> float:
    """<H> along an adiabatic stroke: populations are frozen so E scales as V^-2."""
    _require_positive(E_start=E_start, V_start=V_start, V=V)
    return E_start * (V_start / V) ** 2


def heat_isoenergetic(E: float, V_from: float, V_to: float) -> float:
    """
    Energy drawn from the bath on an isoenergetic stroke, Q = 2E ln(V_to / V_from).

    Positive on expansion, negative on compression.

    Raises:
        DomainError: on nonpositive inputs
    """
    _require_positive(E=E, V_from=V_from, V_to=V_to)
    return 2.0 * E * math.log(V_to / V_from)


def work_adiabatic(E_start: float, V_start: float, V_end: float) -> float:
    """Work done by the system on an adiabatic stroke, E_start (1 - (V_start / V_end)^2)."""
    _require_positive(E_start=E_start, V_start=V_start, V_end=V_end)
    return E_start * (1.0 - (V_start / V_end) ** 2)


@dataclass(frozen=True)
class CycleSpec:
    """
    Defining widths and hot bath energy of a cycle.

    Attributes:
        v1, v2, v3: Widths with 0 < v1 < v2 < v3
        e_h: Hot bath energy (natural units)
        v4_override: Replace the closing width V1 V3 / V2; the cycle is then
            generally not reversible and only diagnosed
    """

    v1: float
    v2: float
    v3: float
    e_h: float = 1.0
    v4_override: Optional[float] = None

    @property
    def v4(self) -> float:
        if self.v4_override is not None:
            return self.v4_override
        return self.v1 * self.v3 / self.v2

    @property
    def e_c(self) -> float:
        return (self.v2 * self.v2) / (self.v3 * self.v3) * self.e_h

    def validate(self, model: SpectrumModel = SQUARE_WELL) -> "CycleSpec":
        """
        Check the ordering of the widths and that E_H reaches the ground level.

        Raises:
            InfeasibleConstraintError: if the cycle cannot be built
        """
        for name in ("v1", "v2", "v3", "e_h"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise InfeasibleConstraintError(f"{name} must be positive and finite, got {value}")
        if not self.v1 < self.v2 < self.v3:
            raise InfeasibleConstraintError(
                f"Widths must satisfy V1 < V2 < V3, got {self.v1}, {self.v2}, {self.v3}")
        ground = model.ground_coefficient / (self.v1 * self.v1)
        if self.e_h < ground * (1.0 - 1e-12):
            raise InfeasibleConstraintError(
                f"E_H={self.e_h} is below the ground energy {ground} at V1={self.v1}")
        if not self.v1 < self.v4 < self.v3:
            raise InfeasibleConstraintError(
                f"V4={self.v4} must lie strictly between V1={self.v1} and V3={self.v3}")
        return self


@dataclass(frozen=True)
class StrokeSample:
    """One point on a stroke."""

    stroke: str
    V: float
    P: float
    E: float
    S: float
    T: float
    lambda_eff: float

    def as_row(self) -> Tuple[str, float, float, float, float, float]:
        return (self.stroke, self.V, self.P, self.E, self.S, self.T)


@dataclass(frozen=True)
class CycleReport:
    """Heat, work, efficiency and closure diagnostics of a cycle."""

    v1: float
    v2: float
    v3: float
    v4: float
    e_h: float
    e_c: float
    q_h: float
    q_c: float
    w_net: float
    eta: float
    clausius_residual: float
    entropy_closure: float
    junction_entropy_residual: float
    adiabatic_energy_residual: float
    reversible: bool
    clausius_sign: int

    def summary(self) -> Dict[str, float]:
        """The headline figures: v4, e_c, q_h, q_c, w_net, eta, clausius_residual, entropy_closure."""
        return {key: getattr(self, key) for key in REPORT_KEYS}

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def work_by_quadrature(spec: CycleSpec) -> float:
    """
    Net work as the closed integral of P dV over the four strokes, by adaptive quadrature.

    Independent of heat_isoenergetic; used to cross-check W_net = Q_H + Q_C.
    """
    v1, v2, v3, v4 = spec.v1, spec.v2, spec.v3, spec.v4
    e_h, e_c = spec.e_h, spec.e_c
    legs = (
        (lambda V: pressure_isoenergetic(e_h, V), v1, v2),
        (lambda V: pressure_adiabatic(e_h, v2, V), v2, v3),
        (lambda V: pressure_isoenergetic(e_c, V), v3, v4),
        (lambda V: pressure_adiabatic(e_c, v4, V), v4, v1),
    )
    total = 0.0
    for pressure, a, b in legs:
        value, _ = quad(pressure, a, b, epsabs=0.0, epsrel=1e-13, limit=200)
        total += value
    return total


def clausius_sign(residual: float, tol: float = CLAUSIUS_TOL) -> int:
    """Sign of the Clausius residual, 0 when within tol."""
    if abs(residual) <= tol:
        return 0
    return 1 if residual > 0 else -1


class CarnotCycle:
    """
    Builds a quantum Carnot cycle and samples its strokes.
    """

    def __init__(self, model: SpectrumModel = SQUARE_WELL, solver: Optional[MaxEntSolver] = None,
                 batch_processor: Optional[BatchProcessor] = None,
                 logger: Optional[logging.Logger] = None):
        """
        Initialize the cycle builder.

        Args:
            model: Spectrum model of the working particle
            solver: Maximum-entropy solver (a default one is created if None)
            batch_processor: Evaluates isoenergetic samples in parallel
            logger: Logger instance
        """
        self.model = model
        self.logger = logger or logging.getLogger(__name__)
        self.solver = solver or MaxEntSolver(logger=self.logger)
        self.batch_processor = batch_processor or BatchProcessor(max_workers=1, logger=self.logger)

    def _isoenergetic_point(self, task: Tuple[Stroke, float, float]) -> Tuple[StrokeSample, MaxEntState]:
        stroke, energy, V = task
        lambda_eff = V * math.sqrt(energy)
        try:
            state = self.solver.equilibrium_state(self.model, lambda_eff)
        except QuantumCarnotError as e:
            raise StrokeError(f"maxent solve failed at V={V}: {e}", stroke.value) from e
        sample = StrokeSample(
            stroke=stroke.value,
            V=V,
            P=pressure_isoenergetic(energy, V),
            E=energy,
            S=state.S,
            T=energy * state.T,
            lambda_eff=lambda_eff,
        )
        return sample, state

    def _adiabatic_stroke(self, stroke: Stroke, junction: MaxEntState, e_start: float,
                          widths: np.ndarray) -> Tuple[List[StrokeSample], float]:
        """
        Samples of an adiabatic stroke; populations stay those of the junction state.

        Returns the samples and the largest relative mismatch between sum p_n E_n(V)
        and the stroke energy.
        """
        v_start = float(widths[0])
        samples = []
        worst = 0.0
        for V in widths:
            V = float(V)
            energy = adiabatic_energy(e_start, v_start, V)
            worst = max(worst, abs(junction.mean_energy(V) - energy) / energy)
            samples.append(StrokeSample(
                stroke=stroke.value,
                V=V,
                P=pressure_adiabatic(e_start, v_start, V),
                E=energy,
                S=junction.S,
                T=energy * junction.T,
                lambda_eff=V * math.sqrt(energy),
            ))
        return samples, worst

    def run(self, spec: CycleSpec, samples_per_stroke: int = 50) -> Tuple[CycleReport, List[StrokeSample]]:
        """
        Run the cycle.

        Args:
            spec: Cycle definition
            samples_per_stroke: Points per stroke on a geometric width grid (>= 2)

        Returns:
            (report, samples) with samples ordered IsoHot, AdiabaticExpand,
            IsoCold, AdiabaticCompress

        Raises:
            InfeasibleConstraintError: infeasible CycleSpec
            StrokeError: a maximum-entropy solve failed on an isoenergetic stroke
        """
        if samples_per_stroke < 2:
            raise DomainError(f"samples_per_stroke must be >= 2, got {samples_per_stroke}")
        spec.validate(self.model)

        v1, v2, v3, v4 = spec.v1, spec.v2, spec.v3, spec.v4
        e_h, e_c = spec.e_h, spec.e_c
        self.logger.info(f"Running {self.model.name} cycle V1={v1} V2={v2} V3={v3} V4={v4} "
                         f"E_H={e_h} E_C={e_c} with {samples_per_stroke} samples per stroke")

        hot_widths = np.geomspace(v1, v2, samples_per_stroke)
        cold_widths = np.geomspace(v3, v4, samples_per_stroke)
        tasks = ([(Stroke.ISO_HOT, e_h, float(V)) for V in hot_widths]
                 + [(Stroke.ISO_COLD, e_c, float(V)) for V in cold_widths])
        points = self.batch_processor.map_ordered(self._isoenergetic_point, tasks)
        hot = points[:samples_per_stroke]
        cold = points[samples_per_stroke:]

        hot_junction = hot[-1][1]
        cold_junction = cold[-1][1]
        expand, expand_residual = self._adiabatic_stroke(
            Stroke.ADIABATIC_EXPAND, hot_junction, e_h, np.geomspace(v2, v3, samples_per_stroke))
        compress, compress_residual = self._adiabatic_stroke(
            Stroke.ADIABATIC_COMPRESS, cold_junction, e_c, np.geomspace(v4, v1, samples_per_stroke))

        samples = [s for s, _ in hot] + expand + [s for s, _ in cold] + compress

        q_h = heat_isoenergetic(e_h, v1, v2)
        q_c = heat_isoenergetic(e_c, v3, v4)
        residual = q_h / e_h + q_c / e_c
        sign = clausius_sign(residual)
        entropy_closure = abs(samples[-1].S - samples[0].S)
        junction_residual = max(abs(state.shannon_entropy() - state.S)
                                for state in (hot_junction, cold_junction))

        report = CycleReport(
            v1=v1, v2=v2, v3=v3, v4=v4,
            e_h=e_h, e_c=e_c,
            q_h=q_h, q_c=q_c,
            w_net=q_h + q_c,
            eta=1.0 - e_c / e_h,
            clausius_residual=residual,
            entropy_closure=entropy_closure,
            junction_entropy_residual=junction_residual,
            adiabatic_energy_residual=max(expand_residual, compress_residual),
            reversible=sign == 0,
            clausius_sign=sign,
        )

        if not report.reversible:
            self.logger.warning(f"V4={v4} does not close the cycle: Clausius residual {residual:.3e} "
                                f"(sign {sign:+d}), entropy mismatch {entropy_closure:.3e}")
        elif entropy_closure > ENTROPY_CLOSURE_TOL:
            self.logger.warning(f"Entropy closure {entropy_closure:.3e} exceeds {ENTROPY_CLOSURE_TOL:g}")

        self.logger.info(f"Cycle done: Q_H={q_h:.12g} Q_C={q_c:.12g} W={report.w_net:.12g} "
                         f"eta={report.eta:.12g}")
        return report, samples


def run_cycle(spec: CycleSpec, samples_per_stroke: int = 50,
              model: SpectrumModel = SQUARE_WELL) -> Tuple[CycleReport, List[StrokeSample]]:
    """Module-level shortcut for CarnotCycle(model).run(spec, samples_per_stroke)."""
    return CarnotCycle(model=model).run(spec, samples_per_stroke)
