import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quantum_carnot_pkg.core.cycle import (
    REPORT_KEYS,
    SAMPLE_COLUMNS,
    CarnotCycle,
    CycleSpec,
    Stroke,
    adiabatic_energy,
    clausius_sign,
    heat_isoenergetic,
    pressure_adiabatic,
    pressure_isoenergetic,
    run_cycle,
    work_adiabatic,
    work_by_quadrature,
)
from quantum_carnot_pkg.core.exceptions import (
    ConvergenceError,
    DomainError,
    InfeasibleConstraintError,
    StrokeError,
)
from quantum_carnot_pkg.core.maxent import MaxEntSolver
from quantum_carnot_pkg.core.performance.batch_processing import BatchProcessor
from quantum_carnot_pkg.core.spectrum import HARMONIC

positive = st.floats(min_value=1e-2, max_value=1e2, allow_nan=False, allow_infinity=False)
ratios = st.floats(min_value=1.05, max_value=4.0, allow_nan=False, allow_infinity=False)


@st.composite
def cycle_specs(draw):
    v1 = draw(st.floats(min_value=0.5, max_value=3.0))
    v2 = v1 * draw(ratios)
    v3 = v2 * draw(ratios)
    e_h = draw(st.floats(min_value=1.0, max_value=5.0)) / (v1 * v1)
    return CycleSpec(v1, v2, v3, e_h)


@given(positive, positive)
@settings(max_examples=1000)
def test_isoenergetic_equation_of_state(E, V):
    assert pressure_isoenergetic(E, V) * V == pytest.approx(2.0 * E, rel=1e-14)


@given(positive, positive, positive)
@settings(max_examples=1000)
def test_adiabatic_equation_of_state(E, V_start, V):
    assert pressure_adiabatic(E, V_start, V) * V ** 3 == pytest.approx(2.0 * V_start ** 2 * E, rel=1e-14)


def test_pressure_examples():
    assert pressure_isoenergetic(1.0, 1.0) == 2.0
    assert pressure_isoenergetic(1.0, 2.0) == 1.0
    assert pressure_adiabatic(1.0, 2.0, 2.0) == 1.0
    assert pressure_adiabatic(1.0, 2.0, 4.0) == 0.125
    with pytest.raises(DomainError):
        pressure_isoenergetic(1.0, 0.0)
    with pytest.raises(DomainError):
        pressure_adiabatic(-1.0, 1.0, 1.0)


def test_pressures_meet_at_cold_junction():
    spec = CycleSpec(1.0, 2.0, 3.0, 1.7)
    assert pressure_adiabatic(spec.e_h, spec.v2, spec.v3) == pytest.approx(
        pressure_isoenergetic(spec.e_c, spec.v3), rel=1e-14)


def test_heat_examples():
    assert heat_isoenergetic(1.0, 1.0, 2.0) == pytest.approx(2.0 * math.log(2.0), rel=1e-15)
    assert heat_isoenergetic(3.0, 1.5, 1.5) == 0.0
    assert heat_isoenergetic(1.0, 2.0, 1.0) < 0


def test_heat_matches_quadrature():
    from scipy.integrate import quad
    value, _ = quad(lambda V: pressure_isoenergetic(1.3, V), 1.2, 3.4, epsrel=1e-13)
    assert heat_isoenergetic(1.3, 1.2, 3.4) == pytest.approx(value, rel=1e-10)


def test_adiabatic_helpers():
    assert adiabatic_energy(1.0, 2.0, 4.0) == 0.25
    assert work_adiabatic(1.0, 2.0, 4.0) == pytest.approx(0.75, rel=1e-15)


@given(cycle_specs())
@settings(max_examples=100)
def test_clausius_equality(spec):
    q_h = heat_isoenergetic(spec.e_h, spec.v1, spec.v2)
    q_c = heat_isoenergetic(spec.e_c, spec.v3, spec.v4)
    assert abs(q_h / spec.e_h + q_c / spec.e_c) <= 1e-12


@given(cycle_specs())
@settings(max_examples=100)
def test_efficiency_identity(spec):
    assert abs((1.0 - spec.e_c / spec.e_h) - (1.0 - spec.v2 ** 2 / spec.v3 ** 2)) <= 1e-14


@given(cycle_specs())
@settings(max_examples=25, deadline=None)
def test_work_by_quadrature_matches_heat(spec):
    q_h = heat_isoenergetic(spec.e_h, spec.v1, spec.v2)
    q_c = heat_isoenergetic(spec.e_c, spec.v3, spec.v4)
    assert work_by_quadrature(spec) == pytest.approx(q_h + q_c, rel=1e-8)


def test_reference_cycle():
    report, samples = run_cycle(CycleSpec(1.0, 2.0, 4.0), samples_per_stroke=20)
    assert report.v4 == 2.0
    assert report.e_c == 0.25
    assert report.eta == 0.75
    assert report.clausius_residual == pytest.approx(0.0, abs=1e-15)
    assert report.w_net == pytest.approx(2.0 * 0.75 * math.log(2.0), rel=1e-14)
    assert report.w_net == pytest.approx(1.039721, rel=1e-6)
    assert work_by_quadrature(CycleSpec(1.0, 2.0, 4.0)) == pytest.approx(report.w_net, rel=1e-8)
    assert report.entropy_closure <= 1e-10
    assert report.reversible
    assert report.clausius_sign == 0
    assert list(report.summary()) == list(REPORT_KEYS)
    assert len(samples) == 80
    assert [s.stroke for s in samples[::20]] == [s.value for s in Stroke]
    assert len(samples[0].as_row()) == len(SAMPLE_COLUMNS)


def test_stroke_shapes():
    engine = CarnotCycle(solver=MaxEntSolver())
    report, samples = engine.run(CycleSpec(1.0, 1.5, 3.0, e_h=2.0), samples_per_stroke=15)
    by_stroke = {stroke: [s for s in samples if s.stroke == stroke.value] for stroke in Stroke}

    for stroke in (Stroke.ADIABATIC_EXPAND, Stroke.ADIABATIC_COMPRESS):
        S = np.array([s.S for s in by_stroke[stroke]])
        assert np.max(np.abs(S - S[0])) <= 1e-10
        lam = [s.lambda_eff for s in by_stroke[stroke]]
        assert max(lam) == pytest.approx(min(lam), rel=1e-12)

    hot = [s.S for s in by_stroke[Stroke.ISO_HOT]]
    cold = [s.S for s in by_stroke[Stroke.ISO_COLD]]
    assert all(b > a for a, b in zip(hot, hot[1:]))
    assert all(b < a for a, b in zip(cold, cold[1:]))

    for s in by_stroke[Stroke.ISO_HOT]:
        assert s.P * s.V == pytest.approx(2.0 * s.E, rel=1e-14)
        assert s.E == 2.0

    assert report.adiabatic_energy_residual <= 1e-10
    assert report.junction_entropy_residual <= 1e-10
    assert report.entropy_closure <= 1e-10


def test_degenerate_cycle_has_vanishing_work():
    report, _ = run_cycle(CycleSpec(1.0, 2.0, 2.0 + 1e-9), samples_per_stroke=3)
    assert report.eta == pytest.approx(0.0, abs=1e-8)
    assert report.w_net == pytest.approx(0.0, abs=1e-8)


def test_parallel_samples_match_sequential():
    spec = CycleSpec(1.0, 2.0, 4.0, 1.5)
    _, sequential = CarnotCycle().run(spec, 12)
    _, parallel = CarnotCycle(batch_processor=BatchProcessor(max_workers=4)).run(spec, 12)
    assert [s.as_row() for s in sequential] == [s.as_row() for s in parallel]


def test_harmonic_cycle():
    report, samples = CarnotCycle(model=HARMONIC).run(CycleSpec(1.0, 2.0, 4.0, e_h=1.0), 10)
    assert report.eta == 0.75
    assert report.entropy_closure <= 1e-10


@pytest.mark.parametrize("spec", [
    CycleSpec(2.0, 1.0, 4.0),
    CycleSpec(1.0, 2.0, 2.0),
    CycleSpec(1.0, 2.0, 4.0, e_h=0.5),
    CycleSpec(1.0, 2.0, 4.0, v4_override=5.0),
    CycleSpec(0.0, 2.0, 4.0),
])
def test_infeasible_specs(spec):
    with pytest.raises(InfeasibleConstraintError):
        run_cycle(spec, 5)


def test_too_few_samples():
    with pytest.raises(DomainError):
        run_cycle(CycleSpec(1.0, 2.0, 4.0), 1)


def test_v4_override_is_diagnosed():
    report, _ = run_cycle(CycleSpec(1.0, 2.0, 4.0, v4_override=3.0), 5)
    assert not report.reversible
    assert report.clausius_residual == pytest.approx(2.0 * math.log(1.5), rel=1e-14)
    assert report.clausius_sign == clausius_sign(report.clausius_residual) == 1
    assert report.v4 == 3.0
    assert report.entropy_closure > 1e-6


def test_solver_failure_carries_stroke():
    engine = CarnotCycle(solver=MaxEntSolver(max_bisections=2))
    with pytest.raises(StrokeError) as excinfo:
        engine.run(CycleSpec(1.0, 2.0, 4.0), 5)
    assert excinfo.value.stroke in {Stroke.ISO_HOT.value, Stroke.ISO_COLD.value}
    assert isinstance(excinfo.value.__cause__, ConvergenceError)
