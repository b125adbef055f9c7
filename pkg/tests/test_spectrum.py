import pytest
from hypothesis import given, strategies as st

from quantum_carnot_pkg.core.exceptions import DomainError
from quantum_carnot_pkg.core.spectrum import (
    HARMONIC,
    SQUARE_WELL,
    SpectrumKind,
    SpectrumModel,
    level_energies,
    level_energy,
    level_force,
)

models = st.sampled_from([SQUARE_WELL, HARMONIC])
widths = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


def test_level_energy_examples():
    assert level_energy(SQUARE_WELL, 1, 1.0) == 1.0
    assert level_energy(SQUARE_WELL, 3, 2.0) == 2.25
    assert level_energy(HARMONIC, 0, 1.0) == 0.5


def test_level_force_examples():
    assert level_force(SQUARE_WELL, 1, 1.0) == 2.0
    assert level_force(SQUARE_WELL, 2, 2.0) == 1.0


@pytest.mark.parametrize("model, n, V", [
    (SQUARE_WELL, 1, 0.0),
    (SQUARE_WELL, 1, -1.0),
    (SQUARE_WELL, 0, 1.0),
    (HARMONIC, -1, 1.0),
])
def test_domain_errors(model, n, V):
    with pytest.raises(DomainError):
        level_energy(model, n, V)
    with pytest.raises(DomainError):
        level_force(model, n, V)


@given(models, st.integers(min_value=0, max_value=10_000), widths)
def test_force_times_width_is_twice_energy(model, offset, V):
    n = model.n_min + offset
    assert level_force(model, n, V) * V == pytest.approx(2.0 * level_energy(model, n, V), rel=1e-15)


@given(models, st.integers(min_value=0, max_value=1000), widths)
def test_energy_monotone_in_level_and_width(model, offset, V):
    n = model.n_min + offset
    assert level_energy(model, n + 1, V) > level_energy(model, n, V)
    assert level_energy(model, n, V * 1.5) < level_energy(model, n, V)


def test_coefficients_and_levels():
    assert list(SQUARE_WELL.levels(4)) == [1, 2, 3, 4]
    assert list(SQUARE_WELL.coefficients(SQUARE_WELL.levels(4))) == [1.0, 4.0, 9.0, 16.0]
    assert list(HARMONIC.coefficients(HARMONIC.levels(3))) == [0.5, 1.5, 2.5]
    assert list(SQUARE_WELL.gap([1, 2])) == [3.0, 5.0]
    assert list(HARMONIC.gap([0, 7])) == [1.0, 1.0]
    assert list(level_energies(SQUARE_WELL, 2.0, 3)) == [0.25, 1.0, 2.25]


@pytest.mark.parametrize("model, bound, expected", [
    (SQUARE_WELL, 0.5, 0),
    (SQUARE_WELL, 1.0, 1),
    (SQUARE_WELL, 15.999, 3),
    (SQUARE_WELL, 16.0, 4),
    (HARMONIC, 0.5, 1),
    (HARMONIC, 2.4, 2),
])
def test_levels_below(model, bound, expected):
    assert model.levels_below(bound) == expected


def test_from_name():
    assert SpectrumModel.from_name("square-well") == SQUARE_WELL
    assert SpectrumModel.from_name("Harmonic") == HARMONIC
    assert SpectrumModel.from_name("square_well").kind is SpectrumKind.SQUARE_WELL
    with pytest.raises(DomainError):
        SpectrumModel.from_name("morse")
