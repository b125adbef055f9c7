"""
Spectrum models whose levels scale as the inverse squared width.

Energies are in natural units: for the square well pi^2 hbar^2 / (2m) = 1, for
the harmonic oscillator hbar = 1 with the width V standing for 1/sqrt(omega).
In both cases E_n(V) = c(n) / V^2.
"""

import enum
import math
from typing import Union

import numpy as np

from quantum_carnot_pkg.core.exceptions import DomainError


class SpectrumKind(enum.Enum):
    """Supported Hamiltonians."""

    SQUARE_WELL = "square-well"
    HARMONIC = "harmonic"


class SpectrumModel:
    """
    Discrete spectrum with level coefficients c(n) and E_n(V) = c(n) / V^2.

    SquareWell: c(n) = n^2 for n >= 1.
    Harmonic:   c(n) = n + 1/2 for n >= 0.
    """

    def __init__(self, kind: SpectrumKind):
        self.kind = SpectrumKind(kind)
        self.n_min = 1 if self.kind is SpectrumKind.SQUARE_WELL else 0

    @classmethod
    def from_name(cls, name: str) -> "SpectrumModel":
        """
        Build a model from its CLI name ('square-well' or 'harmonic').

        Raises:
            DomainError: if the name is unknown
        """
        try:
            return cls(SpectrumKind(name.strip().lower().replace("_", "-")))
        except ValueError:
            choices = ", ".join(k.value for k in SpectrumKind)
            raise DomainError(f"Unknown spectrum model '{name}' (choose from {choices})") from None

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def ground_coefficient(self) -> float:
        """c(n_min), the smallest admissible value of lambda^2."""
        return self.coefficient(self.n_min)

    def coefficient(self, n: int) -> float:
        """Level coefficient c(n)."""
        if self.kind is SpectrumKind.SQUARE_WELL:
            return float(n * n)
        return n + 0.5

    def coefficients(self, n: Union[np.ndarray, int]) -> np.ndarray:
        """Vectorized c(n) for an array of level indices."""
        n = np.asarray(n, dtype=float)
        if self.kind is SpectrumKind.SQUARE_WELL:
            return n * n
        return n + 0.5

    def gap(self, n: Union[np.ndarray, int]) -> np.ndarray:
        """c(n+1) - c(n): 2n+1 for the square well, 1 for the oscillator."""
        n = np.asarray(n, dtype=float)
        if self.kind is SpectrumKind.SQUARE_WELL:
            return 2.0 * n + 1.0
        return np.ones_like(n)

    def levels_below(self, bound: float) -> int:
        """Number of levels with c(n) <= bound."""
        if bound < self.ground_coefficient:
            return 0
        if self.kind is SpectrumKind.SQUARE_WELL:
            n = int(math.sqrt(bound))
            while (n + 1) * (n + 1) <= bound:
                n += 1
            while n * n > bound:
                n -= 1
            return n
        return int(math.floor(bound - 0.5)) + 1

    def levels(self, count: int) -> np.ndarray:
        """The first ``count`` level indices, starting at n_min."""
        return np.arange(self.n_min, self.n_min + count)

    def __eq__(self, other) -> bool:
        return isinstance(other, SpectrumModel) and other.kind is self.kind

    def __hash__(self) -> int:
        return hash(self.kind)

    def __repr__(self) -> str:
        return f"SpectrumModel({self.kind.value})"


SQUARE_WELL = SpectrumModel(SpectrumKind.SQUARE_WELL)
HARMONIC = SpectrumModel(SpectrumKind.HARMONIC)


def _check_level(model: SpectrumModel, n: int, V: float) -> None:
    if not V > 0:
        raise DomainError(f"Width must be positive, got V={V}")
    if n < model.n_min:
        raise DomainError(f"Level {n} is below n_min={model.n_min} for {model.name}")


def level_energy(model: SpectrumModel, n: int, V: float) -> float:
    """
    Energy of level n at width V.

    Args:
        model: Spectrum model
        n: Level index (>= model.n_min)
        V: Width (> 0)

    Returns:
        c(n) / V^2

    Raises:
        DomainError: if V <= 0 or n < n_min
    """
    _check_level(model, n, V)
    return model.coefficient(n) / (V * V)


def level_force(model: SpectrumModel, n: int, V: float) -> float:
    """
    Force on the walls contributed by level n, f_n = -dE_n/dV = 2 c(n) / V^3.

    Computed as 2 E_n / V so that f_n * V == 2 E_n to round-off.

    Raises:
        DomainError: if V <= 0 or n < n_min
    """
    return 2.0 * level_energy(model, n, V) / V


def level_energies(model: SpectrumModel, V: float, count: int) -> np.ndarray:
    """Energies of the first ``count`` levels at width V."""
    if not V > 0:
        raise DomainError(f"Width must be positive, got V={V}")
    return model.coefficients(model.levels(count)) / (V * V)
