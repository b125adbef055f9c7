"""
Core numerics: spectra, series, the maximum-entropy solver, the Carnot cycle
and its verifiers.
"""

from quantum_carnot_pkg.core.cycle import CarnotCycle, CycleReport, CycleSpec, run_cycle
from quantum_carnot_pkg.core.exceptions import (
    ConvergenceError,
    DomainError,
    InfeasibleConstraintError,
    PrecisionError,
    QuantumCarnotError,
    StrokeError,
)
from quantum_carnot_pkg.core.maxent import MaxEntSolver, MaxEntState, equilibrium_state, solve_alpha
from quantum_carnot_pkg.core.spectrum import HARMONIC, SQUARE_WELL, SpectrumKind, SpectrumModel
from quantum_carnot_pkg.core.verification import VerificationSuite
