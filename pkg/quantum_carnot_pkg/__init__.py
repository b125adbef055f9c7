"""
Quantum Carnot Package - maximum-entropy thermodynamics of a single quantum particle

This package computes maximum von Neumann entropy states of a particle in a
one-dimensional well coupled to an energy bath, builds the four-stroke quantum
Carnot cycle on top of them, and verifies the results against independent
brute-force and finite-difference oracles.
"""

__version__ = "1.0.0"

from quantum_carnot_pkg.core import (
    CarnotCycle,
    CycleSpec,
    MaxEntSolver,
    MaxEntState,
    SpectrumModel,
    VerificationSuite,
)
