"""
Exception types raised by the quantum Carnot engine core.
"""

from typing import Any, Dict, Optional


class QuantumCarnotError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(QuantumCarnotError, ValueError):
    """An argument lies outside the domain of the operation (e.g. V <= 0)."""


class InfeasibleConstraintError(QuantumCarnotError, ValueError):
    """The energy constraint cannot be met, e.g. lambda^2 below the ground level."""


class PrecisionError(QuantumCarnotError):
    """
    A series needed more terms than the hard cap allows.

    The partially summed result is kept on ``partial`` so callers can decide
    whether it is good enough.
    """

    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial


class ConvergenceError(QuantumCarnotError):
    """The root finder stopped without meeting its tolerance."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class StrokeError(QuantumCarnotError):
    """A maximum-entropy solve failed while sampling a cycle stroke."""

    def __init__(self, message: str, stroke: str):
        super().__init__(f"[{stroke}] {message}")
        self.stroke = stroke
