"""
Exception hierarchy for the reservoir teleportation simulator.
"""

from typing import Optional


class TeleportSimError(Exception):
    """Base class for every error raised by the simulator."""


class DomainError(TeleportSimError, ValueError):
    """An input lies outside the domain of an operation."""


class ResolutionError(DomainError):
    """The requested time step cannot resolve the qubit oscillation."""


class SolverDivergenceError(TeleportSimError, ArithmeticError):
    """The integrator produced a non-finite value."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class NumericError(TeleportSimError, ArithmeticError):
    """A linear-algebra or root-finding routine failed."""


class ScenarioError(TeleportSimError, ValueError):
    """A scenario configuration is invalid."""
