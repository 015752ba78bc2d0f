"""Error types raised by the solver library."""

from typing import Any, Dict, Optional


class ScreenedCoulombError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(ScreenedCoulombError, ValueError):
    """An argument is outside the range an operation accepts."""


class PhysicsDomainError(ScreenedCoulombError, ValueError):
    """A quantity is evaluated where it is not defined (r <= 0, E >= 0, M = 1, ...)."""


class NonNormalizableError(ScreenedCoulombError):
    """A closed-form ground state does not decay at infinity."""


class NoValidAnsatzError(ScreenedCoulombError):
    """No sign choice of the superpotential gives a normalizable state."""


class PotentialEvaluationError(ScreenedCoulombError):
    """The potential could not be evaluated on a grid point."""

    def __init__(self, message: str, radius: float):
        super().__init__(f"{message} (r = {radius!r})")
        self.radius = radius


class ConvergenceError(ScreenedCoulombError):
    """
    An iterative procedure gave up before reaching its tolerance.

    Args:
        message: Human readable reason
        best_estimate: Last value produced before giving up
        diagnostics: Extra fields for the diagnostic record
    """

    def __init__(self, message: str, best_estimate: Any = None,
                 diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.diagnostics = dict(diagnostics or {})
