"""Engine exceptions.

Every error carries a human readable ``detail`` and the process ``exit_code``
the CLI terminates with when the error reaches the top level.
"""
from typing import Any, Optional


class CGEError(Exception):
    """Base class for all engine errors."""

    exit_code: int = 1

    def __init__(self, detail: str, *, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ConfigurationError(CGEError):
    """Invalid run configuration, flags, stack or material name."""

    exit_code = 2


class DomainError(CGEError, ValueError):
    """An operation was called outside its mathematical domain."""

    exit_code = 2


class SingularPointError(DomainError):
    """Evaluation requested at y = zeta > 0 where the TM factor is singular."""


class ModeSingularityError(CGEError):
    """The Lifshitz denominator e^y - r1*r2 is not positive."""

    exit_code = 3


class IntegrationError(CGEError):
    """A quadrature did not converge within its budget."""

    exit_code = 3

    def __init__(self, detail: str, *, estimate: Any = None):
        super().__init__(detail)
        self.estimate = estimate


class ConvergenceError(CGEError):
    """The Matsubara sum reached its cutoff before converging."""

    exit_code = 3

    def __init__(self, detail: str, *, partial: Any = None):
        super().__init__(detail)
        self.partial = partial


class DegenerateScenarioError(CGEError):
    """A ratio was requested with a vanishing denominator."""

    exit_code = 3


class InputFileError(CGEError):
    """Malformed material data file or experiment overlay file."""

    exit_code = 4
