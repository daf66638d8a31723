from typing import Any, Optional


class FinfishError(Exception):
    """Base class for every error raised by finfish."""


class StructuralError(FinfishError):
    """A complex violates the fighting-fish invariants."""


class PreconditionError(FinfishError, ValueError):
    """Invalid argument for an operation."""


class DivergenceError(FinfishError):
    """A fixed-point iteration changed an order it had already fixed."""


class InexactDivisionError(FinfishError, ArithmeticError):
    """A division that must be exact left a remainder."""


class BudgetExceededError(FinfishError):
    """An enumeration outgrew its configured budget."""


class IdentityViolationError(FinfishError):
    """A generating-series identity failed; carries the first failing coefficient."""

    def __init__(self, identity: str, location: Optional[Any] = None,
                 expected: Optional[Any] = None, actual: Optional[Any] = None):
        self.identity = identity
        self.location = location
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{identity} fails at {location}: expected {expected}, got {actual}"
        )
