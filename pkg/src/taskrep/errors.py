"""Exception hierarchy.

Every input-validation failure derives from ``ValidationError`` so the CLI can
map it to a single exit status; ``BudgetExceeded`` is kept separate because it
signals an instance that is valid but too large to enumerate.
"""


class TaskRepError(Exception):
    pass


class ValidationError(TaskRepError, ValueError):
    pass


class UnsortedSupport(ValidationError):
    pass


class NonpositiveSupport(ValidationError):
    pass


class ProbOutOfRange(ValidationError):
    pass


class ProbSumMismatch(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class InvalidOrder(ValidationError):
    pass


class TimeOutOfRange(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class DegenerateDenominator(ValidationError):
    pass


class PreconditionViolated(ValidationError):
    pass


class BudgetExceeded(TaskRepError):
    """Raised when exact enumeration would exceed the configured outcome budget."""
