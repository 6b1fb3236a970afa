"""Exception hierarchy. The CLI maps these onto exit codes."""


class KSError(Exception):
    """Base class for errors raised by this package."""


class ParseError(KSError, ValueError):
    """Malformed user input (exit code 1)."""


class DomainError(KSError, ValueError):
    """A mathematical precondition does not hold (exit code 2)."""


class DegenerateFormError(DomainError):
    """The quadratic form has zero determinant."""


class FactorizationLimitError(DomainError):
    """Square-class extraction needs more trial division than allowed."""


class ShapeError(DomainError):
    """A Hodge type does not have the shape an operation requires."""


class OracleMismatchError(KSError, AssertionError):
    """Two independent computations disagree; indicates a bug (exit code 3)."""
