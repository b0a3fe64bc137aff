class HolevoLabError(Exception):
    """Base class for library errors."""


class LabelError(HolevoLabError, KeyError):
    """A subsystem label is unknown, duplicated, or out of order."""

    def __str__(self):
        return str(self.args[0]) if self.args else "label error"


class DimensionError(HolevoLabError, ValueError):
    """Operator shapes or subsystem dimensions do not match."""


class DomainError(HolevoLabError, ValueError):
    """A matrix function was asked for outside its domain."""


class ValidationError(HolevoLabError, ValueError):
    """An object violates one of its invariants."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedRankError(HolevoLabError, ValueError):
    """Naimark extension requested for a POVM with a non rank-1 element."""


class PreconditionError(HolevoLabError, ValueError):
    """An input does not satisfy an operation's precondition."""


class EvaluatorAbort(HolevoLabError, RuntimeError):
    """A relation evaluator reached an impossible state; the suite must stop."""
