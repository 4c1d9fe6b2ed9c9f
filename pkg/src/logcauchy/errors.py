"""Exception hierarchy shared by the whole package."""


class LogCauchyError(Exception):
    """Base class for every error this package raises on purpose."""


class DomainError(LogCauchyError, ValueError):
    """A value lies outside the interval an operation is defined on."""


class ArityError(LogCauchyError, ValueError):
    """A tuple has the wrong number of coordinates (fewer than two, or
    not matching a declared arity)."""


class ParameterError(LogCauchyError, ValueError):
    """Inconsistent construction parameters, e.g. a zero scale constant
    or a sign that does not match the declared interval."""


class EvaluationError(LogCauchyError, ArithmeticError):
    """An evaluation produced zero, infinity or NaN where a finite
    nonzero value is required."""


class TransformError(EvaluationError):
    """A log transform hit a nonpositive or non-finite value."""


class RangeError(LogCauchyError):
    """A tile index or exponent left the guarded range of doubles."""

    def __init__(self, message, tile=None):
        super().__init__(message)
        self.tile = tile


class InterpolationError(LogCauchyError):
    """A point fell outside a table's interpolation hull."""


class TableFormatError(LogCauchyError, ValueError):
    """Malformed table file; the message carries the offending line number."""
