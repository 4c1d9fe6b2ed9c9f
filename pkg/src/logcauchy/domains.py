"""Multiplication-closed intervals and validated argument tuples.

Every mean in this package lives on one of three open intervals that are
closed under multiplication: (1, +inf), (0, 1) and (0, +inf).  Arguments
are k-tuples (k >= 2) of finite doubles strictly inside their interval.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ArityError, DomainError

#: Half-width of the exclusion band around 1 on the two gated intervals.
#: Coordinates this close to 1 make the log weights numerically
#: unreliable, and the intervals are open, so they are rejected outright.
NEAR_ONE_EXCLUSION = 1e-12


class Domain(Enum):
    """Open interval closed under multiplication of its elements."""

    ABOVE_ONE = "above-one"      # (1, +inf)
    UNIT_INTERVAL = "unit"       # (0, 1)
    POSITIVE = "positive"        # (0, +inf)

    def contains(self, x):
        """Strict elementwise membership; endpoints, NaN and inf excluded."""
        arr = np.asarray(x, dtype=float)
        finite = np.isfinite(arr)
        if self is Domain.ABOVE_ONE:
            return finite & (arr > 1.0)
        if self is Domain.UNIT_INTERVAL:
            return finite & (arr > 0.0) & (arr < 1.0)
        return finite & (arr > 0.0)

    @property
    def reciprocal(self):
        """Image of the interval under x -> 1/x."""
        if self is Domain.ABOVE_ONE:
            return Domain.UNIT_INTERVAL
        if self is Domain.UNIT_INTERVAL:
            return Domain.ABOVE_ONE
        return Domain.POSITIVE


def check_point(values, domain, min_arity=2):
    """Validate a coordinate array against ``domain``.

    Accepts anything array_like of shape (..., k) and returns it as a
    float ndarray.  Raises :class:`ArityError` for k < ``min_arity`` and
    :class:`DomainError` for non-finite coordinates, coordinates outside
    the interval, or, on the gated intervals, coordinates inside the
    exclusion band around 1.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] < min_arity:
        raise ArityError(
            f"need at least {min_arity} coordinates, got shape {arr.shape}")
    ok = domain.contains(arr)
    if not ok.all():
        bad = arr[~ok].ravel()[0]
        raise DomainError(f"value {bad!r} is not strictly inside {domain.value}")
    if domain is not Domain.POSITIVE:
        near = np.abs(arr - 1.0) < NEAR_ONE_EXCLUSION
        if near.any():
            bad = arr[near].ravel()[0]
            raise DomainError(
                f"value {bad!r} lies within {NEAR_ONE_EXCLUSION} of 1; "
                f"the interval {domain.value} excludes this band")
    return arr


@dataclass(frozen=True)
class MeanPoint:
    """A k-tuple of coordinates validated against a domain."""

    values: tuple
    domain: Domain

    def __post_init__(self):
        arr = check_point(self.values, self.domain)
        if arr.ndim != 1:
            raise ArityError("a MeanPoint holds a single flat tuple")
        object.__setattr__(self, "values", tuple(float(v) for v in arr))

    @property
    def k(self):
        return len(self.values)

    def as_array(self):
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class MeanReport:
    """Sandwich summary of one mean evaluation.

    ``strict`` is set when the tuple is nonconstant and the value sits
    strictly between its smallest and largest coordinate.
    """

    min: float
    max: float
    value: float
    strict: bool


def mean_report(values, value):
    """Build a :class:`MeanReport` for ``value`` evaluated at ``values``."""
    arr = np.asarray(values, dtype=float)
    lo = float(arr.min())
    hi = float(arr.max())
    value = float(value)
    strict = lo < hi and lo < value < hi
    return MeanReport(min=lo, max=hi, value=value, strict=strict)
