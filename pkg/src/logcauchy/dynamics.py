"""Gauss-type iteration of pairs of two-variable means.

Iterating (x, y) -> (M1(x, y), M2(x, y)) for continuous strict means drives
both coordinates to a common limit, the invariant mean of the pair.  The
module records orbits with per-step gaps and the drift of a reference mean
along the orbit, estimates invariant means by iteration, and measures
one-step invariance residuals.

The catalog pairs the log-weighted mean with its involutory conjugate
(evaluated by the same closed form on either side of 1) and with its
complementary mean x*y / M(x, y); the latter preserves the product each
step, so its invariant mean is the geometric mean exactly.
"""

from dataclasses import dataclass, field

import numpy as np

from . import means
from .domains import NEAR_ONE_EXCLUSION
from .errors import ArityError, DomainError, LogCauchyError, ParameterError

__all__ = [
    "IterationStep", "IterationTrace", "iterate_pair",
    "invariance_residual", "estimate_invariant_mean",
    "InvariantMeanEstimate", "MEAN_CATALOG", "catalog_mean",
]


def arithmetic_mean(point):
    arr = np.asarray(point, dtype=float)
    return float(arr.mean()) if arr.ndim == 1 else arr.mean(axis=-1)


def harmonic_mean(point):
    arr = np.asarray(point, dtype=float)
    if not (np.isfinite(arr).all() and (arr > 0).all()):
        raise DomainError("harmonic mean needs positive finite values")
    out = arr.shape[-1] / (1.0 / arr).sum(axis=-1)
    return float(out) if arr.ndim == 1 else out


def log_cauchy_conjugate(point):
    """Closed form of the two-variable involutory conjugate,

        x*y*(log x + log y) / (x log x + y log y),

    a mean on each side of 1 (equal to 1/M(1/x, 1/y) for the two-variable
    log-weighted mean M)."""
    arr = np.asarray(point, dtype=float)
    if arr.shape[-1] != 2:
        raise ArityError("the closed form is two-variable")
    if not (np.isfinite(arr).all() and (arr > 0).all()):
        raise DomainError("coordinates must be positive finite values")
    near = np.abs(arr - 1.0) < NEAR_ONE_EXCLUSION
    if near.any():
        raise DomainError("coordinates within 1e-12 of 1 are rejected")
    above = (arr > 1.0).all(axis=-1)
    below = (arr < 1.0).all(axis=-1)
    if not (above | below).all():
        raise DomainError("tuple mixes coordinates on both sides of 1")
    x = arr[..., 0]
    y = arr[..., 1]
    lx = np.log(x)
    ly = np.log(y)
    out = x * y * (lx + ly) / (x * lx + y * ly)
    return float(out) if arr.ndim == 1 else out


MEAN_CATALOG = {
    "G": means.geometric_mean,
    "A": arithmetic_mean,
    "H": harmonic_mean,
    "L2": means.log_cauchy_mean,
    "Linv": log_cauchy_conjugate,
    "comp-L2": means.complementary_mean(means.log_cauchy_mean),
}


def catalog_mean(name):
    """Look up a two-variable mean evaluator by its catalog name."""
    try:
        return MEAN_CATALOG[name]
    except KeyError:
        raise ParameterError(
            f"unknown mean {name!r}; catalog: {sorted(MEAN_CATALOG)}")


@dataclass(frozen=True)
class IterationStep:
    x: float
    y: float
    gap: float
    invariance_residual: float


@dataclass
class IterationTrace:
    """Orbit of a pair under a two-mean mapping.

    ``steps[0]`` is the start with residual 0; ``steps[n]`` the state
    after n applications, with ``invariance_residual`` the drift
    K(x_n, y_n) - K(x_0, y_0) of the reference mean K.  ``limit`` is set
    only when the gap fell below tolerance within the iteration cap;
    ``gap_violations`` counts increases of the gap after the first step.
    """

    steps: list = field(default_factory=list)
    limit: float = None
    iterations_used: int = 0
    gap_violations: int = 0
    error: str = None


def _gap(x, y, relative):
    g = abs(x - y)
    if relative:
        g /= max(abs(x), abs(y), 1e-300)
    return g


def iterate_pair(m1, m2, start, tol=1e-12, max_iter=200, reference=None,
                 relative_gap=False):
    """Iterate (x, y) -> (m1(x, y), m2(x, y)) until the gap closes.

    Parameters
    ----------
    m1, m2 : mean evaluators taking a two-coordinate point
    start : pair (x, y) in both means' domain
    tol : stop once |x_n - y_n| < tol (relative when ``relative_gap``)
    max_iter : iteration cap
    reference : mean whose drift along the orbit is recorded per step;
        defaults to the geometric mean
    relative_gap : divide the gap by the larger coordinate, for starts
        with large magnitudes

    Returns
    -------
    IterationTrace
        A mid-orbit evaluation failure truncates the trace and stores the
        error instead of raising.
    """
    if tol <= 0:
        raise ParameterError("tolerance must be positive")
    reference = reference if reference is not None else means.geometric_mean
    x, y = float(start[0]), float(start[1])
    base = float(reference((x, y)))
    trace = IterationTrace()
    trace.steps.append(IterationStep(x, y, _gap(x, y, relative_gap), 0.0))
    prev_gap = trace.steps[0].gap
    if prev_gap < tol:
        trace.limit = 0.5 * (x + y)
        return trace
    for n in range(1, int(max_iter) + 1):
        try:
            nx = float(m1((x, y)))
            ny = float(m2((x, y)))
            x, y = nx, ny
            drift = float(reference((x, y))) - base
        except LogCauchyError as exc:
            trace.error = f"step {n}: {exc}"
            break
        gap = _gap(x, y, relative_gap)
        trace.steps.append(IterationStep(x, y, gap, drift))
        trace.iterations_used = n
        if n > 1 and gap > prev_gap:
            trace.gap_violations += 1
        prev_gap = gap
        if gap < tol:
            trace.limit = 0.5 * (x + y)
            break
    return trace


def invariance_residual(reference, m1, m2, point):
    """reference(m1(point), m2(point)) - reference(point)."""
    x, y = float(point[0]), float(point[1])
    image = (float(m1((x, y))), float(m2((x, y))))
    return float(reference(image)) - float(reference((x, y)))


@dataclass(frozen=True)
class InvariantMeanEstimate:
    limit: float          # None when the iteration did not converge
    iterations: int
    reference_gap: float  # |limit - reference(point)|, None without a reference
    trace: IterationTrace


def estimate_invariant_mean(m1, m2, point, tol=1e-12, max_iter=200,
                            reference=None):
    """Common limit of the pair iteration from ``point``.

    When ``reference`` is given, the estimate also reports how far the
    limit sits from reference(point), a direct numeric check of a
    conjectured invariant mean.  Returns limit None with the diagnostic
    trace when the iteration does not converge within the cap.
    """
    trace = iterate_pair(m1, m2, point, tol=tol, max_iter=max_iter,
                         reference=reference)
    gap = None
    if trace.limit is not None and reference is not None:
        gap = abs(trace.limit - float(reference(point)))
    return InvariantMeanEstimate(limit=trace.limit,
                                 iterations=trace.iterations_used,
                                 reference_gap=gap, trace=trace)
