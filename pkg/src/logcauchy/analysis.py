"""Characterisation probes for mean-inducing generators.

The double-exponential transform h(tau) = log f(exp(exp(tau))) turns the
scaling equation f(x) = (x/k) f(x**k) into the linear difference equation

    h(tau + log k) = h(tau) + log k - exp(tau),

whose solutions of one convexity class are unique up to constants.  This
module numerically probes that route (transform, difference-equation
residual, second-difference convexity classification) and the boundedness
route built on phi(x) = (f(x) - c(x-1)) / (x-1)**2, together with the
contraction factor that forces uniqueness of bounded solutions, and the
Jensen residual used by both characterisations.

Probes never prove anything; they evaluate on grids and sequences with
stabilisation checks and report residuals at stated tolerances.
"""

import math
from dataclasses import dataclass

import numpy as np

from .domains import Domain
from .errors import (ArityError, DomainError, EvaluationError,
                     ParameterError, TransformError)
from .generators import Generator, Sign
from .tiling import reflexivity_residual

__all__ = [
    "TransformedGenerator", "h_transform", "krull_residual",
    "ConcavityReport", "concavity_probe",
    "BoundednessProbe", "PhiProbeResult", "phi_probe",
    "contraction_factor", "PsiContractionReport", "psi_contraction_check",
    "jensen_residual",
]


@dataclass(frozen=True)
class TransformedGenerator:
    """tau -> log f(exp(exp(tau))) for a positive generator f."""

    h: callable
    source: Generator


def h_transform(f):
    """Double-exponential log transform of a positive generator.

    The inner composition goes through the generator's log entry points,
    so tau is usable up to about 700 (where exp(tau) itself leaves double
    range) instead of about 6.5 (where exp(exp(tau)) would).

    Raises TransformError if the generator is not positive-valued on
    (1, +inf) or an evaluation comes out non-finite.
    """
    if f.domain is not Domain.ABOVE_ONE:
        raise TransformError("the transform needs a generator on (1,+inf)")
    if f.sign is not Sign.POSITIVE:
        raise TransformError(
            f"generator {f.label!r} is declared negative-valued; "
            "log f is undefined")

    def h(tau):
        tau_arr = np.asarray(tau, dtype=float)
        s = np.exp(tau_arr)
        out = np.asarray(f.log_abs_at_log(s), dtype=float)
        if np.isnan(out).any() or np.isposinf(out).any():
            bad = tau_arr[np.isnan(out) | np.isposinf(out)].ravel()[0] \
                if tau_arr.ndim else tau_arr
            raise TransformError(
                f"transform of {f.label!r} is not finite at tau = {float(bad)!r}")
        return float(out) if tau_arr.ndim == 0 else out

    return TransformedGenerator(h=h, source=f)


def krull_residual(t, tau, k):
    """h(tau + log k) - h(tau) - (log k - exp(tau)).

    Vanishes identically exactly when the source generator satisfies the
    scaling equation; vectorised over tau.
    """
    if k < 2:
        raise ArityError(f"arity must be at least 2, got {k}")
    lk = math.log(k)
    tau_arr = np.asarray(tau, dtype=float)
    out = np.asarray(t.h(tau_arr + lk), dtype=float) \
        - np.asarray(t.h(tau_arr), dtype=float) - (lk - np.exp(tau_arr))
    return float(out) if tau_arr.ndim == 0 else out


@dataclass(frozen=True)
class ConcavityReport:
    """Second-difference classification of the transform on a grid.

    ``second_differences[i]`` approximates h''(taus[i]) * delta**2;
    ``worst_second_difference`` is the entry of largest magnitude.
    """

    verdict: str                    # "concave", "convex" or "neither"
    worst_second_difference: float
    taus: np.ndarray
    second_differences: np.ndarray
    delta: float


def concavity_probe(t, grid=(-3.0, 3.0), points=61, delta=1e-3):
    """Classify the transform by central second differences on a grid.

    The sign tolerance scales as 1e-7 * delta**2 so the verdict stays
    meaningful as the step shrinks.  Weakly concave (affine) transforms
    report "concave".
    """
    if delta <= 0:
        raise ParameterError("step delta must be positive")
    lo, hi = float(grid[0]), float(grid[1])
    taus = np.linspace(lo, hi, int(points))
    h = t.h
    second = np.asarray(h(taus - delta), dtype=float) \
        - 2.0 * np.asarray(h(taus), dtype=float) \
        + np.asarray(h(taus + delta), dtype=float)
    tol = 1e-7 * delta * delta
    if (second <= tol).all():
        verdict = "concave"
    elif (second >= -tol).all():
        verdict = "convex"
    else:
        verdict = "neither"
    worst = float(second[np.argmax(np.abs(second))])
    return ConcavityReport(verdict=verdict, worst_second_difference=worst,
                           taus=taus, second_differences=second, delta=delta)


@dataclass(frozen=True)
class BoundednessProbe:
    """Samples of phi(x) = (f(x) - c(x-1)) / (x-1)**2 on a right vicinity of 1."""

    c: float
    window: tuple
    samples: np.ndarray   # rows (x, phi(x)), x decreasing toward 1


@dataclass(frozen=True)
class PhiProbeResult:
    probe: BoundednessProbe
    bounded: bool
    tail_value: float


def phi_probe(f, c, window_r, samples=200, decades=6.0):
    """Sample phi on a geometric approach to 1 and judge boundedness.

    The sweep covers ``decades`` orders of magnitude of x - 1 below
    ``window_r``.  Verdict "bounded" when |phi| over the last decade of
    samples stays within 10 times the median |phi| of the whole sweep;
    an unbounded phi grows without bound on the approach and fails this.
    ``tail_value`` is the median phi over the last decade, the numeric
    stand-in for the limit when it exists.
    """
    if c <= 0:
        raise ParameterError(f"the linear coefficient c must be positive, got {c!r}")
    if window_r <= 0:
        raise ParameterError("window radius must be positive")
    u = window_r * 10.0 ** (-decades * np.linspace(0.0, 1.0, int(samples)))
    x = 1.0 + u
    u = x - 1.0   # exact offsets of the representable sample points
    fx = np.asarray(f.eval(x), dtype=float)
    if not np.isfinite(fx).all():
        bad = x[~np.isfinite(fx)].ravel()[0]
        raise EvaluationError(f"generator {f.label!r} is not evaluable at {bad!r}")
    phi = (fx - c * u) / (u * u)
    tail = u <= u.min() * 10.0
    med = float(np.median(np.abs(phi)))
    bounded = bool(np.max(np.abs(phi[tail])) <= 10.0 * med)
    probe = BoundednessProbe(c=float(c), window=(1.0, 1.0 + float(window_r)),
                             samples=np.column_stack([x, phi]))
    return PhiProbeResult(probe=probe, bounded=bounded,
                          tail_value=float(np.median(phi[tail])))


def contraction_factor(x, k):
    """k * x**(-1/k) * ((x**(1/k) - 1) / (x - 1))**2, telescoped.

    Evaluated as k * x**(-1/k) / (sum_{j=0}^{k-1} x**(j/k))**2, which has
    no 0/0 cancellation near 1, tends to 1/k there, and decreases
    strictly in x, so it stays below 1/k <= 1/2 on all of (1, +inf).
    """
    if k < 2:
        raise ArityError(f"arity must be at least 2, got {k}")
    arr = np.asarray(x, dtype=float)
    if not (np.isfinite(arr).all() and (arr > 1.0).all()):
        bad = arr[~(np.isfinite(arr) & (arr > 1.0))].ravel()[0] \
            if arr.ndim else arr
        raise DomainError(f"contraction factor is defined for x > 1, got {bad!r}")
    logs = np.log(arr)
    js = np.arange(k).reshape((k,) + (1,) * arr.ndim)
    denom = np.exp(js * logs / k).sum(axis=0)
    out = k * np.exp(-logs / k) / (denom * denom)
    return float(out) if arr.ndim == 0 else out


@dataclass(frozen=True)
class PsiContractionReport:
    """Numeric check of the contraction identity for psi = |phi_1 - phi_2|."""

    max_identity_residual: float    # relative residual of psi(x) = kappa(x) psi(x**(1/k))
    sup_kappa: float
    kappa_window: float             # radius on which sup_kappa was taken
    kappa_below_half: bool
    max_psi: float                  # sup of psi itself over the window


def psi_contraction_check(f1, f2, c, k, window_r, samples=200,
                          reflexivity_tol=1e-10, seed=0):
    """Verify the contraction identity for two scaling-equation solutions.

    Both generators must satisfy f(x) = (x/k) f(x**k) to within
    ``reflexivity_tol`` (relative, spot-checked); the identity

        psi(x) = kappa(x) * psi(x**(1/k)),   psi = |phi_1 - phi_2|,

    then holds and its largest relative violation is reported, together
    with the sup of the contraction factor kappa on (1, 1 + window_r]
    (always <= 1/2) and the sup of psi itself, which collapses to 0 when
    both phi's are bounded.
    """
    for f in (f1, f2):
        for x in (1.5, 2.0, 5.0, 1.0 + window_r):
            fx = float(np.asarray(f.at_log(math.log(x)), dtype=float))
            resid = reflexivity_residual(f, x, k)
            if abs(resid) > reflexivity_tol * max(abs(fx), 1e-300):
                raise ParameterError(
                    f"generator {f.label!r} violates the scaling equation at "
                    f"x = {x!r} (residual {resid!r}); the contraction "
                    "identity is not expected to hold")
    u = window_r * 10.0 ** (-4.0 * np.linspace(0.0, 1.0, int(samples)))
    x = 1.0 + u
    u = x - 1.0

    def phi(f, pts):
        vals = np.asarray(f.eval(pts), dtype=float)
        offs = pts - 1.0
        return (vals - c * offs) / (offs * offs)

    roots = np.exp(np.log(x) / k)
    psi_x = np.abs(phi(f1, x) - phi(f2, x))
    psi_r = np.abs(phi(f1, roots) - phi(f2, roots))
    kappa = contraction_factor(x, k)
    residual = np.abs(psi_x - kappa * psi_r) / np.maximum(psi_x, 1.0)
    return PsiContractionReport(
        max_identity_residual=float(residual.max()),
        sup_kappa=float(kappa.max()),
        kappa_window=float(window_r),
        kappa_below_half=bool(kappa.max() <= 0.5),
        max_psi=float(psi_x.max()),
    )


def jensen_residual(h, points):
    """h(mean of points) - mean of h(points); zero for affine h.

    ``h`` may be any scalar callable; ``points`` is a flat list of k >= 2
    reals inside a window where h and the mean of the points are both
    evaluable.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 1 or pts.size < 2:
        raise ArityError("need a flat list of at least two points")
    values = np.array([float(h(p)) for p in pts])
    return float(h(float(pts.mean()))) - float(values.mean())
