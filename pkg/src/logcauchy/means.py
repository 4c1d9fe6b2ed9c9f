"""Closed-form means of logarithmic Cauchy quotient type.

The central object is the k-variable mean that weights each leave-one-out
geometric mean by the normalised logarithm of the left-out coordinate,

    L_k(x_1, ..., x_k) = sum_i  (log x_i / sum_l log x_l) * G(x without x_i),

defined for tuples lying entirely on one side of 1.  The module also
provides its increasing extension to all positive tuples (constant 1 on
tuples that straddle or touch 1), the involutory conjugate and
complementary constructions, and a seeded numeric prober for the defining
mean properties.

All evaluations run in the log domain, are vectorised over leading axes,
and are pure functions, so concurrent use needs no locking.
"""

from dataclasses import dataclass

import numpy as np

from . import sampling
from .domains import Domain, MeanPoint, NEAR_ONE_EXCLUSION, mean_report
from .errors import ArityError, DomainError, EvaluationError, ParameterError

__all__ = [
    "geometric_mean", "log_cauchy_mean", "extended_mean",
    "involutory_conjugate", "complementary_mean",
    "probe_mean_properties", "MeanPropertyReport", "mean_report",
]


def _as_batch(point):
    """Coordinates from a MeanPoint or array_like, plus the scalar flag."""
    if isinstance(point, MeanPoint):
        arr = point.as_array()
    else:
        arr = np.asarray(point, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] < 2:
        raise ArityError(f"need a k-tuple with k >= 2, got shape {arr.shape}")
    return arr, arr.ndim == 1


def _scalar_or_array(values, scalar):
    return float(values) if scalar else values


def geometric_mean(values):
    """Geometric mean of positive values, evaluated in the log domain.

    Parameters
    ----------
    values : array_like, shape (..., m)
        Strictly positive finite values, m >= 1.  The mean is taken along
        the last axis.

    Returns
    -------
    float or ndarray
        exp of the arithmetic mean of the natural logs, which carries the
        exact product-root semantics without overflowing for large m.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        arr = arr[np.newaxis]
    if arr.shape[-1] < 1:
        raise ArityError("need at least one value")
    ok = np.isfinite(arr) & (arr > 0.0)
    if not ok.all():
        bad = arr[~ok].ravel()[0]
        raise DomainError(f"geometric mean needs positive finite values, got {bad!r}")
    out = np.exp(np.mean(np.log(arr), axis=-1))
    return _scalar_or_array(out, out.ndim == 0)


def _log_weighted_kernel(arr):
    # arr: (..., k), every row strictly on one side of 1.  The weighted sum
    # is clipped into [min, max]: rounding could otherwise push the value
    # of a (near-)constant tuple one ulp outside the defining sandwich.
    logs = np.log(arr)
    total = logs.sum(axis=-1, keepdims=True)
    loo = np.exp((total - logs) / (arr.shape[-1] - 1))
    val = (logs * loo).sum(axis=-1) / total[..., 0]
    return np.clip(val, arr.min(axis=-1), arr.max(axis=-1))


def _check_one_sided(arr):
    # rows must avoid the band around 1 and must not mix sides
    if not (np.isfinite(arr).all() and (arr > 0.0).all()):
        bad = arr[~(np.isfinite(arr) & (arr > 0.0))].ravel()[0]
        raise DomainError(f"coordinate {bad!r} is not a positive finite value")
    near = np.abs(arr - 1.0) < NEAR_ONE_EXCLUSION
    if near.any():
        bad = arr[near].ravel()[0]
        raise DomainError(
            f"coordinate {bad!r} lies within {NEAR_ONE_EXCLUSION} of 1")
    above = (arr > 1.0).all(axis=-1)
    below = (arr < 1.0).all(axis=-1)
    mixed = ~(above | below)
    if mixed.any():
        row = arr[mixed][0] if arr.ndim > 1 else arr
        raise DomainError(
            f"tuple {np.asarray(row).tolist()} mixes coordinates on both sides of 1")


def log_cauchy_mean(point):
    """k-variable mean weighting leave-one-out geometric means by logs.

    Parameters
    ----------
    point : MeanPoint or array_like, shape (..., k)
        k >= 2 coordinates, either all in (1, +inf) or all in (0, 1); the
        two sides may vary row by row.  Coordinates within 1e-12 of 1 are
        rejected because the log weights lose all precision there.

    Returns
    -------
    float or ndarray
        The weighted sum; it lies in [min, max] of the tuple and strictly
        inside for nonconstant tuples.

    Raises
    ------
    DomainError
        If a tuple mixes sides of 1 or touches the exclusion band.
    ArityError
        If fewer than two coordinates are supplied.
    """
    if isinstance(point, MeanPoint) and point.domain is Domain.POSITIVE:
        raise DomainError("point must live on (1,+inf) or (0,1); "
                          "use extended_mean on (0,+inf)")
    arr, scalar = _as_batch(point)
    _check_one_sided(arr)
    return _scalar_or_array(_log_weighted_kernel(arr), scalar)


def extended_mean(point):
    """Increasing extension of :func:`log_cauchy_mean` to positive tuples.

    Equals :func:`log_cauchy_mean` (same code path, bit for bit) on tuples
    lying entirely in (0,1) or entirely in (1,+inf), and is exactly 1 on
    tuples that straddle or touch 1.  Coordinates inside the 1e-12
    exclusion band count as touching.
    """
    arr, scalar = _as_batch(point)
    ok = np.isfinite(arr) & (arr > 0.0)
    if not ok.all():
        bad = arr[~ok].ravel()[0]
        raise DomainError(f"coordinate {bad!r} is not a positive finite value")
    clear = np.abs(arr - 1.0) >= NEAR_ONE_EXCLUSION
    above = ((arr > 1.0) & clear).all(axis=-1)
    below = ((arr < 1.0) & clear).all(axis=-1)
    pure = above | below
    out = np.ones(arr.shape[:-1], dtype=float)
    if pure.any():
        flat = arr.reshape(-1, arr.shape[-1])
        mask = pure.reshape(-1)
        vals = _log_weighted_kernel(flat[mask])
        res = out.reshape(-1)
        res[mask] = vals
        out = res.reshape(arr.shape[:-1])
    return _scalar_or_array(out, scalar)


def involutory_conjugate(mean):
    """Conjugate a mean evaluator through x -> 1/x.

    Returns the evaluator  x |-> 1 / mean(1/x_1, ..., 1/x_k),  which maps
    means on (1,+inf)^k to means on (0,1)^k and back.  Applying the
    construction twice returns the original values up to rounding.
    Domain errors raised by ``mean`` at the reciprocal point propagate.
    """
    def conjugate(point):
        arr, scalar = _as_batch(point)
        out = 1.0 / np.asarray(mean(1.0 / arr), dtype=float)
        return _scalar_or_array(out, scalar)

    conjugate.__name__ = f"involutory_conjugate_of_{getattr(mean, '__name__', 'mean')}"
    return conjugate


def complementary_mean(mean):
    """Complementary evaluator N(x, y) = x*y / mean(x, y).

    Two-variable only.  By construction the geometric mean of
    (N(x, y), mean(x, y)) reproduces the geometric mean of (x, y) exactly
    up to rounding, so the pair leaves the geometric mean invariant.
    """
    def complement(point):
        arr, scalar = _as_batch(point)
        if arr.shape[-1] != 2:
            raise ArityError("complementary mean is a two-variable construction")
        m = np.asarray(mean(arr), dtype=float)
        if not np.isfinite(m).all() or (m <= 0.0).any():
            raise EvaluationError("inner mean returned a nonpositive or "
                                  "non-finite value")
        out = arr[..., 0] * arr[..., 1] / m
        return _scalar_or_array(out, scalar)

    complement.__name__ = f"complementary_of_{getattr(mean, '__name__', 'mean')}"
    return complement


@dataclass(frozen=True)
class MeanPropertyReport:
    """Numeric residual summary for the defining mean properties.

    Bounds, reflexivity and symmetry residuals should vanish for a mean;
    the homogeneity, translativity and monotonicity entries are purely
    informational probes (this family of means is neither homogeneous nor
    translative, and monotonicity in each variable is not asserted).
    """

    domain: Domain
    k: int
    sample_count: int
    seed: int
    max_bounds_violation: float
    max_reflexivity_residual: float
    strict_ok: bool
    strict_witness: tuple
    strict_counterexample: tuple
    max_symmetry_residual: float
    max_homogeneity_residual: float
    max_translativity_residual: float
    monotonicity_violations: int
    min_monotone_step: float
    nan_count: int


def _safe_rows(mean, arr):
    """Evaluate ``mean`` per row, turning failures into NaN."""
    try:
        vals = np.asarray(mean(arr), dtype=float)
        if vals.shape == arr.shape[:-1]:
            return vals
    except Exception:
        pass
    out = np.empty(arr.shape[:-1], dtype=float)
    flat_in = arr.reshape(-1, arr.shape[-1])
    flat_out = out.reshape(-1)
    for i, row in enumerate(flat_in):
        try:
            flat_out[i] = float(mean(row))
        except Exception:
            flat_out[i] = np.nan
    return out


def probe_mean_properties(mean, domain, k, sample_count, seed):
    """Probe a mean evaluator on deterministic pseudo-random tuples.

    Draws ``sample_count`` tuples per property from Philox streams keyed
    by (seed, property), so the report is identical for identical seeds
    regardless of platform or partitioning.  Failed evaluations are
    counted, not raised.
    """
    if sample_count < 1:
        raise ParameterError("sample_count must be at least 1")
    tuples = sampling.sample_tuples(domain, k, sample_count, seed, stream_id=1)
    vals = _safe_rows(mean, tuples)
    nan_count = int(np.isnan(vals).sum())
    good = ~np.isnan(vals)
    lo = tuples.min(axis=1)
    hi = tuples.max(axis=1)
    viol = np.maximum(lo - vals, vals - hi)
    max_bounds = float(np.max(np.maximum(viol[good], 0.0), initial=0.0))

    # reflexivity on constant tuples
    diag = sampling.sample_coordinates(domain, (sample_count,), seed, stream_id=2)
    const = np.repeat(diag[:, None], k, axis=1)
    dvals = _safe_rows(mean, const)
    dgood = ~np.isnan(dvals)
    nan_count += int(np.isnan(dvals).sum())
    max_reflex = float(np.max(np.abs(dvals[dgood] - diag[dgood]), initial=0.0))

    # strictness on well-spread tuples
    spread = sampling.sample_spread_tuples(domain, k, sample_count, seed, stream_id=3)
    svals = _safe_rows(mean, spread)
    sgood = ~np.isnan(svals)
    nan_count += int(np.isnan(svals).sum())
    s_lo = spread.min(axis=1)
    s_hi = spread.max(axis=1)
    strict = (s_lo < svals) & (svals < s_hi)
    strict_ok = bool(strict[sgood].all())
    witness = counterexample = ()
    if sgood.any():
        first_ok = np.flatnonzero(strict & sgood)
        if first_ok.size:
            witness = tuple(spread[first_ok[0]])
        first_bad = np.flatnonzero(~strict & sgood)
        if first_bad.size:
            counterexample = tuple(spread[first_bad[0]])

    # symmetry under seeded permutations
    rng = sampling.stream(seed, 4)
    perms = np.argsort(rng.random((sample_count, k)), axis=1)
    permuted = np.take_along_axis(tuples, perms, axis=1)
    pvals = _safe_rows(mean, permuted)
    both = good & ~np.isnan(pvals)
    denom = np.maximum(np.abs(vals[both]), 1e-300)
    max_symmetry = float(np.max(np.abs(pvals[both] - vals[both]) / denom,
                                initial=0.0))

    # homogeneity and translativity residuals at domain-safe t
    rng_t = sampling.stream(seed, 5)
    if domain is Domain.UNIT_INTERVAL:
        t_scale = rng_t.uniform(0.1, 0.9, sample_count)
        t_shift = rng_t.uniform(0.0, 1.0, sample_count) * (1.0 - hi) * 0.5
    else:
        t_scale = np.exp(rng_t.uniform(0.0, np.log(4.0), sample_count))
        t_shift = rng_t.uniform(0.0, 2.0, sample_count)
    hvals = _safe_rows(mean, tuples * t_scale[:, None])
    hboth = good & ~np.isnan(hvals)
    nan_count += int(np.isnan(hvals).sum())
    max_homog = float(np.max(np.abs(hvals[hboth] - t_scale[hboth] * vals[hboth]),
                             initial=0.0))
    tvals = _safe_rows(mean, tuples + t_shift[:, None])
    tboth = good & ~np.isnan(tvals)
    nan_count += int(np.isnan(tvals).sum())
    max_transl = float(np.max(np.abs(tvals[tboth] - (vals[tboth] + t_shift[tboth])),
                              initial=0.0))

    # monotone probe: bump one coordinate upward, watch the value
    rng_m = sampling.stream(seed, 6)
    which = rng_m.integers(0, k, sample_count)
    bumped = tuples.copy()
    if domain is Domain.UNIT_INTERVAL:
        room = (1.0 - NEAR_ONE_EXCLUSION - hi) * 0.5
        step = np.minimum(0.01, np.maximum(room, 0.0))
    else:
        step = np.full(sample_count, 0.01)
    bumped[np.arange(sample_count), which] += step
    mvals = _safe_rows(mean, bumped)
    mboth = good & ~np.isnan(mvals) & (step > 0)
    deltas = mvals[mboth] - vals[mboth]
    monotone_violations = int((deltas < -1e-12).sum())
    min_step = float(np.min(deltas, initial=np.inf))

    return MeanPropertyReport(
        domain=domain, k=k, sample_count=sample_count, seed=int(seed),
        max_bounds_violation=max_bounds,
        max_reflexivity_residual=max_reflex,
        strict_ok=strict_ok,
        strict_witness=witness,
        strict_counterexample=counterexample,
        max_symmetry_residual=max_symmetry,
        max_homogeneity_residual=max_homog,
        max_translativity_residual=max_transl,
        monotonicity_violations=monotone_violations,
        min_monotone_step=min_step,
        nan_count=nan_count,
    )
