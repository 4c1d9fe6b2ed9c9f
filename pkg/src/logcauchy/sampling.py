"""Deterministic seeded sampling on top of the Philox counter-based generator.

A 64-bit seed plus a stream index select an independent Philox stream (seed
in the low key word, stream id in the high one), so every consumer of
randomness draws from its own reproducible sequence and identical seeds give
identical results on every platform and in any evaluation order.
"""

import numpy as np

from .domains import Domain

_MASK64 = (1 << 64) - 1

#: Default coordinate window on (1, +inf), matching the desk-scale ranges
#: the verification suites sweep.
DEFAULT_LOW = 1.0 + 1e-6
DEFAULT_HIGH = 1e3


def stream(seed, stream_id=0):
    """Independent ``numpy.random.Generator`` for (seed, stream_id)."""
    key = (int(seed) & _MASK64) | ((int(stream_id) & _MASK64) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def _log_uniform(rng, lo, hi, shape):
    # uniform in log x between lo and hi (both > 0)
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size=shape))


def sample_coordinates(domain, shape, seed, stream_id=0,
                       low=DEFAULT_LOW, high=DEFAULT_HIGH):
    """Log-uniform coordinates strictly inside ``domain``.

    ``low``/``high`` bound the coordinates on (1, +inf); the unit interval
    mirrors them through x -> 1/x, and (0, +inf) draws from the union of
    both sides.
    """
    rng = stream(seed, stream_id)
    above = _log_uniform(rng, low, high, shape)
    if domain is Domain.ABOVE_ONE:
        return above
    if domain is Domain.UNIT_INTERVAL:
        return 1.0 / above
    flip = rng.random(size=shape) < 0.5
    return np.where(flip, 1.0 / above, above)


def sample_tuples(domain, k, count, seed, stream_id=0,
                  low=DEFAULT_LOW, high=DEFAULT_HIGH, spread="mixed"):
    """Deterministic (count, k) array of argument tuples inside ``domain``.

    ``spread="mixed"`` interleaves three shapes that maximise the
    discrimination power of sampling-based equality verdicts: wide
    log-uniform tuples, tuples crowded next to 1, and near-diagonal tuples
    with a relative jitter of 1e-6.  ``spread="wide"`` keeps only the first
    shape.
    """
    rng = stream(seed, stream_id)
    wide = _log_uniform(rng, low, high, (count, k))
    if spread == "wide":
        out = wide
    elif spread == "mixed":
        out = wide
        third = count // 3
        if third:
            # crowded next to 1: offsets between 1e-6 and 1e-2
            eps = np.exp(rng.uniform(np.log(1e-6), np.log(1e-2), (third, k)))
            out[:third] = 1.0 + eps
            # near-diagonal: one base point per tuple, multiplicative jitter
            base = _log_uniform(rng, low * 2, high, (third, 1))
            jitter = 1.0 + rng.uniform(-1e-6, 1e-6, (third, k))
            out[third:2 * third] = base * jitter
    else:
        raise ValueError(f"unknown spread {spread!r}")
    if domain is Domain.UNIT_INTERVAL:
        out = 1.0 / out
    elif domain is Domain.POSITIVE:
        # flip coordinates independently so tuples may straddle 1
        flip = rng.random(size=out.shape) < 0.5
        out = np.where(flip, 1.0 / out, out)
    return out


def sample_spread_tuples(domain, k, count, seed, stream_id=0, min_gap=0.1):
    """Nonconstant tuples whose coordinate gap is at least ``min_gap``.

    Used for strictness witnesses, where a tiny spread could make the
    strict sandwich inequalities indistinguishable from rounding.
    """
    if domain is Domain.UNIT_INTERVAL:
        lo, hi = 1.0 / DEFAULT_HIGH, 1.0 / (1.0 + 1e-2)
    else:
        lo, hi = 1.0 + 1e-2, DEFAULT_HIGH
    rng = stream(seed, stream_id)
    out = _log_uniform(rng, lo, hi, (count, k))
    for _ in range(64):
        gap = out.max(axis=1) - out.min(axis=1)
        narrow = gap < min_gap
        if not narrow.any():
            break
        out[narrow] = _log_uniform(rng, lo, hi, (int(narrow.sum()), k))
    else:
        # force the gap on whatever stragglers remain
        idx = np.flatnonzero(out.max(axis=1) - out.min(axis=1) < min_gap)
        if domain is Domain.UNIT_INTERVAL:
            out[idx, 0] = lo
            out[idx, 1] = hi
        else:
            out[idx, 0] = hi / 2
            out[idx, 1] = hi / 2 + 2 * min_gap
    return out
