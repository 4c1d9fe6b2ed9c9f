"""Fundamental-domain machinery for the scaling equation f(x) = (x/k) f(x**k).

Fixing a base point p > 1 splits (1, +inf) into half-open tiles
[p**(k**n), p**(k**(n+1))), n running over the integers.  Data for f on the
base tile [p, p**k) determines a solution everywhere through

    f(x) = k**n * x**((k**-n - 1)/(k - 1)) * f0(x**(k**-n)),   x in tile n,

and the glued solution is continuous exactly when f0 is continuous and its
one-sided limit at p**k equals (k/p) * f0(p).

Everything here works in log-x space, so tiles whose endpoints overflow
doubles are still usable through the ``*_at_log`` entry points.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .domains import Domain
from .errors import (ArityError, DomainError, EvaluationError,
                     InterpolationError, ParameterError, RangeError,
                     TableFormatError)
from .generators import Generator, Sign

__all__ = [
    "TabulatedFunction", "TiledExtension", "load_table", "table_generator",
    "tile_index", "tile_index_log", "extend", "extend_at_log",
    "log_extend_at_log", "continuity_defect", "reflexivity_residual",
]

#: Largest |tile index| the extension will evaluate; beyond this the
#: exponent towers k**|n| serve no desk-scale purpose and quickly leave
#: double range for most base points.
TILE_CAP = 64

#: Relative log-space distance under which an input counts as sitting on a
#: tile boundary.  Membership itself stays decided by exact comparisons
#: (half-open tiles, lower tile keeps points just below a boundary); the
#: flag only marks that rounding could have moved the input across.
BOUNDARY_FLAG_TOL = 1e-15


@dataclass(frozen=True)
class TabulatedFunction:
    """Piecewise-linear interpolant with log-x abscissae.

    Linear interpolation of the sampled values against log x preserves the
    single sign of the data.  Evaluation outside the sampled hull raises
    InterpolationError.  Interpolation error scales with the squared node
    spacing: 64 points per tile give about 1e-5 relative accuracy for
    smooth data, about a thousand give 1e-7.
    """

    log_abscissae: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        la = np.asarray(self.log_abscissae, dtype=float)
        va = np.asarray(self.values, dtype=float)
        if la.ndim != 1 or la.shape != va.shape or la.size < 2:
            raise ParameterError("table needs two or more (x, f) pairs")
        if not (np.diff(la) > 0).all():
            raise ParameterError("table abscissae must be strictly increasing")
        if not np.isfinite(va).all() or (va == 0).any() or \
                not (np.sign(va) == np.sign(va[0])).all():
            raise ParameterError("table values must be finite, nonzero and "
                                 "all of one sign")
        object.__setattr__(self, "log_abscissae", la)
        object.__setattr__(self, "values", va)

    @property
    def sign(self):
        return Sign.POSITIVE if self.values[0] > 0 else Sign.NEGATIVE

    def at_log(self, s):
        s_arr = np.asarray(s, dtype=float)
        lo, hi = self.log_abscissae[0], self.log_abscissae[-1]
        out_of_hull = (s_arr < lo) | (s_arr > hi)
        if out_of_hull.any():
            bad = s_arr[out_of_hull].ravel()[0] if s_arr.ndim else s_arr
            raise InterpolationError(
                f"x = {math.exp(float(bad))!r} is outside the table hull "
                f"[{math.exp(lo)!r}, {math.exp(hi)!r}]")
        out = np.interp(s_arr, self.log_abscissae, self.values)
        return float(out) if s_arr.ndim == 0 else out

    def __call__(self, x):
        return self.at_log(np.log(np.asarray(x, dtype=float)))

    def right_limit_at_log(self, s):
        """One-sided limit at s from the left, extending the last segment.

        Exact for the interpolant itself; used to estimate the gluing
        limit when the dyadic approach points would leave the hull.
        """
        la, va = self.log_abscissae, self.values
        slope = (va[-1] - va[-2]) / (la[-1] - la[-2])
        return float(va[-1] + slope * (float(s) - la[-1]))


def load_table(path):
    """Read a UTF-8 CSV with header ``x,f`` into a TabulatedFunction.

    Rows must be strictly increasing in x with x > 0.  Any malformed line
    is reported with its 1-based line number.
    """
    xs, fs = [], []
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise TableFormatError("line 1: empty table file")
        if [h.strip() for h in header] != ["x", "f"]:
            raise TableFormatError(f"line 1: header must be 'x,f', got "
                                   f"{','.join(header)!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise TableFormatError(f"line {lineno}: expected two fields")
            try:
                x = float(row[0])
                f = float(row[1])
            except ValueError:
                raise TableFormatError(
                    f"line {lineno}: non-numeric entry {row!r}")
            if not (math.isfinite(x) and x > 0):
                raise TableFormatError(f"line {lineno}: x must be a positive "
                                       f"finite number, got {row[0]!r}")
            if xs and x <= xs[-1]:
                raise TableFormatError(
                    f"line {lineno}: abscissae must be strictly increasing")
            xs.append(x)
            fs.append(f)
    if len(xs) < 2:
        raise TableFormatError(f"line {len(xs) + 1}: need at least two rows")
    try:
        return TabulatedFunction(np.log(np.asarray(xs)), np.asarray(fs))
    except ParameterError as exc:
        raise TableFormatError(str(exc))


def table_generator(path, label=None):
    """Wrap a table file as a Generator for quotient evaluation.

    The interval is inferred from the abscissae: all above 1 gives
    (1,+inf), all inside (0,1) gives the unit interval.
    """
    tab = load_table(path) if not isinstance(path, TabulatedFunction) else path
    la = tab.log_abscissae
    if (la > 0).all():
        domain = Domain.ABOVE_ONE
    elif (la < 0).all():
        domain = Domain.UNIT_INTERVAL
    else:
        raise ParameterError("table abscissae must stay on one side of 1")
    return Generator(eval=tab, domain=domain, sign=tab.sign,
                     label=label or f"table({getattr(path, 'name', path)})",
                     eval_log=tab.at_log)


@dataclass(frozen=True)
class TiledExtension:
    """Solution of f(x) = (x/k) f(x**k) built from data on one tile.

    ``f0`` is either a TabulatedFunction or any callable of x defined on
    [p, p**k) with a single sign.  ``nonnegative_tiles`` restricts the
    domain to [p, +inf), i.e. tiles n >= 0, matching the variant of the
    construction that never descends below the base interval.
    """

    p: float
    k: int
    f0: object
    nonnegative_tiles: bool = False
    tile_cap: int = TILE_CAP

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p > 1.0):
            raise ParameterError(f"base point must satisfy p > 1, got {self.p!r}")
        if self.k < 2:
            raise ArityError(f"exponent k must be at least 2, got {self.k}")
        logp = math.log(self.p)
        if isinstance(self.f0, TabulatedFunction):
            la = self.f0.log_abscissae
            if la[0] < logp - 1e-12 or la[-1] >= self.k * logp:
                raise ParameterError(
                    "table abscissae must lie inside the base tile "
                    f"[{self.p!r}, {self.p ** self.k!r})")
        else:
            # spot-check that closed-form base data keeps one sign
            probes = [logp + t * (self.k - 1) * logp for t in
                      (0.0, 0.17, 0.43, 0.71, 0.96)]
            vals = [self._f0_at_log(s) for s in probes]
            if not all(math.isfinite(v) for v in vals) or \
                    0.0 in vals or len({v > 0 for v in vals}) != 1:
                raise ParameterError(
                    "base data must be finite and of one sign on the tile "
                    f"[{self.p!r}, {self.p ** self.k!r})")

    def _f0_at_log(self, s):
        if hasattr(self.f0, "at_log"):
            return float(self.f0.at_log(s))
        return float(self.f0(math.exp(s)))

    def _f0_at(self, x):
        if hasattr(self.f0, "at_log"):
            return float(self.f0.at_log(math.log(x)))
        return float(self.f0(x))

    def _locate(self, log_x):
        n, near = _locate_tile(log_x, math.log(self.p), self.k)
        if self.nonnegative_tiles and n < 0:
            raise DomainError(
                f"x = {math.exp(log_x)!r} lies below the base point "
                f"{self.p!r} of a nonnegative-tile extension")
        if abs(n) > self.tile_cap:
            raise RangeError(
                f"tile index {n} exceeds the guarded cap {self.tile_cap}",
                tile=n)
        return n, near

    def value_at_log(self, log_x):
        """f at the point whose log is ``log_x``."""
        n, _ = self._locate(log_x)
        logp = math.log(self.p)
        kmn = float(self.k) ** (-n)
        inner = kmn * log_x
        # fold boundary rounding back into the base tile
        inner = min(max(inner, logp), math.nextafter(self.k * logp, 0.0))
        power = ((kmn - 1.0) / (self.k - 1.0)) * log_x
        return float(self.k) ** n * math.exp(power) * self._f0_at_log(inner)

    def log_value_at_log(self, log_x):
        """log f at the point whose log is ``log_x``.

        Stays meaningful on tiles whose values underflow or overflow
        doubles; requires positive f0.
        """
        n, _ = self._locate(log_x)
        logp = math.log(self.p)
        kmn = float(self.k) ** (-n)
        inner = min(max(kmn * log_x, logp), math.nextafter(self.k * logp, 0.0))
        f0v = self._f0_at_log(inner)
        if f0v <= 0:
            raise EvaluationError("log of the extension needs positive base data")
        return n * math.log(self.k) \
            + ((kmn - 1.0) / (self.k - 1.0)) * log_x + math.log(f0v)

    def value(self, x):
        x = float(x)
        if not (math.isfinite(x) and x > 1.0):
            raise DomainError(f"extension is defined on (1,+inf), got {x!r}")
        log_x = math.log(x)
        n, _ = self._locate(log_x)
        if n == 0:
            # all prefactors are exactly 1 on the base tile; skip the
            # exp(log x) round trip so f0 is reproduced bit for bit
            return self._f0_at(x)
        return self.value_at_log(log_x)

    def __call__(self, x):
        return self.value(x)


def _locate_tile(log_x, logp, k):
    """Tile index from exact half-open comparisons in log space."""
    if not (math.isfinite(log_x) and log_x > 0.0):
        raise DomainError(f"need x > 1, got log x = {log_x!r}")
    n = math.floor(math.log(log_x / logp) / math.log(k))
    for _ in range(2):
        lower = float(k) ** n * logp
        upper = float(k) ** (n + 1) * logp
        if log_x < lower:
            n -= 1
        elif log_x >= upper:
            n += 1
        else:
            break
    lower = float(k) ** n * logp
    upper = float(k) ** (n + 1) * logp
    if not (lower <= log_x < upper):
        raise EvaluationError(
            f"tile search failed to settle for log x = {log_x!r}")
    near = (log_x - lower) <= BOUNDARY_FLAG_TOL * abs(log_x) or \
           (upper - log_x) <= BOUNDARY_FLAG_TOL * abs(log_x)
    return n, near


def tile_index(x, p, k, flag=False):
    """Index n of the half-open tile [p**(k**n), p**(k**(n+1))) holding x.

    Computed as floor(log(log x / log p) / log k) followed by a correction
    step using exact comparisons of log x against k**n * log p.  With
    ``flag=True`` also returns whether x sits within rounding distance of
    a boundary (such points stay in the lower tile by the exact half-open
    comparison, and the flag marks the ambiguity).
    """
    x = float(x)
    if not (math.isfinite(x) and x > 1.0):
        raise DomainError(f"tiles cover (1,+inf) only, got {x!r}")
    return tile_index_log(math.log(x), p, k, flag=flag)


def tile_index_log(log_x, p, k, flag=False):
    """Same as :func:`tile_index` but takes log x directly."""
    if not (math.isfinite(p) and p > 1.0):
        raise ParameterError(f"base point must satisfy p > 1, got {p!r}")
    if k < 2:
        raise ArityError(f"exponent k must be at least 2, got {k}")
    n, near = _locate_tile(float(log_x), math.log(p), k)
    return (n, near) if flag else n


def extend(ext, x):
    """Value at x > 1 of the tiled extension (module-level convenience)."""
    return ext.value(x)


def extend_at_log(ext, log_x):
    """Value of the extension at the point whose log is ``log_x``."""
    return ext.value_at_log(float(log_x))


def log_extend_at_log(ext, log_x):
    """log of the extension at the point whose log is ``log_x``."""
    return ext.log_value_at_log(float(log_x))


def continuity_defect(ext, rel_tol=1e-8):
    """Gap in the gluing condition; 0 means the extension is continuous.

    Compares the one-sided limit of f0 at p**k (estimated on the dyadic
    approach p**k * (1 - 2**-j), j = 20..40, with a stabilisation check)
    against (k/p) * f0(p).  For tabulated data the interpolant's exact
    last-segment limit replaces the dyadic estimate, since the approach
    points would leave the hull.  Returns None when the dyadic estimate
    does not stabilise.
    """
    logp = math.log(ext.p)
    target = (ext.k / ext.p) * ext._f0_at_log(logp)
    if isinstance(ext.f0, TabulatedFunction):
        limit = ext.f0.right_limit_at_log(ext.k * logp)
        return abs(limit - target)
    js = np.arange(20, 41)
    approach = ext.k * logp + np.log1p(-(2.0 ** -js))
    vals = np.array([ext._f0_at_log(s) for s in approach])
    if not np.isfinite(vals).all():
        return None
    tail = vals[-3:]
    diffs = np.abs(np.diff(tail))
    if not (diffs <= rel_tol * np.maximum(np.abs(tail[1:]), 1e-300)).all():
        return None
    return abs(float(vals[-1]) - target)


def reflexivity_residual(f, x, k):
    """f(x) - (x/k) * f(x**k); zero iff the scaling equation holds at x.

    Accepts a Generator or a TiledExtension.  The power x**k is always fed
    through a log-argument entry point, so it may exceed double range; the
    second term is assembled in log space when the generator can report
    log|f|, which keeps the residual meaningful when f(x**k) underflows.
    """
    x = float(x)
    if not (math.isfinite(x) and x > 1.0):
        raise DomainError(f"the scaling equation is probed on (1,+inf), got {x!r}")
    log_x = math.log(x)
    if isinstance(f, TiledExtension):
        if k != f.k:
            raise ParameterError(
                f"probe arity {k} does not match the extension's k = {f.k}")
        v1 = f.value_at_log(log_x)
        term_log = log_x - math.log(k) + f.log_value_at_log(k * log_x)
        term = math.exp(term_log) if term_log < 709.0 else math.inf
        if math.isinf(term):
            raise RangeError(f"(x/k) f(x**k) overflows at x = {x!r}")
        return v1 - term
    if isinstance(f, Generator):
        if k < 2:
            raise ArityError(f"arity must be at least 2, got {k}")
        v1 = float(np.asarray(f.at_log(log_x), dtype=float))
        log_abs = float(np.asarray(f.log_abs_at_log(k * log_x), dtype=float))
        sign = 1.0 if f.sign is Sign.POSITIVE else -1.0
        term_log = log_x - math.log(k) + log_abs
        if term_log >= 709.0:
            raise RangeError(f"(x/k) f(x**k) overflows at x = {x!r}")
        return v1 - sign * math.exp(term_log)
    raise ParameterError("f must be a Generator or a TiledExtension")
