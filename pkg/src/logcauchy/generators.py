"""Generators and the k-variable quotient they induce.

A generator is a single-signed function f on a multiplication-closed
interval; its k-variable quotient is

    (f(x_1) + ... + f(x_k)) / f(x_1 * ... * x_k).

The quotient is reflexive, and hence a candidate mean, exactly when f is a
scale multiple of the canonical shape  c * log(x) * x**(-1/(k-1)),  and two
generators induce the same quotient exactly when they are proportional.
This module provides the built-in generator catalog, the quotient
evaluator, and seeded numeric tests for both facts.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import sampling
from .domains import Domain, MeanPoint
from .errors import (ArityError, DomainError, EvaluationError,
                     ParameterError)

__all__ = [
    "Sign", "Generator", "QuotientSpec",
    "canonical_generator", "powerlog_generator", "affine_generator",
    "scaled", "offset",
    "quotient_eval", "proportionality_constant", "quotient_equal",
    "EqualityReport", "parse_generator_spec",
]


class Sign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class Generator:
    """Evaluable single-signed function on a multiplication-closed interval.

    ``eval`` maps x to f(x) and must keep the declared sign on the whole
    interval; it is expected to accept numpy arrays.  ``eval_log``
    (optional) maps s = log x to f(exp(s)), so products whose exponent sum
    is huge never have to be materialised; it defaults to exp-then-eval.
    ``log_eval_log`` (optional) maps s to log|f(exp(s))| for transforms
    that need the value's logarithm far outside double range.
    """

    eval: callable
    domain: Domain
    sign: Sign
    label: str
    eval_log: callable = None
    log_eval_log: callable = None

    def __call__(self, x):
        return self.eval(x)

    def at_log(self, s):
        """f(exp(s)) through the log entry point when available."""
        if self.eval_log is not None:
            return self.eval_log(s)
        return self.eval(np.exp(np.asarray(s, dtype=float)))

    def log_abs_at_log(self, s):
        """log|f(exp(s))|, exact for generators that provide it analytically."""
        if self.log_eval_log is not None:
            return self.log_eval_log(s)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(np.asarray(self.at_log(s), dtype=float)))

    def spot_check_sign(self, samples=64, seed=0):
        """Spot-check the declared sign on a seeded grid of the domain."""
        xs = sampling.sample_coordinates(self.domain, (samples,), seed,
                                         stream_id=90)
        vals = np.asarray(self.eval(xs), dtype=float)
        want_positive = self.sign is Sign.POSITIVE
        ok = np.isfinite(vals) & ((vals > 0) if want_positive else (vals < 0))
        if not ok.all():
            x_bad = xs[~ok][0]
            raise ParameterError(
                f"generator {self.label!r} declared {self.sign.value} but "
                f"f({x_bad!r}) = {vals[~ok][0]!r}")
        return True


@dataclass(frozen=True)
class QuotientSpec:
    """A generator together with the arity of its quotient."""

    f: Generator
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ArityError(f"quotient arity must be at least 2, got {self.k}")


def _gated(domain):
    if domain not in (Domain.ABOVE_ONE, Domain.UNIT_INTERVAL):
        raise ParameterError("generator domain must be (1,+inf) or (0,1)")
    return domain


def canonical_generator(c, k, domain=Domain.ABOVE_ONE):
    """The unique (up to scale) generator whose quotient is a mean.

    f(x) = c * log(x) * x**(-1/(k-1)), evaluated as c * s * exp(-s/(k-1))
    with s = log x.  The sign of c must match the interval so that f stays
    positive: c > 0 on (1,+inf) and c < 0 on (0,1), where log x < 0.
    """
    _gated(domain)
    if c == 0:
        raise ParameterError("scale constant c must be nonzero")
    if k < 2:
        raise ArityError(f"arity must be at least 2, got {k}")
    if (domain is Domain.ABOVE_ONE) != (c > 0):
        raise ParameterError(
            f"sign/domain mismatch: c={c!r} does not give a positive "
            f"generator on {domain.value}")
    a = 1.0 / (k - 1)

    def ev_log(s):
        s = np.asarray(s, dtype=float)
        return c * s * np.exp(-a * s)

    def ev(x):
        return ev_log(np.log(np.asarray(x, dtype=float)))

    def log_ev_log(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore"):
            return np.log(abs(c)) + np.log(np.abs(s)) - a * s

    return Generator(eval=ev, domain=domain, sign=Sign.POSITIVE,
                     label=f"canonical(c={c},k={k})",
                     eval_log=ev_log, log_eval_log=log_ev_log)


def powerlog_generator(c, alpha, domain=Domain.ABOVE_ONE):
    """Power-log family f(x) = c * log(x) * x**(-alpha).

    With alpha != 1/(k-1) the induced quotient is not reflexive, which is
    exactly what negative tests need.
    """
    _gated(domain)
    if c == 0:
        raise ParameterError("scale constant c must be nonzero")
    positive_values = (c > 0) == (domain is Domain.ABOVE_ONE)

    def ev_log(s):
        s = np.asarray(s, dtype=float)
        return c * s * np.exp(-alpha * s)

    def ev(x):
        return ev_log(np.log(np.asarray(x, dtype=float)))

    def log_ev_log(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore"):
            return np.log(abs(c)) + np.log(np.abs(s)) - alpha * s

    return Generator(eval=ev, domain=domain,
                     sign=Sign.POSITIVE if positive_values else Sign.NEGATIVE,
                     label=f"powerlog(c={c},alpha={alpha})",
                     eval_log=ev_log, log_eval_log=log_ev_log)


def affine_generator(a, b, domain=Domain.ABOVE_ONE):
    """Plumbing generator f(x) = a*x + b.

    May change sign inside the domain; the declared sign follows the
    leading coefficient, and evaluations through a zero of f surface as
    evaluation errors.
    """
    _gated(domain)
    if a == 0 and b == 0:
        raise ParameterError("affine generator must not vanish identically")

    def ev(x):
        return a * np.asarray(x, dtype=float) + b

    def ev_log(s):
        # overflow to inf is fine here; callers guard against it
        with np.errstate(over="ignore"):
            return a * np.exp(np.asarray(s, dtype=float)) + b

    return Generator(eval=ev, domain=domain,
                     sign=Sign.POSITIVE if a > 0 or (a == 0 and b > 0)
                     else Sign.NEGATIVE,
                     label=f"affine(a={a},b={b})", eval_log=ev_log)


def scaled(gen, c):
    """New generator c * f on the same interval (c nonzero, either sign)."""
    if c == 0:
        raise ParameterError("scale constant c must be nonzero")
    sign = gen.sign if c > 0 else (
        Sign.NEGATIVE if gen.sign is Sign.POSITIVE else Sign.POSITIVE)

    def ev(x):
        return c * np.asarray(gen.eval(x), dtype=float)

    ev_log = None
    if gen.eval_log is not None:
        def ev_log(s):
            return c * np.asarray(gen.eval_log(s), dtype=float)

    log_ev_log = None
    if gen.log_eval_log is not None:
        def log_ev_log(s):
            return np.log(abs(c)) + np.asarray(gen.log_eval_log(s), dtype=float)

    return Generator(eval=ev, domain=gen.domain, sign=sign,
                     label=f"{c}*{gen.label}",
                     eval_log=ev_log, log_eval_log=log_ev_log)


def offset(gen, delta):
    """New generator f + delta; breaks proportionality for delta != 0."""
    def ev(x):
        return np.asarray(gen.eval(x), dtype=float) + delta

    ev_log = None
    if gen.eval_log is not None:
        def ev_log(s):
            return np.asarray(gen.eval_log(s), dtype=float) + delta

    return Generator(eval=ev, domain=gen.domain, sign=gen.sign,
                     label=f"{gen.label}+{delta}", eval_log=ev_log)


def _quotient_coords(spec, point):
    if isinstance(point, MeanPoint):
        if point.domain is not spec.f.domain:
            raise DomainError(
                f"point domain {point.domain.value} does not match the "
                f"generator domain {spec.f.domain.value}")
        arr = point.as_array()
        scalar = True
    else:
        arr = np.asarray(point, dtype=float)
        scalar = arr.ndim == 1
    if arr.ndim == 0 or arr.shape[-1] != spec.k:
        raise ArityError(
            f"point must have exactly k={spec.k} coordinates, got shape {arr.shape}")
    ok = spec.f.domain.contains(arr)
    if not ok.all():
        bad = arr[~ok].ravel()[0]
        raise DomainError(
            f"coordinate {bad!r} outside {spec.f.domain.value}")
    return arr, scalar


def quotient_eval(spec, point):
    """Evaluate (f(x_1) + ... + f(x_k)) / f(x_1 * ... * x_k).

    The denominator argument is passed to the generator as the sum of the
    coordinate logs, never as the materialised product, so large k or
    large coordinates cannot overflow.

    Raises
    ------
    EvaluationError
        If f at the product is zero or non-finite, or the quotient comes
        out nonpositive (the generator then violates its sign contract).
    """
    arr, scalar = _quotient_coords(spec, point)
    num = np.asarray(spec.f.eval(arr), dtype=float).sum(axis=-1)
    s = np.log(arr).sum(axis=-1)
    den = np.asarray(spec.f.at_log(s), dtype=float)
    bad = ~np.isfinite(den) | (den == 0.0)
    if bad.any():
        bad_log = float(np.asarray(s)[bad].ravel()[0])
        raise EvaluationError(
            f"generator {spec.f.label!r} is zero or non-finite at the "
            f"product {math.exp(bad_log) if bad_log < 709.0 else math.inf!r}")
    out = num / den
    if not np.isfinite(out).all() or (out <= 0.0).any():
        raise EvaluationError(
            f"quotient of {spec.f.label!r} is nonpositive or non-finite; "
            "the generator does not keep one sign on its interval")
    return float(out) if scalar and out.ndim == 0 else out


def default_probe_points(domain=Domain.ABOVE_ONE):
    """Dyadic approach to 1 from inside the interval, 1 +/- 2**-j, j=10..40."""
    j = np.arange(10, 41)
    if domain is Domain.ABOVE_ONE:
        return 1.0 + 2.0 ** -j
    if domain is Domain.UNIT_INTERVAL:
        return 1.0 - 2.0 ** -j
    raise ParameterError("probe points are defined on (1,+inf) or (0,1)")


def proportionality_constant(f, g, probe_points=None, rel_tol=1e-8):
    """Numeric estimate of the limit of g/f at 1, or None.

    Evaluates the ratio along a monotone probe sequence approaching 1 and
    returns the last value once the final ratios stabilise (successive
    relative differences below ``rel_tol``).  Returns None when the ratios
    do not settle, e.g. for oscillatory ratios with no limit.
    """
    if probe_points is None:
        probe_points = default_probe_points(f.domain)
    xs = np.asarray(probe_points, dtype=float)
    fv = np.asarray(f.eval(xs), dtype=float)
    if (fv == 0.0).any() or not np.isfinite(fv).all():
        bad = xs[(fv == 0.0) | ~np.isfinite(fv)].ravel()[0]
        raise EvaluationError(f"generator {f.label!r} vanishes at probe "
                              f"point {bad!r}")
    gv = np.asarray(g.eval(xs), dtype=float)
    ratios = gv / fv
    if not np.isfinite(ratios).all():
        return None
    tail = ratios[-4:]
    if len(tail) < 4:
        return None
    diffs = np.abs(np.diff(tail))
    scale = np.maximum(np.abs(tail[1:]), 1e-300)
    if (diffs <= rel_tol * scale).all():
        return float(ratios[-1])
    return None


@dataclass(frozen=True)
class EqualityReport:
    """Outcome of the sampled equality test of two quotients.

    ``consistent`` records whether the sampled verdict and the
    proportionality probe agree, which is the two-way check of the
    equality-iff-proportionality characterisation.
    """

    verdict: str                    # "equal" or "unequal"
    max_residual: float
    witness: tuple                  # () when equal
    proportionality: float = None   # None when the ratio has no limit
    proportional_residual: float = None
    consistent: bool = True
    eval_errors: int = 0


def quotient_equal(f, g, k, sample_count=2000, seed=0, tol=1e-10):
    """Sampling-based verdict on whether two generators induce one quotient.

    The verdict is "equal" when the largest relative gap between the two
    quotients over seeded sample tuples (wide, near-1 and near-diagonal
    shapes) stays below ``tol``; it is cross-checked against the g/f limit
    probe so both directions of the proportionality characterisation are
    exercised.  Evaluation failures are counted and skipped, not raised.
    """
    if f.domain is not g.domain:
        raise DomainError("generators must share an interval")
    spec_f = QuotientSpec(f, k)
    spec_g = QuotientSpec(g, k)
    tuples = sampling.sample_tuples(f.domain, k, sample_count, seed,
                                    stream_id=11)
    errors = 0
    max_residual = 0.0
    witness = ()
    try:
        qf = np.asarray(quotient_eval(spec_f, tuples), dtype=float)
        qg = np.asarray(quotient_eval(spec_g, tuples), dtype=float)
        rel = np.abs(qg - qf) / np.abs(qf)
    except EvaluationError:
        qf = np.full(sample_count, np.nan)
        qg = np.full(sample_count, np.nan)
        for i, row in enumerate(tuples):
            try:
                qf[i] = quotient_eval(spec_f, row)
                qg[i] = quotient_eval(spec_g, row)
            except EvaluationError:
                errors += 1
        rel = np.abs(qg - qf) / np.abs(qf)
    good = np.isfinite(rel)
    if good.any():
        idx = int(np.nanargmax(np.where(good, rel, -np.inf)))
        max_residual = float(rel[idx])
        if max_residual >= tol:
            witness = tuple(tuples[idx])
    verdict = "equal" if max_residual < tol and good.any() else "unequal"

    try:
        const = proportionality_constant(f, g)
    except EvaluationError:
        const = None
    prop_residual = None
    if const is not None:
        xs = sampling.sample_coordinates(f.domain, (256,), seed, stream_id=12)
        fv = np.asarray(f.eval(xs), dtype=float)
        gv = np.asarray(g.eval(xs), dtype=float)
        prop_residual = float(np.max(np.abs(gv - const * fv) /
                                     np.maximum(np.abs(fv), 1e-300)))
    proportional = const is not None and prop_residual is not None \
        and prop_residual < max(tol, 1e-9)
    consistent = (verdict == "equal") == proportional
    return EqualityReport(verdict=verdict, max_residual=max_residual,
                          witness=witness, proportionality=const,
                          proportional_residual=prop_residual,
                          consistent=consistent, eval_errors=errors)


def parse_generator_spec(text, domain=Domain.ABOVE_ONE):
    """Parse the generator mini-grammar used by the command line.

    Accepted forms::

        canonical:c=<real>,k=<int>
        powerlog:c=<real>,alpha=<real>
        affine:a=<real>,b=<real>
        table:<path>

    Raises ParameterError on grammar violations; table files are loaded
    through the tiling module and raise TableFormatError on bad content.
    """
    head, sep, rest = text.partition(":")
    if not sep:
        raise ParameterError(f"generator spec {text!r} has no ':'")
    if head == "table":
        from . import tiling
        return tiling.table_generator(rest)
    params = {}
    for item in rest.split(","):
        key, eq, value = item.partition("=")
        if not eq:
            raise ParameterError(f"malformed parameter {item!r} in {text!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise ParameterError(f"non-numeric value {value!r} in {text!r}")
    try:
        if head == "canonical":
            return canonical_generator(params.pop("c"), int(params.pop("k")),
                                       domain)
        if head == "powerlog":
            return powerlog_generator(params.pop("c"), params.pop("alpha"),
                                      domain)
        if head == "affine":
            return affine_generator(params.pop("a"), params.pop("b"), domain)
    except KeyError as missing:
        raise ParameterError(f"generator spec {text!r} misses {missing}")
    raise ParameterError(f"unknown generator family {head!r}")
