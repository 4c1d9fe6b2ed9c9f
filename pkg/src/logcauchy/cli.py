"""Command-line front end.

Subcommands
-----------
eval      evaluate a catalog mean at a point (value, min, max, strictness)
quotient  evaluate the quotient of a generator at a point
extend    evaluate a tiled extension from a table file, with its
          continuity defect
check     run a verification suite; exit 0 on pass, 2 on fail
iterate   iterate a pair of means, optionally writing a trace CSV

Output is a flat JSON object per result with keys ``value``, ``residuals``
and ``verdict`` (plus subcommand-specific extras), or ``key = value``
lines with ``--format plain``.  Floats print in shortest round-trip form,
so identical argv and seed give byte-identical output.

Exit codes: 0 success or pass, 2 check failure, 64 usage error, 65 bad
input value (domain, arity, parameter and table errors), 70 evaluation
failure inside the numerics.

Generator specs follow the mini-grammar ``canonical:c=<real>,k=<int>``,
``powerlog:c=<real>,alpha=<real>``, ``affine:a=<real>,b=<real>``,
``table:<path>``.  Table files are UTF-8 CSV with header ``x,f`` and
strictly increasing x.
"""

import argparse
import json
import sys

import numpy as np

from . import analysis, dynamics, generators, means, sampling, tiling
from .domains import Domain, mean_report
from .errors import (ArityError, DomainError, EvaluationError,
                     InterpolationError, LogCauchyError, ParameterError,
                     RangeError, TableFormatError, TransformError)

USAGE_ERROR = 64
DATA_ERROR = 65
SOFTWARE_ERROR = 70

_DATA_ERRORS = (DomainError, ArityError, ParameterError, TableFormatError,
                RangeError, InterpolationError)
_EVAL_ERRORS = (EvaluationError, TransformError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _point(text):
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated point: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty point")
    return values


def _emit(payload, fmt):
    if fmt == "plain":
        for key, value in payload.items():
            print(f"{key} = {_plain(value)}")
    else:
        print(json.dumps(payload))


def _plain(value):
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_plain(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_plain(v) for v in value) + "]"
    return repr(value) if isinstance(value, float) else str(value)


def _floats(seq):
    return [float(v) for v in seq]


def _mean_for(name, k):
    if name == "Lk":
        return means.log_cauchy_mean
    if name == "Ext":
        return means.extended_mean
    if name == "Linv":
        if k == 2:
            return dynamics.log_cauchy_conjugate
        return means.involutory_conjugate(means.log_cauchy_mean)
    if name == "G":
        return means.geometric_mean
    raise ParameterError(f"unknown mean {name!r}")


def _cmd_eval(args):
    point = args.point
    if len(point) != args.k:
        raise ArityError(
            f"--k {args.k} does not match the {len(point)}-coordinate point")
    evaluator = _mean_for(args.mean, args.k)
    value = float(evaluator(point))
    report = mean_report(point, value)
    _emit({
        "value": report.value,
        "min": report.min,
        "max": report.max,
        "strict": report.strict,
        "residuals": {},
        "verdict": "ok",
    }, args.format)
    return 0


def _cmd_quotient(args):
    if len(args.point) != args.k:
        raise ArityError(
            f"--k {args.k} does not match the {len(args.point)}-coordinate point")
    gen = generators.parse_generator_spec(args.gen)
    spec = generators.QuotientSpec(gen, args.k)
    value = float(generators.quotient_eval(spec, args.point))
    _emit({"value": value, "generator": gen.label, "residuals": {},
           "verdict": "ok"}, args.format)
    return 0


def _cmd_extend(args):
    table = tiling.load_table(args.table)
    ext = tiling.TiledExtension(p=args.p, k=args.k, f0=table)
    values = [float(ext.value(x)) for x in args.at]
    try:
        defect = tiling.continuity_defect(ext)
    except InterpolationError:
        defect = None
    _emit({
        "value": values,
        "at": _floats(args.at),
        "residuals": {"continuity_defect": defect},
        "verdict": "ok",
    }, args.format)
    return 0


def _cmd_iterate(args):
    m1 = dynamics.catalog_mean(args.m1)
    m2 = dynamics.catalog_mean(args.m2)
    reference = dynamics.catalog_mean(args.reference)
    if len(args.start) != 2:
        raise ArityError("--start needs exactly two coordinates")
    trace = dynamics.iterate_pair(m1, m2, args.start, tol=args.tol,
                                  max_iter=args.max_iter, reference=reference,
                                  relative_gap=args.relative_gap)
    if trace.error is not None:
        raise EvaluationError(trace.error)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="") as handle:
            handle.write("iter,x,y,gap,invariance_residual\n")
            for i, step in enumerate(trace.steps):
                handle.write(f"{i},{step.x!r},{step.y!r},{step.gap!r},"
                             f"{step.invariance_residual!r}\n")
    drift = max(abs(s.invariance_residual) for s in trace.steps)
    _emit({
        "value": trace.limit,
        "iterations": trace.iterations_used,
        "residuals": {
            "final_gap": trace.steps[-1].gap,
            "max_invariance_drift": drift,
        },
        "verdict": "converged" if trace.limit is not None else "no-convergence",
    }, args.format)
    return 0


def _suite_mean_props(args):
    domain = Domain(args.domain)
    evaluator = _mean_for(args.mean, args.k)
    report = means.probe_mean_properties(evaluator, domain, args.k,
                                         args.samples, args.seed)
    reflex_tol = args.tol * sampling.DEFAULT_HIGH
    passed = (report.max_bounds_violation == 0.0
              and report.max_reflexivity_residual <= reflex_tol
              and report.strict_ok
              and report.max_symmetry_residual <= 1e-13
              and report.nan_count == 0)
    return passed, {
        "residuals": {
            "bounds_violation": report.max_bounds_violation,
            "reflexivity": report.max_reflexivity_residual,
            "symmetry": report.max_symmetry_residual,
            "homogeneity": report.max_homogeneity_residual,
            "translativity": report.max_translativity_residual,
        },
        "strict_ok": report.strict_ok,
        "monotonicity_violations": report.monotonicity_violations,
        "nan_count": report.nan_count,
    }


def _suite_reflexivity(args):
    gen = generators.parse_generator_spec(args.gen)
    rng = sampling.stream(args.seed, 21)
    xs = np.exp(rng.uniform(np.log(1.0 + 1e-6), np.log(1e6), args.samples))
    worst = 0.0
    for x in xs:
        fx = float(np.asarray(gen.at_log(np.log(x)), dtype=float))
        resid = tiling.reflexivity_residual(gen, float(x), args.k)
        worst = max(worst, abs(resid) / max(abs(fx), 1e-300))
    return worst < args.tol, {"residuals": {"max_relative": worst}}


def _suite_equality(args):
    f = generators.parse_generator_spec(args.gen)
    g = generators.parse_generator_spec(args.gen2)
    report = generators.quotient_equal(f, g, args.k,
                                       sample_count=args.samples,
                                       seed=args.seed, tol=args.tol)
    return report.verdict == "equal", {
        "equality": report.verdict,
        "residuals": {"max_relative": report.max_residual},
        "witness": _floats(report.witness),
        "proportionality": report.proportionality,
        "consistent": report.consistent,
        "eval_errors": report.eval_errors,
    }


def _suite_krull(args):
    gen = generators.parse_generator_spec(args.gen)
    transform = analysis.h_transform(gen)
    taus = np.linspace(-5.0, 5.0, 101)
    rng = sampling.stream(args.seed, 22)
    taus = np.concatenate([taus, rng.uniform(-5.0, 5.0, args.samples)])
    resid = np.abs(analysis.krull_residual(transform, taus, args.k))
    worst = float(resid.max())
    return worst < args.tol, {"residuals": {"max_absolute": worst}}


def _suite_concavity(args):
    gen = generators.parse_generator_spec(args.gen)
    transform = analysis.h_transform(gen)
    report = analysis.concavity_probe(transform, grid=(-3.0, 3.0),
                                      points=61, delta=args.delta)
    return report.verdict == args.expect, {
        "concavity": report.verdict,
        "expected": args.expect,
        "residuals": {"worst_second_difference": report.worst_second_difference},
    }


def _suite_phi(args):
    gen = generators.parse_generator_spec(args.gen)
    result = analysis.phi_probe(gen, args.c, args.window, samples=args.samples)
    return result.bounded, {
        "bounded": result.bounded,
        "residuals": {"tail_value": result.tail_value},
    }


def _suite_jensen(args):
    rng = sampling.stream(args.seed, 23)

    def affine(s):
        return args.a * s + args.b

    worst = 0.0
    for _ in range(args.samples):
        k = int(rng.integers(2, 7))
        pts = rng.uniform(-10.0, 10.0, k)
        worst = max(worst, abs(analysis.jensen_residual(affine, pts)))
    return worst < args.tol, {"residuals": {"max_absolute": worst}}


_SUITES = {
    "mean-props": (_suite_mean_props, 1e-12),
    "reflexivity": (_suite_reflexivity, 1e-12),
    "equality": (_suite_equality, 1e-10),
    "krull": (_suite_krull, 1e-12),
    "concavity": (_suite_concavity, None),
    "phi": (_suite_phi, None),
    "jensen": (_suite_jensen, 1e-12),
}


def _cmd_check(args):
    runner, default_tol = _SUITES[args.suite]
    if args.tol is None:
        args.tol = default_tol
    passed, payload = runner(args)
    out = {"suite": args.suite, "verdict": "pass" if passed else "fail"}
    out.update(payload)
    _emit(out, args.format)
    return 0 if passed else 2


def build_parser():
    parser = _Parser(prog="logcauchy",
                     description="means of logarithmic Cauchy quotient type")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["json", "plain"], default="json")

    p_eval = sub.add_parser("eval", help="evaluate a mean at a point")
    p_eval.add_argument("--mean", choices=["Lk", "Ext", "Linv", "G"],
                        required=True)
    p_eval.add_argument("--k", type=int, required=True)
    p_eval.add_argument("--point", type=_point, required=True)
    add_format(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_quot = sub.add_parser("quotient", help="evaluate a generator quotient")
    p_quot.add_argument("--gen", required=True)
    p_quot.add_argument("--k", type=int, required=True)
    p_quot.add_argument("--point", type=_point, required=True)
    add_format(p_quot)
    p_quot.set_defaults(func=_cmd_quotient)

    p_ext = sub.add_parser("extend", help="evaluate a tiled extension")
    p_ext.add_argument("--p", type=float, required=True)
    p_ext.add_argument("--k", type=int, required=True)
    p_ext.add_argument("--table", required=True)
    p_ext.add_argument("--at", type=_point, required=True)
    add_format(p_ext)
    p_ext.set_defaults(func=_cmd_extend)

    p_check = sub.add_parser("check", help="run a verification suite")
    p_check.add_argument("--suite", choices=sorted(_SUITES), required=True)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--samples", type=int, default=1000)
    p_check.add_argument("--tol", type=float, default=None)
    p_check.add_argument("--mean", choices=["Lk", "Ext", "Linv", "G"],
                         default="Lk")
    p_check.add_argument("--domain",
                         choices=[d.value for d in Domain],
                         default=Domain.ABOVE_ONE.value)
    p_check.add_argument("--k", type=int, default=2)
    p_check.add_argument("--gen", default="canonical:c=1,k=2")
    p_check.add_argument("--gen2", default="canonical:c=1,k=2")
    p_check.add_argument("--delta", type=float, default=1e-3)
    p_check.add_argument("--expect", choices=["concave", "convex", "neither"],
                         default="concave")
    p_check.add_argument("--c", type=float, default=1.0)
    p_check.add_argument("--window", type=float, default=0.5)
    p_check.add_argument("--a", type=float, default=3.0)
    p_check.add_argument("--b", type=float, default=1.0)
    add_format(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_iter = sub.add_parser("iterate", help="iterate a pair of means")
    p_iter.add_argument("--m1", required=True)
    p_iter.add_argument("--m2", required=True)
    p_iter.add_argument("--start", type=_point, required=True)
    p_iter.add_argument("--tol", type=float, default=1e-12)
    p_iter.add_argument("--max-iter", type=int, default=200)
    p_iter.add_argument("--reference", default="G")
    p_iter.add_argument("--trace", default=None)
    p_iter.add_argument("--relative-gap", action="store_true")
    add_format(p_iter)
    p_iter.set_defaults(func=_cmd_iterate)
    return parser


def run(argv=None):
    """Parse argv and execute one command; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _EVAL_ERRORS as exc:
        print(f"logcauchy: evaluation error: {exc}", file=sys.stderr)
        return SOFTWARE_ERROR
    except _DATA_ERRORS as exc:
        print(f"logcauchy: error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except LogCauchyError as exc:
        print(f"logcauchy: error: {exc}", file=sys.stderr)
        return SOFTWARE_ERROR
    except OSError as exc:
        print(f"logcauchy: error: {exc}", file=sys.stderr)
        return DATA_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
