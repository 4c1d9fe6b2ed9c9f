"""Generators, their quotients, and the proportionality characterisation.

    python demos/02_generators_and_quotients.py
"""

import math

from logcauchy import (QuotientSpec, affine_generator, canonical_generator,
                       log_cauchy_mean, offset, powerlog_generator,
                       proportionality_constant, quotient_equal,
                       quotient_eval, scaled)

# A generator f on (1,+inf) induces the k-variable quotient
#     (f(x_1) + ... + f(x_k)) / f(x_1 ... x_k).
# Any f works as plumbing; only one shape (up to scale) gives a mean.

f_id = affine_generator(1.0, 0.0)         # f(x) = x
print("quotient of f(x)=x at (2,3):", quotient_eval(QuotientSpec(f_id, 2), (2.0, 3.0)))
print("(not a mean: 5/6 is below both coordinates)")
print()

# The canonical generator c * log(x) / x**(1/(k-1)) is the mean-inducing one.
f = canonical_generator(1.0, 2)
print("canonical f(e) =", f.eval(math.e), "(= 1/e)")
spec = QuotientSpec(f, 2)
print("quotient at (2,3)     :", quotient_eval(spec, (2.0, 3.0)))
print("closed-form mean      :", log_cauchy_mean((2.0, 3.0)))
print("quotient at (x,x,x)=7 :",
      quotient_eval(QuotientSpec(canonical_generator(1.0, 3), 3), (7.0,) * 3))
print()

# The quotient only sees f up to scale:
for c in (2.5, -1.0, 100.0):
    g = scaled(f, c)
    print(f"scale {c:>6}: quotient {quotient_eval(QuotientSpec(g, 2), (2.0, 3.0))!r}")
print()

# Two generators induce the same quotient exactly when they are
# proportional.  The limit of g/f at 1 recovers the constant:
print("limit of 2.5*f / f at 1:", proportionality_constant(f, scaled(f, 2.5)))

# ... and the seeded equality test checks both directions at once:
report = quotient_equal(f, scaled(f, 2.5), 2, seed=1)
print("scaled pair   :", report.verdict, "max residual", report.max_residual)
report = quotient_equal(f, offset(f, 0.1), 2, seed=1)
print("perturbed pair:", report.verdict, "witness", report.witness)
print()

# Off-family generators make useful negative controls: the power-log family
# with the wrong exponent is not even reflexive.
wrong = powerlog_generator(1.0, 1.0)      # alpha should be 1/2 for k = 3
print("wrong-exponent quotient at (5,5,5):",
      quotient_eval(QuotientSpec(wrong, 3), (5.0, 5.0, 5.0)), "(should be 5)")

# Products are fed to generators in the log domain, so huge tuples are fine:
k = 6
big = QuotientSpec(canonical_generator(1.0, k), k)
print("quotient at (1e60,...,1e60):", quotient_eval(big, (1e60,) * k))
