"""Iterating pairs of means to their invariant mean.

    python demos/05_mean_iteration.py
"""

import math

from logcauchy import (estimate_invariant_mean, geometric_mean,
                       invariance_residual, iterate_pair, log_cauchy_mean)
from logcauchy.dynamics import MEAN_CATALOG, log_cauchy_conjugate

comp = MEAN_CATALOG["comp-L2"]

# The pair (x*y/M, M) preserves the product each step, so its iteration
# from (2,3) races to sqrt(6):
trace = iterate_pair(comp, log_cauchy_mean, (2.0, 3.0), tol=1e-12)
print("complementary pair from (2,3):")
for i, s in enumerate(trace.steps):
    print(f"  step {i}: x={s.x:.15f} y={s.y:.15f} gap={s.gap:.2e} "
          f"drift={s.invariance_residual:+.1e}")
print("limit:", trace.limit, " sqrt(6) =", math.sqrt(6.0))
print()

# The involutory-conjugate pair also converges to a common limit, but the
# geometric mean drifts along its orbit, which is visible already after
# one step:
print("conjugate pair from (2,3):")
trace = iterate_pair(log_cauchy_conjugate, log_cauchy_mean, (2.0, 3.0),
                     tol=1e-12)
for i, s in enumerate(trace.steps[:4]):
    print(f"  step {i}: x={s.x:.10f} y={s.y:.10f} "
          f"drift={s.invariance_residual:+.6f}")
print("limit:", trace.limit)
print("one-step residual of G under the pair:",
      invariance_residual(geometric_mean, log_cauchy_conjugate,
                          log_cauchy_mean, (2.0, 3.0)))
print("(so G is NOT invariant under this pair; it is invariant under the")
print(" complementary pair by construction)")
print()

# The common limit defines the invariant mean of a pair; cross-check it
# against a conjectured closed form by passing a reference:
est = estimate_invariant_mean(comp, log_cauchy_mean, (2.0, 3.0),
                              tol=1e-12, reference=geometric_mean)
print("estimated invariant mean:", est.limit,
      " |limit - G(2,3)| =", est.reference_gap)

# Any two catalog means can be paired:
est = estimate_invariant_mean(MEAN_CATALOG["A"], MEAN_CATALOG["H"],
                              (2.0, 3.0), tol=1e-12,
                              reference=geometric_mean)
print("(A, H) invariant mean   :", est.limit,
      " gap to G:", est.reference_gap)
