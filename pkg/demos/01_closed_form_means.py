"""Tour of the closed-form means: values, extension, conjugates.

Run from the repository root after `pip install -e .`:

    python demos/01_closed_form_means.py
"""

import math

from logcauchy import (Domain, complementary_mean, extended_mean,
                       geometric_mean, involutory_conjugate, log_cauchy_mean,
                       mean_report, probe_mean_properties)

# ---------------------------------------------------------------------------
# The k-variable mean weights each leave-one-out geometric mean by the
# normalised log of the left-out coordinate.  For two variables this is the
# Beckenbach-Gini mean of generator log:
#     M(x, y) = (y log x + x log y) / (log x + log y)

print("M(2, 3)     =", log_cauchy_mean((2.0, 3.0)))
print("log72/log6  =", math.log(72) / math.log(6))
print("M(4, 6)     =", log_cauchy_mean((4.0, 6.0)))
print("M(2,3,4,5)  =", log_cauchy_mean((2.0, 3.0, 4.0, 5.0)))
print()

# It is a mean (sandwiched between min and max, strictly for nonconstant
# tuples) but neither homogeneous nor translative:
m23 = log_cauchy_mean((2.0, 3.0))
print("2*M(2,3) - M(4,6)   =", 2 * m23 - log_cauchy_mean((4.0, 6.0)))
print("2+M(2,3) - M(4,5)   =", 2 + m23 - log_cauchy_mean((4.0, 5.0)))
print()

# The same formula works on (0,1); tuples mixing both sides of 1 are
# rejected, because the weights lose their meaning there.
print("M(1/4, 1/2) =", log_cauchy_mean((0.25, 0.5)), "(= 5/12)")

# The increasing extension to all positive tuples pins the seam at 1:
print("Ext(0.5, 2) =", extended_mean((0.5, 2.0)))
print("Ext(2, 3)   =", extended_mean((2.0, 3.0)))
print()

# Involutory conjugate: reflect through x -> 1/x.  The geometric mean is
# its own conjugate; the log-weighted mean picks up x log x weights.
conj = involutory_conjugate(log_cauchy_mean)
print("conjugate at (e^-1, e^-2):", conj((1 / math.e, math.e ** -2)))
print("closed form 3/(e^2+2e):  ", 3 / (math.e ** 2 + 2 * math.e))
print()

# Complementary mean: N = x*y / M.  The pair (N, M) preserves the product,
# so the geometric mean of the pair reproduces the geometric mean exactly.
comp = complementary_mean(log_cauchy_mean)
print("comp(2, 3)                =", comp((2.0, 3.0)))
print("G(comp(2,3), M(2,3))      =", geometric_mean((comp((2.0, 3.0)), m23)))
print("G(2, 3)                   =", geometric_mean((2.0, 3.0)))
print()

# A report for a single evaluation, as the CLI prints it:
value = log_cauchy_mean((2.0, 3.0, 7.0))
print("report:", mean_report((2.0, 3.0, 7.0), value))
print()

# Seeded property probe: bounds, reflexivity, strictness, symmetry, plus
# informational homogeneity / translativity / monotonicity numbers.
report = probe_mean_properties(log_cauchy_mean, Domain.ABOVE_ONE, k=3,
                               sample_count=2000, seed=7)
print("bounds violation   :", report.max_bounds_violation)
print("reflexivity resid  :", report.max_reflexivity_residual)
print("strict sandwich ok :", report.strict_ok)
print("symmetry resid     :", report.max_symmetry_residual)
print("homogeneity resid  :", report.max_homogeneity_residual)
print("translativity resid:", report.max_translativity_residual)
print("monotone violations:", report.monotonicity_violations)
