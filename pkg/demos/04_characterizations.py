"""Numeric characterisations of the mean-inducing generator.

    python demos/04_characterizations.py
"""

import numpy as np

from logcauchy import (canonical_generator, concavity_probe,
                       contraction_factor, h_transform, jensen_residual,
                       krull_residual, phi_probe, powerlog_generator,
                       psi_contraction_check, scaled)
from logcauchy.generators import affine_generator

# Route 1: the double-exponential transform h(tau) = log f(exp(exp(tau)))
# turns the scaling equation into the difference equation
#     h(tau + log k) = h(tau) + log k - exp(tau).
# For the canonical generator, h(tau) = log c + tau - exp(tau)/(k-1).

f = canonical_generator(1.0, 2)
t = h_transform(f)
print("h(0)  =", t.h(0.0), "(= -1 for c=1, k=2)")
taus = np.linspace(-5.0, 5.0, 11)
print("difference-equation residuals:",
      np.max(np.abs(krull_residual(t, taus, 2))))

wrong = h_transform(powerlog_generator(1.0, 1.0))   # wrong exponent for k=3
print("wrong exponent, residual at 0:", krull_residual(wrong, 0.0, 3))
print()

# The transform of the canonical generator is concave (second derivative
# -exp(tau)/(k-1)); of f(x) = x it is exp, hence convex.
report = concavity_probe(t, grid=(-3.0, 3.0), points=61, delta=1e-3)
print("canonical transform:", report.verdict,
      "worst second difference", report.worst_second_difference)
report_x = concavity_probe(h_transform(affine_generator(1.0, 0.0)))
print("f(x) = x transform :", report_x.verdict)
print()

# Route 2: boundedness of phi(x) = (f(x) - c(x-1)) / (x-1)**2 near 1.
# For the canonical generator with matching c the limit is finite
# (phi -> -3/2 for c = 1, k = 2); any mismatch blows up.
res = phi_probe(f, c=1.0, window_r=0.5)
print("phi bounded:", res.bounded, " tail value:", res.tail_value)
res2 = phi_probe(f, c=2.0, window_r=0.5)
print("mismatched c=2, bounded:", res2.bounded)
print()

# The uniqueness argument rests on the contraction factor
#     kappa(x) = k x**(-1/k) ((x**(1/k)-1)/(x-1))**2,
# which tends to 1/k at 1 and never exceeds 1/2:
for k in (2, 3, 6):
    print(f"  kappa(1+1e-6, {k}) = {contraction_factor(1.0 + 1e-6, k):.6f}"
          f"  (1/k = {1.0 / k:.6f})")
print("  kappa(4, 2) =", contraction_factor(4.0, 2), "(= 1/9)")

# psi = |phi_1 - phi_2| of two solutions contracts under x -> x**(1/k):
rep = psi_contraction_check(f, scaled(f, 2.0), c=1.0, k=2, window_r=0.5)
print("identity residual:", rep.max_identity_residual,
      " sup kappa:", rep.sup_kappa, " below 1/2:", rep.kappa_below_half)
print()

# Both routes lean on the Jensen equation; affine functions solve it for
# every arity at once.
print("jensen residual, affine:", jensen_residual(lambda s: 3 * s + 1, (0, 1, 2)))
print("jensen residual, square:", jensen_residual(lambda s: s * s, (0, 2)))
