"""Building solutions of f(x) = (x/k) f(x**k) from one tile of data.

    python demos/03_fundamental_domain.py
"""

import math

import numpy as np

from logcauchy import (TiledExtension, continuity_defect, extend,
                       log_extend_at_log, reflexivity_residual, tile_index)

LOG = math.log

# The scaling equation relates the value at x to the value at x**k, so the
# half-open tiles [p**(k**n), p**(k**(n+1))) partition (1, +inf) and data on
# the base tile [p, p**k) determines a solution everywhere.

print("tiles for p=2, k=2: ..., [sqrt2,2), [2,4), [4,16), [16,256), ...")
for x in (1.5, 2.0, 3.9999999, 4.0000001, 16.0, 300.0):
    print(f"  tile_index({x}) = {tile_index(x, 2.0, 2)}")
print()

# Seed the base tile with the restriction of log(x)/x (the canonical
# generator for k = 2) and rebuild it everywhere:
ext = TiledExtension(p=2.0, k=2, f0=lambda x: LOG(x) / x)
print("extend at 16      :", extend(ext, 16.0))
print("closed form       :", LOG(16.0) / 16.0)
print("extend at 1.07    :", extend(ext, 1.07), "vs", LOG(1.07) / 1.07)
print("continuity defect :", continuity_defect(ext))
print()

# The rebuilt function solves the scaling equation away from tile
# boundaries by construction:
for x in (2.5, 7.0, 100.0):
    print(f"  residual f(x) - (x/k) f(x^k) at {x}: "
          f"{reflexivity_residual(ext, x, 2):.3e}")
print()

# A base function that does not glue leaves a visible jump: constants need
# k/p = 1.
for p, k in ((2.0, 2), (2.0, 3)):
    d = continuity_defect(TiledExtension(p=p, k=k, f0=lambda x: 1.0))
    print(f"  constant data, p={p}, k={k}: defect {d}")
print()

# Everything runs in log-x space, so tiles whose endpoints overflow doubles
# still work.  For k = 5 the n = 6 tile starts at 2**(5**6) ~ 10**4704:
k = 5
a = 1.0 / (k - 1)
ext5 = TiledExtension(p=2.0, k=k, f0=lambda x: LOG(x) * math.exp(-a * LOG(x)))
log_x = (5.0 ** 6) * LOG(2.0) * 1.8            # inside tile n = 6
got = log_extend_at_log(ext5, log_x)
want = LOG(log_x) - a * log_x                  # log of the closed form
print("log f deep inside tile 6 (k=5):", got)
print("closed form                  :", want)
print("agreement                    :", abs(got - want))
print()

# Tables work too; the CSV format is two columns `x,f`, strictly increasing.
xs = np.exp(np.linspace(LOG(2.0), 2 * LOG(2.0), 257)[:-1])
table_rows = np.column_stack([xs, np.log(xs) / xs])
print("first table rows:", table_rows[:2].tolist())
print("(see the extend subcommand of the CLI for file-based use)")
