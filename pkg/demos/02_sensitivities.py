"""
Sensitivities and their diagnostics
===================================

A point's sensitivity is the largest share of the total cost it can carry for
any query.  Summed over all points it gives the total sensitivity ``t``, which
controls how many samples a coreset needs.
"""

# %%
import time

import numpy as np

from sinecoreset import (
    IntegerPointSet,
    g_diagnostic,
    restricted_queries,
    sensitivities_exact,
    sensitivities_parallel,
    synthetic_points,
)
from sinecoreset.sensitivity import normalized_total

# %%
smap = sensitivities_exact(IntegerPointSet(8, [1, 3]))
print("P={1,3}, N=8:", smap.s, "t =", smap.total_t, "skipped queries:", smap.skipped_queries)

# %% [markdown]
# On periodic data the outliers stand out: they are the points that dominate
# the cost near the true frequency.

# %%
N = 4096
P = synthetic_points(N, 1024, c0=37, noise=0.1, seed=0)
start = time.perf_counter()
smap = sensitivities_exact(P)
print(f"n={P.n}, N={N}: t = {smap.total_t:.2f} ({time.perf_counter() - start:.2f}s)")
print("t / log2(N)^4 =", normalized_total(smap, N))
order = np.argsort(smap.s)[::-1]
print("largest s:", np.round(smap.s[order[:5]], 4), "at p =", P.points[order[:5]])
print("median s:", np.median(smap.s))

# %% [markdown]
# The work splits into chunks of queries and chunks of points.  Every worker
# count gives bit-identical numbers.

# %%
for M in (1, 2, 4):
    other = sensitivities_parallel(P, M)
    print(M, "workers identical:", np.array_equal(other.s, smap.s))

# %% [markdown]
# The restricted query set ``C(p)`` and the band count ``g(p, P)`` are the two
# quantities behind the total-sensitivity bound.

# %%
Q = IntegerPointSet(16, [1, 3, 5])
print("C(1) for N=16:", restricted_queries(1, Q).tolist())
print("g(p, P):", [g_diagnostic(p, Q) for p in (1, 3, 5)])
