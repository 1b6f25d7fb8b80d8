"""
Sampling a coreset and fitting on it
====================================

Sampling proportional to sensitivity gives a small weighted set whose cost
tracks the full cost at every query, so the best frequency can be searched on
the coreset instead of the full data.
"""

# %%
from sinecoreset import (
    Regularizer,
    cost,
    max_query_error,
    sample_coreset,
    sensitivities_exact,
    solve_exact,
    solve_on_coreset,
    synthetic_points,
    theoretical_size,
    uniform_coreset,
    vc_bound,
)
from sinecoreset.solver import nontrivial_queries

# %%
N = 4096
P = synthetic_points(N, 1024, c0=37, noise=0.1, seed=1)
smap = sensitivities_exact(P)
mask = nontrivial_queries(N)   # c = N/2 and c = N cost zero for every data set

exact = solve_exact(P, mask=mask)
print("exact fit:", exact)

# %% [markdown]
# The worst-case size formula is loose; in practice a few hundred samples are
# plenty.

# %%
print("size for eps=0.2, delta=0.1:", theoretical_size(smap.total_t, vc_bound(P.n, N), 0.2, 0.1))

for m in (32, 128, 256):
    cs = sample_coreset(P, smap, m, seed=m)
    fit = solve_on_coreset(cs, N, mask=mask)
    print(f"m={m:4d} entries={len(cs):4d} c*={fit.c_star:5d} "
          f"cost ratio={cost(P, fit.c_star) / exact.objective:.3f} "
          f"max error={max_query_error(P, cs):.3f}")

# %% [markdown]
# Uniform sampling at the same size tends to miss the outliers.

# %%
cs = uniform_coreset(P, 128, seed=3)
print("uniform m=128 max error:", round(max_query_error(P, cs), 3))

# %% [markdown]
# A linear penalty alpha*c favours low frequencies.  Once 37*alpha outweighs
# the cost gap to c=1 the fit gives up on the true frequency.

# %%
for alpha in (0.0, 8.0, 15.0):
    fit = solve_exact(P, Regularizer.linear(alpha), mask=mask)
    print(f"alpha={alpha}: c*={fit.c_star} objective={fit.objective:.1f}")
