"""
Snapping values to the roots of a fitted wave
=============================================

Once a frequency is fitted, each value can be replaced by the nearest zero of
``sin(2 pi c x / N)``, turning a real-valued signal into a lattice of
``2c`` levels.
"""

# %%
import numpy as np

from sinecoreset import discretize_dataset, project, quantize, sample_coreset, sensitivities_exact, solve_exact, solve_on_coreset
from sinecoreset.solver import nontrivial_queries

# %%
print([project(x, 5, 100) for x in (23, 25, 7)])   # ties go to the lower root

# %% [markdown]
# A noisy signal that mostly lives on 24 evenly spaced levels.

# %%
rng = np.random.default_rng(4)
levels = rng.integers(1, 24, size=2000) / 24
signal = levels + rng.normal(0, 0.004, size=levels.size)
N = 4096
P = quantize(signal, N)
scaled = 1 + (signal - signal.min()) / np.ptp(signal) * (N - 1)

mask = nontrivial_queries(N)
exact = solve_exact(P, mask=mask)
smap = sensitivities_exact(P)
approx = solve_on_coreset(sample_coreset(P, smap, 200, seed=0), N, mask=mask)

a = discretize_dataset(scaled, exact, N)
b = discretize_dataset(scaled, approx, N)
print("exact c:", exact.c_star, "distance:", round(a.total_distance, 1))
print("coreset c:", approx.c_star, "distance:", round(b.total_distance, 1))
print("distance ratio:", round(b.total_distance / a.total_distance, 3))
