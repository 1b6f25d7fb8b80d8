"""
Squared-sine cost on integer data
=================================

The fitting cost of a frequency ``c`` on integer points ``P`` inside ``[N]``
is the sum of ``sin^2(2 pi p c / N)``.  Because the angle only matters modulo
``2 pi``, the product ``p c`` can be reduced modulo ``N`` first.
"""

# %%
import math

import numpy as np

from sinecoreset import IntegerPointSet, cost, reduce_product, sin2_term
from sinecoreset.core import cost_profile_array

# %% [markdown]
# A tiny instance where every angle is a multiple of pi/4.

# %%
P = IntegerPointSet(8, [1, 2, 3])
print("cost at c=1:", cost(P, 1))          # 0.5 + 1 + 0.5
print("weighted cost:", cost(IntegerPointSet(8, [1, 3]), 2, weights=[2, 1]))

# %% [markdown]
# Reducing before the sine matters once ``p c`` gets large.  Here both
# factors sit just below ``N = 2**61 - 1``, so ``p c`` has more than 120 bits.
# Feeding that product to a float sine loses every significant digit.

# %%
N = 2**61 - 1
p = c = N - 1
naive = math.sin(2 * math.pi * float(p) * float(c) / N) ** 2
print("residue:", reduce_product(p, c, N))
print("reduced :", sin2_term(p, c, N))
print("naive   :", naive)
print("true    :", math.sin(2 * math.pi / N) ** 2)

# %% [markdown]
# The whole cost profile over ``c = 1..N`` is symmetric about ``N/2`` and vanishes
# at ``c = N`` for any data.

# %%
rng = np.random.default_rng(0)
pts = rng.integers(1, 1025, size=300)
prof = cost_profile_array(pts, 1024)
print("symmetric:", np.array_equal(prof[:-1], prof[-2::-1]))
print("cost at N:", prof[-1], " at N/2:", prof[511])
