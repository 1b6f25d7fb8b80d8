"""
Coresets over a stream
======================

Merge-and-reduce keeps one summary per level of a binary counter, so memory
grows with the log of the stream length.
"""

# %%
from sinecoreset import StreamState, max_query_error, memory_bound, solve_on_coreset, synthetic_points
from sinecoreset.solver import nontrivial_queries

# %%
N = 4096
P = synthetic_points(N, 20_000, c0=37, noise=0.1, seed=2)

state = StreamState(N, m=128, seed=0)
peak = 0
for i, p in enumerate(P.points, start=1):
    state.push(p)
    peak = max(peak, state.retained)
    if i in (100, 1000, 10_000, 20_000):
        print(f"after {i:6d}: retained {state.retained:5d} (bound {memory_bound(i, 128)}), levels {state.levels}")

# %%
cs = state.query_coreset()
print("peak retained:", peak)
print("summary entries:", len(cs), "total weight:", round(cs.total_weight))
print("max query error:", round(max_query_error(P, cs), 3))
print("fit on summary:", solve_on_coreset(cs, N, mask=nontrivial_queries(N)))
