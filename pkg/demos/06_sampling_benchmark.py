"""
Sensitivity versus uniform sampling
===================================

Repeated trials per sample size, reporting the median of both error metrics.
"""

# %%
from sinecoreset import run_trials, synthetic_points
from sinecoreset.solver import nontrivial_queries

# %%
N = 4096
P = synthetic_points(N, 1024, c0=37, noise=0.1, seed=0)
sizes = (16, 32, 64, 128, 256)
report = run_trials(P, sample_sizes=sizes, trials=32, base_seed=0, mask=nontrivial_queries(N))

print(f"{'m':>5} {'sens max':>9} {'unif max':>9} {'sens opt':>9} {'unif opt':>9}")
for m in sizes:
    row = [report.median(meth, m, metric)
           for metric in ("max_query_error", "optimal_solution_error")
           for meth in ("sensitivity", "uniform")]
    print(f"{m:5d} " + " ".join(f"{v:9.3f}" for v in row))

# %%
with open("benchmark.csv", "w") as fh:
    fh.write(report.to_csv())
print("per-trial values written to benchmark.csv")
