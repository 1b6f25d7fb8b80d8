"""Per-point sensitivities of the squared-sine cost over the query range ``[N]``.

The sensitivity of a point is the largest share of the total cost it can
carry at any single query.  Computing it takes two passes over the
``N x n`` grid of sine terms: one to get the cost of every query, one to take
each point's maximum ratio against those costs.  Both passes split cleanly
into independent chunks, which is what :func:`sensitivities_parallel` does.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .core import (
    ZERO_COST,
    IntegerPointSet,
    _as_weights,
    cost_profile_array,
    residues,
    sin2_matrix,
)
from .errors import DegenerateInput, EmptyRestrictedSet

__all__ = [
    "SensitivityMap",
    "partition",
    "sensitivities_exact",
    "sensitivities_parallel",
    "restricted_queries",
    "restricted_sensitivities",
    "g_diagnostic",
    "band_floor",
    "total_sensitivity",
    "normalized_total",
]

_BLOCK_ELEMS = 1 << 21


@dataclass(frozen=True)
class SensitivityMap:
    """Sensitivity per point (aligned with the point array) and their sum.

    ``argmax`` holds, for each point, the smallest query attaining its
    maximum ratio (0 when the point's terms vanish at every valid query).
    """

    s: np.ndarray
    total_t: float
    skipped_queries: int
    argmax: np.ndarray

    def __len__(self) -> int:
        return len(self.s)


def partition(total: int, M: int) -> List[Tuple[int, int]]:
    """Split ``range(total)`` into ``M`` contiguous chunks of at most ``ceil(total/M)``.

    Trailing chunks may be short or empty.
    """
    if M < 1:
        raise ValueError(f"worker count must be >= 1, got {M}")
    size = -(-total // M) if total else 0
    bounds = []
    for i in range(M):
        lo = min(i * size, total)
        hi = min(lo + size, total)
        bounds.append((lo, hi))
    return bounds


# ----------------------------------------------------------------- phases


def _phase_costs(points, weights, N, lo, hi):
    qs = np.arange(lo + 1, hi + 1, dtype=np.int64)
    return cost_profile_array(points, N, weights=weights, queries=qs)


def _phase_maxima(points, weights, N, costs, valid_queries):
    """Max ratio over ``valid_queries`` for each of ``points``."""
    n = len(points)
    best = np.zeros(n, dtype=np.float64)
    arg = np.zeros(n, dtype=np.int64)
    if n == 0:
        return best, arg
    step = max(1, _BLOCK_ELEMS // n)
    for start in range(0, valid_queries.size, step):
        qs = valid_queries[start:start + step]
        ratios = sin2_matrix(points, qs, N)
        if weights is not None:
            ratios *= weights
        ratios /= costs[qs - 1][:, None]
        rows = ratios.argmax(axis=0)
        vals = ratios[rows, np.arange(n)]
        better = vals > best
        best[better] = vals[better]
        arg[better] = qs[rows[better]]
    return best, arg


def _run(executor_kind, M, fn, jobs):
    if M == 1 or executor_kind is None:
        return [fn(*job) for job in jobs]
    pool_cls = ThreadPoolExecutor if executor_kind == "thread" else ProcessPoolExecutor
    with pool_cls(max_workers=M) as pool:
        futures = [pool.submit(fn, *job) for job in jobs]
        return [f.result() for f in futures]


def sensitivities_parallel(
    P: IntegerPointSet,
    M: int = 1,
    weights=None,
    backend: str = "thread",
) -> SensitivityMap:
    """Sensitivities computed by ``M`` workers in two phases.

    Phase one splits ``[N]`` into ``M`` chunks and costs each query; phase
    two splits the points into ``M`` chunks and takes each point's maximum
    ratio.  The result does not depend on ``M``.

    ``weights`` generalizes the ratio to ``w(p) sin^2 / sum_q w(q) sin^2``.
    ``backend`` is ``"thread"`` or ``"process"``.
    """
    if backend not in ("thread", "process"):
        raise ValueError(f"unknown backend {backend!r}")
    if isinstance(M, bool) or int(M) != M or M < 1:
        raise ValueError(f"worker count must be a positive integer, got {M}")
    M = int(M)
    N = P.N
    pts = P.points
    w = _as_weights(weights, P.n)

    chunks = partition(N, M)
    costs = np.concatenate(
        _run(backend, M, _phase_costs, [(pts, w, N, lo, hi) for lo, hi in chunks])
    )
    valid = np.flatnonzero(costs > ZERO_COST) + 1
    if valid.size == 0:
        raise DegenerateInput("every query in [N] has zero cost")

    pchunks = partition(P.n, M)
    jobs = [
        (pts[lo:hi], None if w is None else w[lo:hi], N, costs, valid)
        for lo, hi in pchunks
    ]
    parts = _run(backend, M, _phase_maxima, jobs)
    s = np.concatenate([b for b, _ in parts])
    arg = np.concatenate([a for _, a in parts])
    return SensitivityMap(
        s=s,
        total_t=float(s.sum()),
        skipped_queries=int(N - valid.size),
        argmax=arg,
    )


def sensitivities_exact(P: IntegerPointSet, weights=None) -> SensitivityMap:
    """Exact sensitivities, single worker; O(N n) time."""
    return sensitivities_parallel(P, 1, weights=weights)


def total_sensitivity(smap: SensitivityMap) -> float:
    return float(np.sum(smap.s))


def normalized_total(smap: SensitivityMap, N: int) -> float:
    """Total sensitivity divided by ``log2(N)**4``, for tracking growth in ``N``."""
    return total_sensitivity(smap) / math.log2(N) ** 4


# ----------------------------------------------------------------- diagnostics


def _half_modulus(N: int) -> int:
    if N % 2:
        raise ValueError(f"restricted query sets need an even N, got {N}")
    return N // 2


def restricted_queries(p: int, P: IntegerPointSet) -> np.ndarray:
    """Sorted queries ``c`` in ``[N]`` with ``(c p mod N/2)`` in ``[N/8, 3N/8]``."""
    N = P.N
    half = _half_modulus(N)
    p = int(p)
    if not 1 <= p <= N:
        raise ValueError(f"p must lie in [1, {N}], got {p}")
    qs = np.arange(1, N + 1, dtype=np.int64)
    r8 = 8 * residues([p], qs, half)[:, 0]
    return qs[(r8 >= N) & (r8 <= 3 * N)]


def restricted_sensitivities(P: IntegerPointSet) -> np.ndarray:
    """Per point, the max ratio over valid queries in its restricted set (0 if none)."""
    N = P.N
    costs = cost_profile_array(P.points, N)
    valid = costs > ZERO_COST
    out = np.zeros(P.n, dtype=np.float64)
    cache = {}
    for i, p in enumerate(P.points):
        p = int(p)
        if p not in cache:
            qs = restricted_queries(p, P)
            qs = qs[valid[qs - 1]]
            if qs.size == 0:
                cache[p] = 0.0
            else:
                terms = sin2_matrix([p], qs, N)[:, 0]
                cache[p] = float(np.max(terms / costs[qs - 1]))
        out[i] = cache[p]
    return out


def band_floor(N: int) -> int:
    """Smallest integer ``r`` with ``r >= N / (16 log2 N)``, decided exactly.

    ``r >= N/(16 log2 N)`` is equivalent to ``N**(16 r) >= 2**N``, which is
    checked in integer arithmetic around the floating-point estimate.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    target = 1 << N

    def ok(r):
        return r > 0 and N ** (16 * r) >= target

    r = max(1, math.ceil(N / (16 * math.log2(N))))
    while r > 1 and ok(r - 1):
        r -= 1
    while not ok(r):
        r += 1
    return r


def g_diagnostic(p: int, P: IntegerPointSet) -> int:
    """Min over ``c`` in the restricted set of ``p`` of how many points fall in the central band.

    A point ``q`` is in the band for query ``c`` when
    ``N/(16 log2 N) <= (c q mod N/2) <= N/2 - N/(16 log2 N)``.
    Duplicated points are counted once per copy.
    """
    N = P.N
    half = _half_modulus(N)
    qs = restricted_queries(p, P)
    if qs.size == 0:
        raise EmptyRestrictedSet(f"restricted query set of p={p} is empty for N={N}")
    lo = band_floor(N)
    hi = half - lo
    r = residues(P.points, qs, half)
    counts = ((r >= lo) & (r <= hi)).sum(axis=1)
    return int(counts.min())
