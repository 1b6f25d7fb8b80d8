"""Exhaustive minimization of the (regularized) fitting objective over integer queries."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import IntegerPointSet, cost_profile_array
from .coreset import WeightedCoreset
from .errors import EmptyCoreset, EmptyFeasibleSet
from .sensitivity import partition

__all__ = [
    "FitResult",
    "Regularizer",
    "solve_exact",
    "solve_on_coreset",
    "feasible_queries",
    "nontrivial_queries",
]


@dataclass(frozen=True)
class FitResult:
    c_star: int
    objective: float
    regularized: bool

    def to_dict(self) -> dict:
        return {"c_star": self.c_star, "objective": self.objective, "regularized": self.regularized}


class Regularizer:
    """Nonnegative penalty ``lambda(c)`` defined on every query ``c`` in ``[N]``.

    Build one with :meth:`zero`, :meth:`linear` or :meth:`tabulated`.
    """

    def __init__(self, kind: str, alpha: float = 0.0, table=None):
        self.kind = kind
        self.alpha = float(alpha)
        self.table = None if table is None else np.asarray(table, dtype=np.float64)
        if self.alpha < 0:
            raise ValueError("linear regularizer needs alpha >= 0")
        if self.table is not None and (
            self.table.ndim != 1 or np.any(~np.isfinite(self.table)) or np.any(self.table < 0)
        ):
            raise ValueError("tabulated regularizer must be a 1-d vector of finite nonnegative values")

    @classmethod
    def zero(cls) -> "Regularizer":
        return cls("zero")

    @classmethod
    def linear(cls, alpha: float) -> "Regularizer":
        return cls("linear", alpha=alpha)

    @classmethod
    def tabulated(cls, values) -> "Regularizer":
        return cls("table", table=values)

    @property
    def is_zero(self) -> bool:
        if self.kind == "zero":
            return True
        if self.kind == "linear":
            return self.alpha == 0
        return not np.any(self.table)

    def values(self, N: int, queries=None) -> np.ndarray:
        """Penalty at ``queries`` (default ``1..N``)."""
        qs = np.arange(1, N + 1) if queries is None else np.asarray(queries)
        if self.kind == "zero":
            return np.zeros(qs.size)
        if self.kind == "linear":
            return self.alpha * qs.astype(np.float64)
        if self.table.size != N:
            raise ValueError(f"tabulated regularizer has {self.table.size} entries, expected N={N}")
        return self.table[qs - 1]

    def __repr__(self) -> str:
        if self.kind == "linear":
            return f"Regularizer.linear({self.alpha})"
        if self.kind == "table":
            return f"Regularizer.tabulated(<{self.table.size} values>)"
        return "Regularizer.zero()"


def nontrivial_queries(N: int) -> np.ndarray:
    """Boolean mask over ``[N]`` dropping queries whose cost is zero for every input.

    Those are the multiples of ``N/2`` for even ``N`` and ``c = N`` for odd ``N``.
    """
    c = np.arange(1, N + 1)
    period = N // 2 if N % 2 == 0 else N
    return c % period != 0


def feasible_queries(N: int, mask=None) -> np.ndarray:
    """Sorted feasible queries: all of ``[N]``, a boolean mask of length ``N``, or explicit queries."""
    if mask is None:
        return np.arange(1, N + 1, dtype=np.int64)
    arr = np.asarray(mask)
    if arr.dtype == bool:
        if arr.shape != (N,):
            raise ValueError(f"boolean mask must have length N={N}")
        qs = np.flatnonzero(arr) + 1
    else:
        qs = np.unique(arr.astype(np.int64))
        if qs.size and (qs[0] < 1 or qs[-1] > N):
            raise ValueError(f"feasible queries must lie in [1, {N}]")
    if qs.size == 0:
        raise EmptyFeasibleSet("the feasible query set is empty")
    return qs.astype(np.int64)


def _minimize(points, weights, N, lam, qs, workers):
    lam = Regularizer.zero() if lam is None else lam

    def chunk(lo, hi):
        sub = qs[lo:hi]
        if sub.size == 0:
            return None
        obj = cost_profile_array(points, N, weights=weights, queries=sub) + lam.values(N, sub)
        i = int(np.argmin(obj))
        return float(obj[i]), int(sub[i])

    bounds = partition(qs.size, workers)
    if workers == 1:
        results = [chunk(lo, hi) for lo, hi in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda b: chunk(*b), bounds))
    # chunks are in ascending query order; strict < keeps the smallest minimizer
    best = None
    for r in results:
        if r is not None and (best is None or r[0] < best[0]):
            best = r
    return FitResult(c_star=best[1], objective=best[0], regularized=not lam.is_zero)


def solve_exact(
    P: IntegerPointSet,
    lam: Optional[Regularizer] = None,
    mask=None,
    workers: int = 1,
) -> FitResult:
    """Smallest ``c`` in the feasible set minimizing ``cost(P, c) + lambda(c)``."""
    qs = feasible_queries(P.N, mask)
    return _minimize(P.points, None, P.N, lam, qs, workers)


def solve_on_coreset(
    coreset: WeightedCoreset,
    N: int,
    lam: Optional[Regularizer] = None,
    mask=None,
    workers: int = 1,
) -> FitResult:
    """Same as :func:`solve_exact` but minimizing the coreset's weighted cost."""
    if len(coreset) == 0:
        raise EmptyCoreset("cannot fit an empty coreset")
    qs = feasible_queries(N, mask)
    return _minimize(coreset.points, coreset.weights, N, lam, qs, workers)
