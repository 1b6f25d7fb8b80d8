"""Weighted coresets drawn by sensitivity sampling or by uniform sampling.

Randomness comes from numpy's ``Generator`` with the PCG64 bit generator,
seeded directly from the caller's 64-bit seed, so a (seed, m) pair always
reproduces the same coreset.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import IntegerPointSet, cost_profile_array, sin2_matrix
from .errors import InvalidSensitivities
from .sensitivity import SensitivityMap

__all__ = [
    "WeightedCoreset",
    "make_rng",
    "sample_coreset",
    "uniform_coreset",
    "identity_coreset",
    "coreset_cost",
    "coreset_profile",
    "theoretical_size",
    "vc_bound",
]

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class WeightedCoreset:
    """Distinct sampled entries with positive weights.

    ``indices`` refer to positions in the source point array (``-1`` where
    the entry did not come from a single source position, e.g. after
    streaming merges).
    """

    points: np.ndarray
    weights: np.ndarray
    indices: np.ndarray
    source_n: float
    method: str
    seed: Optional[int]
    requested_m: int

    def __len__(self) -> int:
        return len(self.points)

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def entries(self):
        return [(int(p), float(w)) for p, w in zip(self.points, self.weights)]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & SEED_MASK))


def _check_m(m) -> int:
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise ValueError(f"sample size m must be a positive integer, got {m}")
    return int(m)


def _merge_draws(P, draws, per_draw_weight, method, seed, m, source_n):
    idx, inverse = np.unique(draws, return_inverse=True)
    weights = np.bincount(inverse, weights=per_draw_weight, minlength=idx.size)
    return WeightedCoreset(
        points=P.points[idx].copy(),
        weights=weights,
        indices=idx,
        source_n=source_n,
        method=method,
        seed=seed,
        requested_m=m,
    )


def _vanishing(P: IntegerPointSet) -> np.ndarray:
    # points whose sine terms are zero at every query: p*c = 0 mod N/2 for all c
    if P.N % 2 == 0:
        return P.points % (P.N // 2) == 0
    return P.points % P.N == 0


def sample_coreset(
    P: IntegerPointSet,
    s: SensitivityMap,
    m: int,
    seed: int,
    weights=None,
) -> WeightedCoreset:
    """Draw ``m`` i.i.d. points with probability ``s(p)/t``.

    Each draw carries weight ``t / (s(p) m)`` and repeated draws of one index
    are merged by summing.  With ``weights`` (a weighted source) the draw
    weight is multiplied by the point's own weight, which keeps the cost
    estimator unbiased.

    Points whose sine terms vanish at every query have sensitivity 0; they
    are never drawn, which does not bias any cost.
    """
    m = _check_m(m)
    sv = np.asarray(s.s, dtype=np.float64)
    if sv.shape != (P.n,):
        raise InvalidSensitivities(f"sensitivity map has {sv.size} entries, point set has {P.n}")
    if not np.all(np.isfinite(sv)) or np.any(sv < 0):
        raise InvalidSensitivities("sensitivities must be finite and nonnegative")
    if np.any((sv == 0) & ~_vanishing(P)):
        raise InvalidSensitivities("a point with nonzero cost terms has sensitivity 0")
    t = float(sv.sum())
    if t <= 0:
        raise InvalidSensitivities("total sensitivity is zero")
    rng = make_rng(seed)
    draws = rng.choice(P.n, size=m, replace=True, p=sv / t)
    per_draw = t / (sv[draws] * m)
    src = float(P.n)
    if weights is not None:
        w = np.asarray(weights, dtype=np.float64)
        per_draw = per_draw * w[draws]
        src = float(w.sum())
    return _merge_draws(P, draws, per_draw, "sensitivity", seed, m, src)


def uniform_coreset(P: IntegerPointSet, m: int, seed: int) -> WeightedCoreset:
    """Draw ``m`` points uniformly with replacement, each weighted ``n/m``."""
    m = _check_m(m)
    rng = make_rng(seed)
    draws = rng.integers(0, P.n, size=m)
    per_draw = np.full(m, P.n / m)
    return _merge_draws(P, draws, per_draw, "uniform", seed, m, float(P.n))


def identity_coreset(P: IntegerPointSet, weights=None) -> WeightedCoreset:
    """The whole point set as a coreset (unit weights unless given)."""
    w = np.ones(P.n) if weights is None else np.asarray(weights, dtype=np.float64)
    return WeightedCoreset(
        points=P.points.copy(),
        weights=w.copy(),
        indices=np.arange(P.n),
        source_n=float(w.sum()),
        method="identity",
        seed=None,
        requested_m=P.n,
    )


def coreset_cost(coreset: WeightedCoreset, c: int, N: int) -> float:
    """Weighted cost of the coreset at query ``c``."""
    c = int(c)
    if not 1 <= c <= N:
        raise ValueError(f"c must lie in [1, {N}], got {c}")
    if len(coreset) == 0:
        return 0.0
    terms = sin2_matrix(coreset.points, [c], N)[0] * coreset.weights
    return float(terms.sum())


def coreset_profile(coreset: WeightedCoreset, N: int, queries=None) -> np.ndarray:
    if len(coreset) == 0:
        size = N if queries is None else len(queries)
        return np.zeros(size)
    return cost_profile_array(coreset.points, N, weights=coreset.weights, queries=queries)


def theoretical_size(t: float, d_prime: float, eps: float, delta: float) -> int:
    """Sample size ``ceil((t/eps^2) (d' log2(max(t, 1)) + log2(1/delta)))``.

    The hidden constant of the asymptotic bound is taken as 1, so this is a
    heuristic guide rather than a guarantee.
    """
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if t <= 0 or d_prime < 0:
        raise ValueError("t must be positive and d_prime nonnegative")
    value = (t / eps**2) * (d_prime * math.log2(max(t, 1.0)) + math.log2(1.0 / delta))
    # guard against values like 2.0000000000000004 from float noise
    return max(1, math.ceil(round(value, 9)))


def vc_bound(n: int, N: int) -> float:
    """``log2(n N)``: the count of distinct ranges is at most ``n N``."""
    if n < 1 or N < 1:
        raise ValueError("n and N must be positive")
    return math.log2(n * N)
