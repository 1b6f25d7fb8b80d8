"""Exact evaluation of the squared-sine fitting cost.

Every angle is formed from the integer residue ``(p * c) mod N`` before it is
converted to floating point, so precision does not degrade when ``p * c`` is
huge compared to ``N``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "MAX_MODULUS",
    "ZERO_COST",
    "IntegerPointSet",
    "reduce_product",
    "sin2_term",
    "sin2_of_integer",
    "abs_sin_reduced",
    "cost",
    "residues",
    "sin2_matrix",
    "cost_profile_array",
]

MAX_MODULUS = 2**62
# queries whose cost is at or below this are treated as zero-cost
ZERO_COST = 1e-12
# products of two values below 2**31 fit in int64
_INT64_SAFE = 2**31
# above this the lookup table gets too large to be worth building
_TABLE_LIMIT = 2**22


@dataclass(frozen=True)
class IntegerPointSet:
    """A multiset of integers in ``[1, N]`` together with its modulus ``N``."""

    N: int
    points: np.ndarray

    def __init__(self, N: int, points: Iterable[int]):
        N = _check_modulus(N)
        pts = [int(p) for p in points]
        if not pts:
            raise ValueError("point set must be nonempty")
        lo, hi = min(pts), max(pts)
        if lo < 1 or hi > N:
            raise ValueError(f"points must lie in [1, {N}], got range [{lo}, {hi}]")
        dtype = np.int64 if N < MAX_MODULUS else object
        arr = np.array(pts, dtype=dtype)
        arr.setflags(write=False)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "points", arr)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerPointSet):
            return NotImplemented
        return self.N == other.N and np.array_equal(self.points, other.points)

    def __hash__(self) -> int:
        return hash((self.N, tuple(int(p) for p in self.points)))

    def __repr__(self) -> str:
        head = ", ".join(str(int(p)) for p in self.points[:8])
        more = ", ..." if self.n > 8 else ""
        return f"IntegerPointSet(N={self.N}, n={self.n}, points=[{head}{more}])"


def _check_modulus(N) -> int:
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)):
        raise TypeError(f"N must be an integer, got {type(N).__name__}")
    N = int(N)
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if N > MAX_MODULUS:
        raise ValueError(f"N must be <= 2**62, got {N}")
    return N


def _check_in_range(name: str, value, N: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    value = int(value)
    if not 1 <= value <= N:
        raise ValueError(f"{name} must lie in [1, {N}], got {value}")
    return value


def reduce_product(p: int, c: int, N: int) -> int:
    """Return ``(p * c) mod N`` using exact integer arithmetic."""
    N = _check_modulus(N)
    p = _check_in_range("p", p, N)
    c = _check_in_range("c", c, N)
    return (p * c) % N


def _folded_numerator(r, N):
    # sin^2(2 pi r / N) == sin^2(pi k / N) with k in [0, N/2]; folding makes the
    # symmetries r <-> N - r and r <-> N/2 - r exact and sin(pi) exactly zero
    r1 = np.minimum(r, N - r)
    return np.where(4 * r1 <= N, 2 * r1, N - 2 * r1)


def _sin2_residue(r: int, N: int) -> float:
    r1 = min(r, N - r)
    k = 2 * r1 if 4 * r1 <= N else N - 2 * r1
    return math.sin(math.pi * k / N) ** 2


def sin2_term(p: int, c: int, N: int) -> float:
    """``sin^2(2*pi*p*c/N)`` evaluated through the exact residue of ``p*c``."""
    return _sin2_residue(reduce_product(p, c, N), N)


def sin2_of_integer(x: int, N: int) -> float:
    """``sin^2(2*pi*x/N)`` for an arbitrary integer ``x`` (any sign or size)."""
    N = _check_modulus(N)
    return _sin2_residue(int(x) % N, N)


def abs_sin_reduced(x: int, N: int, modulus: Optional[int] = None) -> float:
    """``|sin(2*pi*(x mod modulus)/N)|``.

    With ``modulus=N`` (the default) this is ``|sin(2*pi*x/N)|``.  For even
    ``N`` the half period ``modulus=N//2`` gives the same value, because the
    absolute sine has period ``N/2`` in ``x``.
    """
    N = _check_modulus(N)
    if modulus is None:
        modulus = N
    if modulus < 1:
        raise ValueError("modulus must be positive")
    r = int(x) % modulus
    if modulus == N:
        return math.sqrt(_sin2_residue(r, N))
    return abs(math.sin(2.0 * math.pi * r / N))


# ----------------------------------------------------------------- vectorized


def residues(points, queries, N: int) -> np.ndarray:
    """Matrix of ``(c * p) mod N`` with queries along rows, points along columns."""
    pts = np.asarray(points)
    qs = np.asarray(queries)
    if N <= _INT64_SAFE:
        return np.multiply.outer(qs.astype(np.int64), pts.astype(np.int64)) % N
    out = np.empty((qs.size, pts.size), dtype=object)
    py_pts = [int(p) for p in pts]
    for i, c in enumerate(qs):
        c = int(c)
        out[i] = [(c * p) % N for p in py_pts]
    return out


_tables: dict = {}


def _table_for(N: int) -> np.ndarray:
    table = _tables.get(N)
    if table is None:
        k = _folded_numerator(np.arange(N, dtype=np.int64), N)
        table = np.sin(np.pi * k / N) ** 2
        if len(_tables) > 8:
            _tables.clear()
        _tables[N] = table
    return table


def _sin2_of_residues(r: np.ndarray, N: int) -> np.ndarray:
    if r.dtype == object:
        flat = np.array([_sin2_residue(int(v), N) for v in r.ravel()], dtype=np.float64)
        return flat.reshape(r.shape)
    if N <= _TABLE_LIMIT:
        return _table_for(N)[r]
    return np.sin(np.pi * _folded_numerator(r, N) / N) ** 2


def sin2_matrix(points, queries, N: int) -> np.ndarray:
    """``sin^2(2*pi*c*p/N)`` for every (query, point) pair, shape ``(len(queries), len(points))``."""
    return _sin2_of_residues(residues(points, queries, N), N)


def _as_weights(weights, n: int) -> Optional[np.ndarray]:
    if weights is None:
        return None
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (n,):
        raise ValueError(f"weights must have length {n}, got shape {w.shape}")
    if np.any(~np.isfinite(w)) or np.any(w <= 0):
        raise ValueError("weights must be finite and strictly positive")
    return w


def cost(P: IntegerPointSet, c: int, weights: Optional[Sequence[float]] = None) -> float:
    """Weighted fitting cost ``sum_p w(p) * sin^2(2*pi*p*c/N)`` at one query."""
    c = _check_in_range("c", c, P.N)
    w = _as_weights(weights, P.n)
    terms = sin2_matrix(P.points, [c], P.N)[0]
    if w is not None:
        terms = terms * w
    return float(terms.sum())


# query rows per block; bounds memory at block * n floats
_BLOCK_ELEMS = 1 << 22


def cost_profile_array(points, N: int, weights=None, queries=None) -> np.ndarray:
    """Cost at every query (default ``1..N``) for a weighted point array."""
    pts = np.asarray(points)
    w = None if weights is None else np.asarray(weights, dtype=np.float64)
    qs = np.arange(1, N + 1, dtype=np.int64) if queries is None else np.asarray(queries)
    out = np.empty(qs.size, dtype=np.float64)
    step = max(1, _BLOCK_ELEMS // max(pts.size, 1))
    for start in range(0, qs.size, step):
        block = sin2_matrix(pts, qs[start:start + step], N)
        if w is not None:
            block *= w
        out[start:start + step] = block.sum(axis=1)
    return out
