"""Merge-and-reduce coreset maintenance for an unbounded stream of integers.

Raw points collect in a leaf buffer of size ``m``.  A full buffer becomes a
level-0 bucket; whenever two buckets meet at one level their union is
compressed back to at most ``m`` entries and carried to the next level, as in
a binary counter.  Every compression first folds duplicate values together
(lossless), and only samples when more than ``m`` distinct values remain.
Sampling error compounds by a factor ``(1 + eps)`` per level.
"""
from __future__ import annotations

import math
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .core import IntegerPointSet
from .coreset import WeightedCoreset, make_rng, sample_coreset
from .errors import DegenerateInput
from .sensitivity import sensitivities_exact

__all__ = ["StreamState", "memory_bound"]

Bucket = Tuple[np.ndarray, np.ndarray]


def memory_bound(n: int, m: int) -> int:
    """Retained-entry ceiling ``m (ceil(log2(max(n, m) / m)) + 2)`` after ``n`` insertions."""
    ratio = max(n, m) / m
    levels = math.ceil(math.log2(ratio)) if ratio > 1 else 0
    return m * (levels + 2)


def _fold(points: np.ndarray, weights: np.ndarray) -> Bucket:
    vals, inverse = np.unique(points, return_inverse=True)
    return vals, np.bincount(inverse, weights=weights, minlength=vals.size)


class StreamState:
    """Single-owner streaming summary over queries ``[N]``.

    ``method`` picks how over-full unions are reduced: ``"sensitivity"``
    (weighted sensitivity sampling) or ``"uniform"``.  Compression ``k``
    (counting from 1) is seeded with ``seed ^ k``.
    """

    def __init__(self, N: int, m: int, seed: int = 0, method: str = "sensitivity"):
        if int(N) != N or N < 2:
            raise ValueError(f"N must be an integer >= 2, got {N}")
        if int(m) != m or m < 1:
            raise ValueError(f"m must be a positive integer, got {m}")
        if method not in ("sensitivity", "uniform"):
            raise ValueError(f"unknown method {method!r}")
        self.N = int(N)
        self.m = int(m)
        self.seed = int(seed)
        self.method = method
        self.leaf: List[int] = []
        self.buckets: List[Optional[Bucket]] = []
        self.n = 0
        self.compressions = 0
        self._bucket_entries = 0

    # -------------------------------------------------------------- insertion

    def push(self, p: int) -> "StreamState":
        p = int(p)
        if not 1 <= p <= self.N:
            raise ValueError(f"point {p} outside [1, {self.N}]")
        self.leaf.append(p)
        self.n += 1
        if len(self.leaf) == self.m:
            self._flush()
        return self

    def extend(self, points: Iterable[int]) -> "StreamState":
        for p in points:
            self.push(p)
        return self

    def _flush(self):
        pts = np.asarray(self.leaf, dtype=np.int64)
        self.leaf = []
        carry = self._compress(pts, np.ones(pts.size))
        level = 0
        while True:
            if level == len(self.buckets):
                self.buckets.append(None)
            existing = self.buckets[level]
            if existing is None:
                self.buckets[level] = carry
                self._bucket_entries += carry[0].size
                return
            self.buckets[level] = None
            self._bucket_entries -= existing[0].size
            carry = self._compress(
                np.concatenate([existing[0], carry[0]]),
                np.concatenate([existing[1], carry[1]]),
            )
            level += 1

    def _compress(self, points: np.ndarray, weights: np.ndarray) -> Bucket:
        self.compressions += 1
        pts, w = _fold(points, weights)
        if pts.size <= self.m:
            return pts, w
        seed = self.seed ^ self.compressions
        if self.method == "uniform":
            rng = make_rng(seed)
            draws = rng.integers(0, pts.size, size=self.m)
            per_draw = w[draws] * (pts.size / self.m)
            return _fold(pts[draws], per_draw)
        P = IntegerPointSet(self.N, pts)
        try:
            smap = sensitivities_exact(P, weights=w)
        except DegenerateInput:
            # all terms vanish; any positive-weight representative is exact
            return pts[:1], np.array([w.sum()])
        cs = sample_coreset(P, smap, self.m, seed, weights=w)
        return _fold(cs.points, cs.weights)

    # -------------------------------------------------------------- queries

    @property
    def retained(self) -> int:
        """Entries currently held: raw leaf points plus bucket entries."""
        return len(self.leaf) + self._bucket_entries

    @property
    def levels(self) -> List[int]:
        """Entry count per level (0 for an empty level)."""
        return [0 if b is None else b[0].size for b in self.buckets]

    def query_coreset(self) -> WeightedCoreset:
        """Union of live buckets and the leaf buffer (leaf points weigh 1).

        Before the first flush this is the stream itself, in arrival order,
        with ``indices`` giving stream positions.
        """
        if not any(b is not None for b in self.buckets):
            pts = np.asarray(self.leaf, dtype=np.int64)
            return WeightedCoreset(
                points=pts,
                weights=np.ones(pts.size),
                indices=np.arange(pts.size),
                source_n=float(self.n),
                method=f"stream-{self.method}",
                seed=self.seed,
                requested_m=self.m,
            )
        parts_p = [b[0] for b in self.buckets if b is not None]
        parts_w = [b[1] for b in self.buckets if b is not None]
        if self.leaf:
            parts_p.append(np.asarray(self.leaf, dtype=np.int64))
            parts_w.append(np.ones(len(self.leaf)))
        if parts_p:
            pts, w = _fold(np.concatenate(parts_p), np.concatenate(parts_w))
        else:
            pts, w = np.zeros(0, dtype=np.int64), np.zeros(0)
        return WeightedCoreset(
            points=pts,
            weights=w,
            indices=np.full(pts.size, -1),
            source_n=float(self.n),
            method=f"stream-{self.method}",
            seed=self.seed,
            requested_m=self.m,
        )
