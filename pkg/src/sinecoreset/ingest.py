"""Loading delimited time series, quantizing them into ``[N]``, and synthetic data."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from .core import IntegerPointSet
from .coreset import make_rng
from .errors import SineCoresetError

__all__ = [
    "DEFAULT_N",
    "IngestConfig",
    "IngestError",
    "load_series",
    "quantize",
    "synthetic_points",
]

DEFAULT_N = 2**16


class IngestError(SineCoresetError):
    pass


@dataclass
class IngestConfig:
    path: Union[str, Path]
    column: Union[int, str] = 0
    delimiter: str = ","
    take_absolute: bool = False
    target_N: int = DEFAULT_N
    skip_nonnumeric: bool = False
    # None: header present iff the column is named or the first row has text
    has_header: Optional[bool] = None

    def __post_init__(self):
        if int(self.target_N) != self.target_N or self.target_N < 2:
            raise ValueError(f"target_N must be an integer >= 2, got {self.target_N}")


def _parse(cell: str) -> Optional[float]:
    try:
        v = float(cell)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def _looks_textual(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return True
    return False


def load_series(config: IngestConfig) -> List[float]:
    """Numeric values of one column, in file order."""
    path = Path(config.path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh, delimiter=config.delimiter) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise IngestError(f"{path} contains no records")

    header = config.has_header
    if header is None:
        header = isinstance(config.column, str) or any(_looks_textual(c.strip()) for c in rows[0])
    if isinstance(config.column, str):
        if not header:
            raise IngestError("a named column needs a header row")
        names = [c.strip() for c in rows[0]]
        if config.column not in names:
            raise IngestError(f"column {config.column!r} not found; header is {names}")
        col = names.index(config.column)
    else:
        col = int(config.column)
    body = rows[1:] if header else rows

    values = []
    for lineno, row in enumerate(body, start=2 if header else 1):
        if col >= len(row):
            raise IngestError(f"record {lineno} has no column {col}")
        v = _parse(row[col].strip())
        if v is None:
            if config.skip_nonnumeric:
                continue
            raise IngestError(f"record {lineno}: non-numeric value {row[col]!r}")
        values.append(abs(v) if config.take_absolute else v)
    if not values:
        raise IngestError(f"no numeric values in column {config.column!r} of {path}")
    return values


def quantize(values, N: int = DEFAULT_N) -> IntegerPointSet:
    """Min-max map onto ``1..N`` with round-half-up; a constant series maps to 1."""
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        raise ValueError("cannot quantize an empty series")
    lo, hi = float(x.min()), float(x.max())
    if hi == lo:
        return IntegerPointSet(N, np.ones(x.size, dtype=np.int64))
    scaled = (x - lo) / (hi - lo) * (N - 1)
    p = 1 + np.floor(scaled + 0.5).astype(np.int64)
    return IntegerPointSet(N, np.clip(p, 1, N))


def synthetic_points(
    N: int,
    n: int,
    c0: int,
    noise: float = 0.1,
    seed: int = 0,
    jitter: float = 0.0,
) -> IntegerPointSet:
    """Points on the zeros of ``sin(2 pi c0 x / N)`` plus uniform outliers.

    Each inlier picks a root ``k N / (2 c0)`` uniformly, is displaced by
    Gaussian jitter with standard deviation ``jitter`` times the root
    spacing, and is rounded to the nearest integer.  A ``noise`` fraction of
    the points (in expectation) is replaced by uniform draws from ``[N]``.
    All values are clipped to ``[1, N]``.
    """
    if not 1 <= c0 <= N // 2:
        raise ValueError(f"c0 must lie in [1, N/2], got {c0}")
    if not 0 <= noise <= 1:
        raise ValueError("noise must lie in [0, 1]")
    if jitter < 0:
        raise ValueError("jitter must be nonnegative")
    rng = make_rng(seed)
    spacing = N / (2 * c0)
    k = rng.integers(1, 2 * c0 + 1, size=n)
    x = k * spacing
    if jitter:
        x = x + rng.normal(0.0, jitter * spacing, size=n)
    outliers = rng.random(n) < noise
    x[outliers] = rng.integers(1, N + 1, size=int(outliers.sum()))
    p = np.clip(np.rint(x).astype(np.int64), 1, N)
    return IntegerPointSet(N, p)
