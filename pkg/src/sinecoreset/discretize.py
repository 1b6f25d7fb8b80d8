"""Snap real values onto the zeros of a fitted sine wave.

``sin(2 pi c x / N)`` vanishes exactly at ``x = k N / (2c)``, so projecting a
value means rounding it to the nearest multiple of that spacing.  Exact
midpoints go to the lower root.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .solver import FitResult

__all__ = ["DiscretizationResult", "roots_spacing", "project", "project_array", "discretize_dataset"]


@dataclass(frozen=True)
class DiscretizationResult:
    projected: np.ndarray
    total_distance: float
    frequency_c: int


def _check(c, N):
    if int(c) != c or c < 1:
        raise ValueError(f"frequency c must be a positive integer, got {c}")
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")


def roots_spacing(c: int, N: int) -> float:
    _check(c, N)
    return N / (2 * c)


def project_array(x, c: int, N: int) -> np.ndarray:
    spacing = roots_spacing(c, N)
    k = np.ceil(np.asarray(x, dtype=np.float64) * (2 * c) / N - 0.5)
    return k * spacing


def project(x: float, c: int, N: int) -> float:
    """Nearest root of ``sin(2 pi c x / N)`` to ``x``; ties resolve downward."""
    return float(project_array(x, c, N))


def discretize_dataset(values, fit, N: int) -> DiscretizationResult:
    """Project every value onto the roots of the wave with frequency ``fit.c_star``.

    ``fit`` may also be a plain integer frequency.
    """
    c = fit.c_star if isinstance(fit, FitResult) else int(fit)
    x = np.asarray(values, dtype=np.float64)
    projected = project_array(x, c, N)
    return DiscretizationResult(
        projected=projected,
        total_distance=float(np.abs(x - projected).sum()),
        frequency_c=c,
    )
