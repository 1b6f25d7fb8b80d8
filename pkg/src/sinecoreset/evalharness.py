"""Coreset quality metrics and the multi-trial sensitivity-vs-uniform comparison."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .core import ZERO_COST, IntegerPointSet, cost_profile_array
from .coreset import (
    SEED_MASK,
    WeightedCoreset,
    coreset_profile,
    identity_coreset,
    sample_coreset,
    uniform_coreset,
)
from .sensitivity import SensitivityMap, sensitivities_exact
from .solver import Regularizer, feasible_queries

__all__ = [
    "METRICS",
    "TrialRecord",
    "TrialReport",
    "cost_profile",
    "optimal_solution_error",
    "max_query_error",
    "trial_seed",
    "run_trials",
]

METRICS = ("optimal_solution_error", "max_query_error")


def cost_profile(source, N: int) -> np.ndarray:
    """Cost at every query ``1..N`` of a point set or a weighted coreset."""
    if isinstance(source, WeightedCoreset):
        return coreset_profile(source, N)
    if isinstance(source, IntegerPointSet):
        return cost_profile_array(source.points, N)
    return cost_profile_array(np.asarray(source), N)


def optimal_solution_error(
    P: IntegerPointSet,
    coreset: WeightedCoreset,
    N: Optional[int] = None,
    lam: Optional[Regularizer] = None,
    full_profile: Optional[np.ndarray] = None,
    mask=None,
) -> float:
    """``cost(P, c_coreset) / cost(P, c_exact) - 1`` on the unregularized data term.

    Both minimizers range over the feasible set ``mask`` (default ``[N]``)
    and include ``lam``.  If the exact optimum has zero cost
    the error is 0 when the coreset's pick also has zero cost, else ``inf``.
    """
    N = P.N if N is None else N
    prof = cost_profile(P, N) if full_profile is None else full_profile
    c_exact = _argmin_objective(prof, N, lam, mask)
    c_core = _argmin_objective(coreset_profile(coreset, N), N, lam, mask)
    return _relative_gap(prof, c_exact, c_core)


def _argmin_objective(profile, N, lam, mask=None):
    qs = feasible_queries(N, mask)
    obj = profile[qs - 1]
    if lam is not None and not lam.is_zero:
        obj = obj + lam.values(N, qs)
    return int(qs[int(np.argmin(obj))])


def _relative_gap(prof, c_exact, c_core):
    best, got = prof[c_exact - 1], prof[c_core - 1]
    if best <= ZERO_COST:
        return 0.0 if got <= ZERO_COST else math.inf
    return float(got / best - 1.0)


def max_query_error(
    P: IntegerPointSet,
    coreset: WeightedCoreset,
    N: Optional[int] = None,
    full_profile: Optional[np.ndarray] = None,
) -> float:
    """``max_c |1 - coreset_cost(c) / cost(P, c)|`` over queries with nonzero cost."""
    N = P.N if N is None else N
    prof = cost_profile(P, N) if full_profile is None else full_profile
    return _max_ratio_error(prof, coreset_profile(coreset, N))


def _max_ratio_error(prof, approx):
    valid = prof > ZERO_COST
    if not np.any(valid):
        return 0.0
    return float(np.max(np.abs(1.0 - approx[valid] / prof[valid])))


def trial_seed(base_seed: int, method: str, m: int, trial: int) -> int:
    """``base_seed`` XOR the first 8 bytes of BLAKE2b over ``"method:m:trial"``."""
    digest = hashlib.blake2b(f"{method}:{m}:{trial}".encode(), digest_size=8).digest()
    return (int(base_seed) ^ int.from_bytes(digest, "big")) & SEED_MASK


@dataclass(frozen=True)
class TrialRecord:
    method: str
    m: int
    trial: int
    seed: int
    optimal_solution_error: float
    max_query_error: float
    c_star: int
    coreset_size: int


@dataclass
class TrialReport:
    sample_sizes: List[int]
    methods: List[str]
    trials: int
    base_seed: int
    N: int
    n: int
    c_exact: int
    records: List[TrialRecord] = field(default_factory=list)

    def values(self, method: str, m: int, metric: str) -> np.ndarray:
        return np.array(
            [getattr(r, metric) for r in self.records if r.method == method and r.m == m],
            dtype=np.float64,
        )

    def median(self, method: str, m: int, metric: str) -> float:
        return float(np.median(self.values(method, m, metric)))

    def mean(self, method: str, m: int, metric: str) -> float:
        return float(np.mean(self.values(method, m, metric)))

    def to_dict(self) -> dict:
        results: Dict[str, dict] = {}
        for method in self.methods:
            per_m = {}
            for m in self.sample_sizes:
                cell = {}
                for metric in METRICS:
                    vals = self.values(method, m, metric)
                    cell[metric] = {
                        "values": [_jsonable(v) for v in vals],
                        "mean": _jsonable(float(np.mean(vals))),
                        "median": _jsonable(float(np.median(vals))),
                    }
                per_m[str(m)] = cell
            results[method] = per_m
        return {
            "N": self.N,
            "n": self.n,
            "c_exact": self.c_exact,
            "trials": self.trials,
            "base_seed": self.base_seed,
            "sample_sizes": list(self.sample_sizes),
            "methods": list(self.methods),
            "results": results,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["method", "m", "trial", "metric", "value"])
        for r in self.records:
            for metric in METRICS:
                writer.writerow([r.method, r.m, r.trial, metric, repr(float(getattr(r, metric)))])
        return buf.getvalue()


def _jsonable(v: float):
    return v if math.isfinite(v) else ("inf" if v > 0 else "nan")


Sampler = Callable[[IntegerPointSet, int, int], WeightedCoreset]


def run_trials(
    P: IntegerPointSet,
    N: Optional[int] = None,
    sample_sizes: Sequence[int] = (16, 32, 64, 128, 256),
    trials: int = 32,
    methods: Sequence[str] = ("sensitivity", "uniform"),
    base_seed: int = 0,
    sensitivities: Optional[SensitivityMap] = None,
    samplers: Optional[Dict[str, Sampler]] = None,
    lam: Optional[Regularizer] = None,
    mask=None,
) -> TrialReport:
    """Draw a fresh coreset for every (method, m, trial) cell and record both metrics.

    ``samplers`` adds or overrides methods; each is called as
    ``sampler(P, m, seed)``.  ``"identity"`` is always available and returns
    the full point set.  ``mask`` restricts both minimizations to a feasible
    query set; the max-error metric always scans all of ``[N]``.
    """
    N = P.N if N is None else N
    if trials < 1:
        raise ValueError("trials must be >= 1")
    table: Dict[str, Sampler] = {
        "uniform": uniform_coreset,
        "identity": lambda P_, m, seed: identity_coreset(P_),
    }
    if "sensitivity" in methods and (samplers is None or "sensitivity" not in samplers):
        smap = sensitivities if sensitivities is not None else sensitivities_exact(P)
        table["sensitivity"] = lambda P_, m, seed: sample_coreset(P_, smap, m, seed)
    table.update(samplers or {})
    unknown = [meth for meth in methods if meth not in table]
    if unknown:
        raise ValueError(f"unknown sampling methods: {unknown}")

    prof = cost_profile(P, N)
    c_exact = _argmin_objective(prof, N, lam, mask)
    report = TrialReport(
        sample_sizes=[int(m) for m in sample_sizes],
        methods=list(methods),
        trials=int(trials),
        base_seed=int(base_seed),
        N=N,
        n=P.n,
        c_exact=c_exact,
    )
    for method in methods:
        for m in report.sample_sizes:
            for trial in range(trials):
                seed = trial_seed(base_seed, method, m, trial)
                cs = table[method](P, m, seed)
                cprof = coreset_profile(cs, N)
                c_core = _argmin_objective(cprof, N, lam, mask)
                report.records.append(
                    TrialRecord(
                        method=method,
                        m=m,
                        trial=trial,
                        seed=seed,
                        optimal_solution_error=_relative_gap(prof, c_exact, c_core),
                        max_query_error=_max_ratio_error(prof, cprof),
                        c_star=c_core,
                        coreset_size=len(cs),
                    )
                )
    return report
