"""End-to-end acceptance checks; each prints one PASS/FAIL line."""
import math
import os
import time
from fractions import Fraction

import numpy as np
import pytest

import oracle
from sinecoreset import (
    IntegerPointSet,
    StreamState,
    coreset_cost,
    cost,
    memory_bound,
    project,
    restricted_queries,
    run_trials,
    sample_coreset,
    sensitivities_exact,
    sensitivities_parallel,
    synthetic_points,
)
from sinecoreset.core import cost_profile_array, sin2_matrix
from sinecoreset.coreset import coreset_profile
from sinecoreset.solver import nontrivial_queries

SIZES = (16, 32, 64, 128, 256)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def random_instances(seed, count, max_N=512, max_n=64):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        N = 2 * int(rng.integers(2, max_N // 2 + 1))
        P = IntegerPointSet(N, rng.integers(1, N + 1, size=int(rng.integers(1, max_n + 1))))
        if np.any(cost_profile_array(P.points, N) > 1e-12):
            out.append(P)
    return out


@pytest.fixture(scope="module")
def instances():
    return random_instances(2024, 50)


def test_1_oracle_equivalence(instances, report):
    start = time.perf_counter()
    worst = 0.0
    ok = True
    for P in instances:
        got = sensitivities_exact(P).s
        want = np.array(oracle.sensitivities(P.points.tolist(), P.N))
        # exact zeros vs 1e-16-scale oracle residue for vanishing points
        ok &= bool(np.allclose(got, want, rtol=1e-9, atol=1e-12))
        nz = want > 1e-12
        worst = max(worst, float(np.max(np.abs(got[nz] / want[nz] - 1), initial=0.0)))
    elapsed = time.perf_counter() - start
    report(1, ok and elapsed < 10, f"50 instances, max rel diff {worst:.2e}, {elapsed:.2f}s (oracle included)")


def test_2_parallel_determinism(instances, report):
    ok = True
    for P in instances[:20]:
        base = sensitivities_parallel(P, 1)
        for M in (2, 4, 8):
            other = sensitivities_parallel(P, M)
            ok &= np.array_equal(base.s, other.s) and base.total_t == other.total_t
    report(2, ok, "20 instances, M in {1,2,4,8}, bitwise identical")


def test_3_normalization(instances, report):
    worst = 0.0
    t_ok = True
    for P in instances[:20]:
        prof = cost_profile_array(P.points, P.N)
        valid = np.flatnonzero(prof > 1e-12) + 1
        sums = (sin2_matrix(P.points, valid, P.N) / prof[valid - 1][:, None]).sum(axis=1)
        worst = max(worst, float(np.max(np.abs(sums - 1))))
        t = sensitivities_exact(P).total_t
        t_ok &= 1 - 1e-9 <= t <= P.n + 1e-9
    report(3, worst <= 1e-9 and t_ok, f"max |sum - 1| = {worst:.2e}, t in [1, n] for all")


def test_4_restricted_factor(report):
    violations = 0
    checked = 0
    for P in random_instances(77, 20):
        prof = cost_profile_array(P.points, P.N)
        valid = prof > 1e-12
        for p in np.unique(P.points):
            ratios = np.zeros(P.N)
            ratios[valid] = sin2_matrix([p], np.flatnonzero(valid) + 1, P.N)[:, 0] / prof[valid]
            C = restricted_queries(int(p), P)
            restricted_max = float(ratios[C - 1].max()) if C.size else 0.0
            checked += 1
            if ratios.max() > 16 * restricted_max + 1e-12:
                violations += 1
    report(4, violations == 0, f"{checked} points, {violations} violations of max <= 16 * max over C(p)")


def test_5_unbiasedness(report):
    start = time.perf_counter()
    rng = np.random.default_rng(5)
    # points at multiples of N/2 have all-zero terms and sensitivity 0; they are
    # never drawn, so the weight sum would estimate n minus their count
    pts = rng.integers(1, 257, size=200)
    P = IntegerPointSet(256, pts[pts % 128 != 0][:64])
    smap = sensitivities_exact(P)
    c = 37
    target = cost(P, c)
    est = np.empty(10_000)
    mass = np.empty(10_000)
    for seed in range(10_000):
        cs = sample_coreset(P, smap, 32, seed)
        est[seed] = coreset_cost(cs, c, 256)
        mass[seed] = cs.total_weight
    se_c = est.std(ddof=1) / math.sqrt(est.size)
    se_w = mass.std(ddof=1) / math.sqrt(mass.size)
    z_c = abs(est.mean() - target) / se_c
    z_w = abs(mass.mean() - P.n) / se_w
    elapsed = time.perf_counter() - start
    report(5, target > 0 and z_c <= 3 and z_w <= 3 and elapsed < 60,
           f"cost z={z_c:.2f}, weight-sum z={z_w:.2f} (mean {mass.mean():.3f} vs n=64), {elapsed:.1f}s")


@pytest.fixture(scope="module")
def synthetic_runs():
    start = time.perf_counter()
    N = 4096
    P = synthetic_points(N, 1024, 37, noise=0.1, seed=0)
    trials = run_trials(P, sample_sizes=SIZES, trials=32, base_seed=0, mask=nontrivial_queries(N))
    return P, trials, time.perf_counter() - start


def _inversions(seq):
    return sum(1 for a, b in zip(seq, seq[1:]) if b > a)


def test_6_sampling_comparison(synthetic_runs, report):
    P, rep, elapsed = synthetic_runs
    sens = [rep.median("sensitivity", m, "max_query_error") for m in SIZES]
    unif = [rep.median("uniform", m, "max_query_error") for m in SIZES]
    a = _inversions(sens) <= 1 and _inversions(unif) <= 1
    wins = sum(s <= u for s, u in zip(sens, unif))
    b = wins >= 0.7 * len(SIZES)
    opt256 = rep.median("sensitivity", 256, "optimal_solution_error")
    c = opt256 <= 0.2
    detail = (f"sens medians {[round(v, 3) for v in sens]}, uniform {[round(v, 3) for v in unif]}, "
              f"wins {wins}/5, opt err@256 {opt256:.3f}, {elapsed:.1f}s")
    report(6, a and b and c and elapsed < 300, detail)


def test_7_optimality_transfer(synthetic_runs, report):
    P, rep, _ = synthetic_runs
    prof = cost_profile_array(P.points, P.N)
    best = prof[rep.c_exact - 1]
    violations = 0
    for r in rep.records:
        eps = min(r.max_query_error, 0.9)
        if prof[r.c_star - 1] > (1 + eps) / (1 - eps) * best * (1 + 1e-12):
            violations += 1
    report(7, violations == 0, f"{len(rep.records)} trials, {violations} violations")


def test_8_discretization(report):
    rng = np.random.default_rng(8)
    N = 4096
    ok_root = ok_dist = ok_idem = True
    for _ in range(10_000):
        c = int(rng.integers(1, N + 1))
        x = float(rng.uniform(0, N))
        y = project(x, c, N)
        phase = (Fraction(y) * c / N) % 1
        ok_root &= abs(math.sin(2 * math.pi * float(phase))) <= 1e-9
        ok_dist &= abs(x - y) <= N / (4 * c)
        ok_idem &= project(y, c, N) == y
    report(8, ok_root and ok_dist and ok_idem, f"roots {ok_root}, distance {ok_dist}, idempotent {ok_idem}")


def test_9_streaming_memory(report):
    N, m, n = 1024, 128, 10**6
    bound = 128 * (math.ceil(math.log2(n / 128)) + 2)
    rng = np.random.default_rng(9)
    state = StreamState(N, m, seed=9)
    peak = 0
    for p in rng.integers(1, N + 1, size=n).tolist():
        state.push(p)
        peak = max(peak, state.retained)
    small = rng.integers(1, N + 1, size=m)
    exact_small = np.array_equal(
        coreset_profile(StreamState(N, m).extend(small[:-1]).query_coreset(), N),
        cost_profile_array(small[:-1], N),
    )
    report(9, bound == 1920 == memory_bound(n, m) and peak <= bound and exact_small,
           f"peak retained {peak} <= {bound}; n < m stream exact: {exact_small}")


def test_10_performance(report):
    rng = np.random.default_rng(10)
    N, n = 2**14, 2**12
    P = IntegerPointSet(N, rng.integers(1, N + 1, size=n))
    start = time.perf_counter()
    serial = sensitivities_parallel(P, 1)
    t1 = time.perf_counter() - start
    start = time.perf_counter()
    parallel = sensitivities_parallel(P, 4)
    t4 = time.perf_counter() - start
    speedup = t1 / t4
    same = np.array_equal(serial.s, parallel.s)
    cores = os.cpu_count()
    report(10, t1 < 60 and speedup >= 2 and same,
           f"single worker {t1:.2f}s, 4 workers {t4:.2f}s, speedup {speedup:.2f}x on {cores} CPU(s)")
