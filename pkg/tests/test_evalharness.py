import json
import math

import numpy as np
import pytest

from sinecoreset import IntegerPointSet, cost_profile, identity_coreset, max_query_error, optimal_solution_error, run_trials
from sinecoreset.evalharness import trial_seed


def test_identity_errors_zero(rng):
    P = IntegerPointSet(128, rng.integers(1, 129, size=30))
    cs = identity_coreset(P)
    assert optimal_solution_error(P, cs) == 0.0
    assert max_query_error(P, cs) == 0.0


def test_doubled_weights():
    P = IntegerPointSet(64, [3, 7, 11])
    assert max_query_error(P, identity_coreset(P, weights=[2, 2, 2])) == pytest.approx(1.0)


def test_singleton():
    P = IntegerPointSet(64, [5])
    assert optimal_solution_error(P, identity_coreset(P, weights=[3.0])) == 0.0


def test_zero_optimum_cases():
    # P = {2, 4}, N = 8 costs zero at c = 2 and c = 4
    P = IntegerPointSet(8, [2, 4])
    assert optimal_solution_error(P, identity_coreset(IntegerPointSet(8, [2]))) == 0.0
    # {4} alone is zero already at c = 1, where point 2 costs 1
    assert math.isinf(optimal_solution_error(P, identity_coreset(IntegerPointSet(8, [4]))))


def test_profile_example():
    np.testing.assert_allclose(cost_profile(IntegerPointSet(4, [1]), 4), [1.0, 0.0, 1.0, 0.0], atol=1e-15)


def test_trial_seed():
    a = trial_seed(0, "uniform", 16, 3)
    assert a == trial_seed(0, "uniform", 16, 3)
    assert trial_seed(5, "uniform", 16, 3) == a ^ 5
    assert len({trial_seed(0, m, 16, t) for m in ("uniform", "sensitivity") for t in range(50)}) == 100


def test_record_count(rng):
    P = IntegerPointSet(256, rng.integers(1, 257, size=100))
    report = run_trials(P, sample_sizes=(16, 32, 64), trials=4)
    assert len(report.records) == 24


def test_identity_hook():
    P = IntegerPointSet(64, [3, 9, 10, 33])
    report = run_trials(P, sample_sizes=(4,), trials=1, methods=("identity",))
    assert report.median("identity", 4, "max_query_error") == 0.0
    assert report.median("identity", 4, "optimal_solution_error") == 0.0


def test_custom_sampler():
    P = IntegerPointSet(64, [3, 9, 10, 33])
    report = run_trials(P, sample_sizes=(2,), trials=2, methods=("mine",),
                        samplers={"mine": lambda P_, m, seed: identity_coreset(P_)})
    assert report.values("mine", 2, "max_query_error").tolist() == [0.0, 0.0]
    with pytest.raises(ValueError):
        run_trials(P, methods=("nope",))


def test_serialization(rng):
    P = IntegerPointSet(128, rng.integers(1, 129, size=40))
    report = run_trials(P, sample_sizes=(8, 16), trials=3, base_seed=11)
    d = json.loads(report.to_json())
    assert d["sample_sizes"] == [8, 16] and d["trials"] == 3 and d["base_seed"] == 11
    cell = d["results"]["uniform"]["16"]["max_query_error"]
    assert len(cell["values"]) == 3 and cell["median"] == pytest.approx(np.median(cell["values"]))
    rows = report.to_csv().strip().split("\n")
    assert rows[0] == "method,m,trial,metric,value"
    assert len(rows) == 1 + 2 * 2 * 3 * 2


def test_reproducible(rng):
    P = IntegerPointSet(128, rng.integers(1, 129, size=40))
    a = run_trials(P, sample_sizes=(8,), trials=5, base_seed=2).to_csv()
    assert a == run_trials(P, sample_sizes=(8,), trials=5, base_seed=2).to_csv()
