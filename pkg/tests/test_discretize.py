import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sinecoreset import IntegerPointSet, discretize_dataset, project, roots_spacing, solve_exact
from sinecoreset.discretize import project_array


@pytest.mark.parametrize("c,N,expected", [(5, 100, 10.0), (1, 8, 4.0), (64, 64, 0.5)])
def test_spacing(c, N, expected):
    assert roots_spacing(c, N) == expected


@pytest.mark.parametrize("x,expected", [(23, 20.0), (25, 20.0), (7, 10.0), (15, 10.0), (15.0001, 20.0), (-5, -10.0)])
def test_project_examples(x, expected):
    assert project(x, 5, 100) == expected


def test_dataset_examples():
    res = discretize_dataset([23, 25, 7], 5, 100)
    assert res.total_distance == 11.0
    assert res.projected.tolist() == [20.0, 20.0, 10.0]
    assert discretize_dataset([0, 10, 40], 5, 100).total_distance == 0.0


def test_accepts_fit_result():
    fit = solve_exact(IntegerPointSet(8, [2]))
    assert discretize_dataset([3.1], fit, 8).frequency_c == 2


@pytest.mark.parametrize("c,N", [(0, 8), (1.5, 8), (1, 0)])
def test_domain(c, N):
    with pytest.raises(ValueError):
        roots_spacing(c, N)


def exact_phase_sin(y, c, N):
    # reduce c*y/N modulo 1 exactly before calling sin
    phase = (Fraction(y) * c / N) % 1
    return math.sin(2 * math.pi * float(phase))


@settings(max_examples=300, deadline=None)
@given(st.floats(-1e4, 1e4, allow_nan=False), st.integers(1, 4096), st.data())
def test_projection_properties(x, N, data):
    c = data.draw(st.integers(1, N))
    y = project(x, c, N)
    assert abs(exact_phase_sin(y, c, N)) <= 1e-9
    assert abs(x - y) <= N / (4 * c) + 1e-9
    assert project(y, c, N) == y


def test_vectorized_matches_scalar(rng):
    x = rng.uniform(0, 500, size=200)
    np.testing.assert_array_equal(project_array(x, 7, 500), [project(v, 7, 500) for v in x])
