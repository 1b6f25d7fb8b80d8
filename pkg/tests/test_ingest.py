import numpy as np
import pytest

from sinecoreset import IngestConfig, IntegerPointSet, load_series, quantize, solve_exact, synthetic_points
from sinecoreset.ingest import IngestError
from sinecoreset.solver import nontrivial_queries


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_absolute(tmp_path):
    path = write(tmp_path, "1.0\n2.5\n-3.0\n")
    assert load_series(IngestConfig(path, take_absolute=True)) == [1.0, 2.5, 3.0]


def test_header_column(tmp_path):
    path = write(tmp_path, "t,value\n0,1.5\n1,2.5\n")
    assert load_series(IngestConfig(path, column="value")) == [1.5, 2.5]
    assert load_series(IngestConfig(path, column=1)) == [1.5, 2.5]
    assert load_series(IngestConfig(path, column=0)) == [0.0, 1.0]


def test_delimiter(tmp_path):
    path = write(tmp_path, "1;4\n2;5\n")
    assert load_series(IngestConfig(path, column=1, delimiter=";")) == [4.0, 5.0]


def test_nan_rows(tmp_path):
    path = write(tmp_path, "1\nNaN\n3\n")
    with pytest.raises(IngestError):
        load_series(IngestConfig(path))
    assert load_series(IngestConfig(path, skip_nonnumeric=True)) == [1.0, 3.0]


@pytest.mark.parametrize("text", ["", "a\nb\n"])
def test_no_values(tmp_path, text):
    with pytest.raises(IngestError):
        load_series(IngestConfig(write(tmp_path, text), skip_nonnumeric=True))


def test_missing_file(tmp_path):
    with pytest.raises(IngestError):
        load_series(IngestConfig(tmp_path / "nope.csv"))


def test_missing_column(tmp_path):
    path = write(tmp_path, "a,b\n1,2\n")
    with pytest.raises(IngestError):
        load_series(IngestConfig(path, column="c"))
    with pytest.raises(IngestError):
        load_series(IngestConfig(path, column=5))


def test_quantize_examples():
    assert quantize([0, 1, 2], 100).points.tolist() == [1, 51, 100]
    assert quantize([7, 7, 7], 13).points.tolist() == [1, 1, 1]
    vals = [1, 5, 9, 64, 33]
    assert quantize(vals, 64).points.tolist() == vals


def test_quantize_range(rng):
    P = quantize(rng.normal(size=500), 1000)
    assert P.points.min() == 1 and P.points.max() == 1000


def test_synthetic_recovers_frequency():
    P = synthetic_points(4096, 1024, 37, noise=0.1, seed=0)
    assert isinstance(P, IntegerPointSet) and P.n == 1024
    assert solve_exact(P, mask=nontrivial_queries(4096)).c_star == 37


def test_synthetic_seeded():
    a = synthetic_points(1000, 50, 7, seed=4, jitter=0.1)
    b = synthetic_points(1000, 50, 7, seed=4, jitter=0.1)
    assert a == b
    assert np.all((a.points >= 1) & (a.points <= 1000))


@pytest.mark.parametrize("kw", [{"c0": 0}, {"c0": 600}, {"noise": 1.5}, {"jitter": -1}])
def test_synthetic_domain(kw):
    args = dict(N=1000, n=10, c0=7)
    args.update(kw)
    with pytest.raises(ValueError):
        synthetic_points(**args)
