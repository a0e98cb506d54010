import numpy as np
import pytest
from hypothesis import given, strategies as st

from maxlab.errors import FitError
from maxlab.fitting import fit_log2_linear, fit_loglog, fit_semilog
from maxlab.sampling import chunk_rng, chunk_sizes, mc_moments, parallel_map, sphere_points, thread_count


def _draw(rng, size):
    return rng.uniform(size=size) ** 2


def test_chunk_streams_are_reproducible_and_distinct():
    a = chunk_rng(7, 3).uniform(size=5)
    b = chunk_rng(7, 3).uniform(size=5)
    c = chunk_rng(7, 4).uniform(size=5)
    d = chunk_rng(8, 3).uniform(size=5)
    assert np.array_equal(a, b)
    assert not np.allclose(a, c) and not np.allclose(a, d)


def test_chunk_sizes():
    assert chunk_sizes(10, 4) == [4, 4, 2]
    assert chunk_sizes(8, 4) == [4, 4]
    assert sum(chunk_sizes(1_000_003)) == 1_000_003


def test_mc_moments_thread_independent(monkeypatch):
    one = mc_moments(_draw, 300_000, seed=11, threads=1)
    four = mc_moments(_draw, 300_000, seed=11, threads=4)
    assert one[0] == four[0] and one[1] == four[1]
    monkeypatch.setenv("MAXLAB_THREADS", "3")
    assert thread_count() == 3
    env = mc_moments(_draw, 300_000, seed=11)
    assert env[0] == one[0]
    # E[U^2] = 1/3
    assert abs(one[0] - 1 / 3) < 4 * one[1]


def test_parallel_map_order():
    assert parallel_map(lambda v: v * v, range(20), threads=4) == [v * v for v in range(20)]


@pytest.mark.parametrize("n", [2, 3])
def test_sphere_points_unit(n):
    pts = sphere_points(chunk_rng(0, 0), 1000, n)
    assert pts.shape == (1000, n)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1)
    assert np.all(np.abs(pts.mean(axis=0)) < 0.1)


def test_fit_exact_cube():
    x = np.array([1.0, 2.0, 3.0, 5.0, 8.0])
    fit = fit_loglog(x, x ** 3, 3, 1e-9)
    assert fit.slope == pytest.approx(3, abs=1e-12)
    assert fit.residual < 1e-12 and fit.passed


def test_fit_noisy_square_root():
    rng = np.random.default_rng(2024)
    x = np.geomspace(1e-3, 1e3, 25)
    y = 5 * x ** 0.5 * (1 + 0.01 * rng.standard_normal(x.size))
    fit = fit_loglog(x, y, 0.5, 0.02)
    assert fit.passed and abs(fit.slope - 0.5) <= 0.02
    assert fit.residual >= 0


@given(st.floats(-3, 3), st.floats(0.1, 10))
def test_fit_recovers_power(p, c):
    x = np.geomspace(0.1, 10, 7)
    fit = fit_loglog(x, c * x ** p, p, 1e-6)
    assert fit.passed
    assert fit.intercept == pytest.approx(np.log(c), abs=1e-8)


def test_fit_verdict_fails_outside_tolerance():
    x = np.array([1.0, 2.0, 4.0])
    assert not fit_loglog(x, x ** 2, 3, 0.5).passed


def test_fit_errors():
    with pytest.raises(FitError):
        fit_loglog([1.0, 2.0], [1.0, 4.0], 2, 0.1)
    with pytest.raises(FitError):
        fit_loglog([1.0, 2.0, 3.0], [1.0, -4.0, 9.0], 2, 0.1)
    with pytest.raises(FitError):
        fit_loglog([1.0, 1.0, 1.0], [1.0, 2.0, 3.0], 2, 0.1)
    with pytest.raises(FitError):
        fit_loglog([1.0, 2.0, 3.0], [1.0, np.nan, 3.0], 2, 0.1)
    with pytest.raises(FitError):
        fit_loglog([1.0, 2.0, 4.0], [1.0, 5.0, 16.0], 2, 0.1, max_residual=1e-6)


def test_other_fit_forms():
    k = np.arange(2, 8)
    fit = fit_log2_linear(k, 3.0 * 2.0 ** (-0.25 * k), -0.25, 1e-9)
    assert fit.passed
    x = np.geomspace(1e-4, 1e-1, 5)
    fit = fit_semilog(x, 2 - 0.5 * np.log(x), -0.5, 1e-9)
    assert fit.passed
    assert fit.as_dict()["passed"] is True
