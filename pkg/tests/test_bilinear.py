import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from maxlab import bilinear as bl
from maxlab.errors import ArityError, DegenerateInputError, DomainError, FitError, PreconditionError
from maxlab.fields import BallIndicator, Constant, Grid, SmoothBump

ONE = Constant(1.0)


def req(f, g, x=(0.3, -0.2), t1=0.8, t2=1.1, a=(2, 2), **kw):
    return bl.AverageRequest(f, g, x, t1, t2, a, **kw)


def param_quadrature(f, g, x, t1, t2, a, angles=96):
    """Deterministic tensor quadrature of the surface integral for n = 2.

    With ``v = 1 - r^{a1}`` the surface element times ``|dr/dv|`` is
    ``sqrt(r'(v)^2 + omega'(v)^2) r omega``; the endpoint powers
    ``v^{2/a2-1} (1-v)^{2/a1-1}`` are handled by an algebraic quadrature weight
    and both circles by the periodic trapezoid rule.
    """
    a1, a2 = a
    x = np.asarray(x, dtype=float)
    th = 2 * np.pi * np.arange(angles) / angles
    circ = np.stack([np.cos(th), np.sin(th)], axis=1)

    def circle(fn, rad):
        return 2 * np.pi * np.mean(fn(x - rad * circ))

    def smooth(v):
        return math.sqrt(v ** (2 - 2 / a2) / a1 ** 2 + (1 - v) ** (2 - 2 / a1) / a2 ** 2)

    def integrand(v):
        r = (1 - v) ** (1 / a1)
        om = v ** (1 / a2)
        return smooth(v) * circle(f, t1 * r) * circle(g, t2 * om)

    val, _ = integrate.quad(integrand, 0, 1, weight="alg", wvar=(2 / a2 - 1, 2 / a1 - 1),
                            epsabs=1e-12, epsrel=1e-10, limit=200)
    return val


# -- geometry ----------------------------------------------------------------

@pytest.mark.parametrize("a", [(2, 2), (2, 3), (1, 2), (3, 1.5), (4, 4)])
def test_slice_geometry(a):
    geo = bl.SliceGeometry(2, a)
    r = np.linspace(0.01, 0.99, 50)
    assert geo.omega(0.0) == 1 and geo.omega(1.0) == 0
    assert np.all(np.diff(geo.omega(r)) < 0)
    assert np.allclose(geo.omega(r), bl.SliceGeometry(2, a[::-1]).omega_tilde(r))
    assert np.allclose(geo.weight(r), np.sqrt(1 + geo.omega_prime(r) ** 2), rtol=1e-12)


def test_bad_anisotropy():
    with pytest.raises(ArityError):
        bl.SliceGeometry(2, (2, 2, 2))
    with pytest.raises(DomainError):
        bl.SliceGeometry(2, (0.5, 2))
    with pytest.raises(DomainError):
        req(ONE, ONE, t1=0.0)


@pytest.mark.parametrize("a,expected", [((2, 2), math.sqrt(2) / 2), ((1, 2), (math.sqrt(5) - 1) / 2),
                                        ((1, 1), 0.5)])
def test_solve_s_star(a, expected):
    assert abs(bl.solve_s_star(a) - expected) < 1e-14


@given(st.floats(1, 8), st.floats(1, 8))
def test_s_star_is_root(a1, a2):
    s = bl.solve_s_star((a1, a2))
    assert 0 < s < 1 and abs(s ** a1 + s ** a2 - 1) < 1e-12


# -- values --------------------------------------------------------------------

def test_mass_closed_form():
    assert abs(bl.surface_mass(2, (2, 2)) - 2 * math.pi ** 2) < 1e-6
    r = req(ONE, ONE, normalized=False)
    assert abs(bl.average_gsliced(r) - 2 * math.pi ** 2) < 1e-6
    assert abs(bl.average_fsliced(r) - 2 * math.pi ** 2) < 1e-6


@pytest.mark.parametrize("a", [(2, 2), (2, 3), (1, 2), (3, 3), (1.5, 5)])
def test_normalized_ones(a):
    r = req(ONE, ONE, a=a)
    assert abs(bl.average_gsliced(r) - 1) < 1e-9
    assert abs(bl.average_fsliced(r) - 1) < 1e-9


@pytest.mark.parametrize("a", [(2, 3), (1, 2), (3, 3)])
def test_surface_mass_two_paths_and_resolution(a):
    gs = bl.average_gsliced(req(ONE, ONE, a=a, normalized=False))
    fs = bl.average_fsliced(req(ONE, ONE, a=a, normalized=False))
    assert abs(gs - fs) <= 1e-8 * gs
    assert abs(bl.surface_mass(2, a, 32) - bl.surface_mass(2, a, 64)) <= 1e-8 * gs


@pytest.mark.parametrize("a", [(2, 2), (2, 3), (3, 3), (1, 2)])
def test_two_paths_smooth(a):
    rng = np.random.default_rng(5)
    for _ in range(3):
        f = SmoothBump(tuple(rng.uniform(-1, 1, 2)), rng.uniform(0.3, 1), 1.0)
        g = SmoothBump(tuple(rng.uniform(-1, 1, 2)), rng.uniform(0.3, 1), 1.0)
        r = req(f, g, tuple(rng.uniform(-1, 1, 2)), rng.uniform(0.3, 2), rng.uniform(0.3, 2), a)
        gs, fs = bl.average_gsliced(r), bl.average_fsliced(r)
        assert abs(gs - fs) <= 1e-4 * abs(gs)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_bumps_against_parametrised_quadrature(seed):
    rng = np.random.default_rng(100 + seed)
    f = SmoothBump(tuple(rng.uniform(-1, 1, 2)), rng.uniform(0.4, 1), 1.0)
    g = SmoothBump(tuple(rng.uniform(-1, 1, 2)), rng.uniform(0.4, 1), 1.0)
    x, t1, t2 = tuple(rng.uniform(-1, 1, 2)), rng.uniform(0.3, 2), rng.uniform(0.3, 2)
    r = req(f, g, x, t1, t2, (2, 3), normalized=False)
    ref = param_quadrature(f, g, x, t1, t2, (2, 3))
    assert abs(bl.average_gsliced(r) - ref) <= 1e-4 * abs(ref)


def test_oracle_ones_and_determinism():
    r = req(ONE, ONE, normalized=False)
    m1, se1 = bl.average_param_oracle(r, 200_000, seed=3)
    m2, se2 = bl.average_param_oracle(r, 200_000, seed=3)
    assert (m1, se1) == (m2, se2)
    assert abs(m1 - 2 * math.pi ** 2) <= 3 * se1 + 1e-9
    with pytest.raises(PreconditionError):
        bl.average_param_oracle(r, 10)


def test_oracle_indicators():
    f = BallIndicator((0.2, 0.0), 0.9)
    g = BallIndicator((-0.1, 0.3), 0.7)
    r = req(f, g, (0.4, 0.1), 0.9, 1.2, (2, 3), normalized=False)
    est, se = bl.average_param_oracle(r, 400_000, seed=9)
    assert abs(est - bl.average_gsliced(r)) <= 3 * se


def test_swap_symmetry_round_sphere():
    f = SmoothBump((0.3, 0.1), 0.5, 1.0)
    g = BallIndicator((-0.2, 0.4), 0.8)
    lhs = bl.average_gsliced(req(f, g, (0.1, 0.2), 0.7, 1.3, (2, 2)))
    rhs = bl.average_gsliced(req(g, f, (0.1, 0.2), 1.3, 0.7, (2, 2)))
    assert lhs == pytest.approx(rhs, rel=1e-9)


@pytest.mark.parametrize("a", [(2, 3), (1, 2.5)])
def test_exchange_symmetry(a):
    f = SmoothBump((0.3, 0.1), 0.5, 1.0)
    g = SmoothBump((-0.2, 0.4), 0.8, 2.0)
    lhs = bl.average_gsliced(req(f, g, (0.1, 0.2), 0.7, 1.3, a))
    rhs = bl.average_fsliced(req(g, f, (0.1, 0.2), 1.3, 0.7, a[::-1]))
    assert lhs == pytest.approx(rhs, rel=1e-12)
    rhs2 = bl.average_gsliced(req(g, f, (0.1, 0.2), 1.3, 0.7, a[::-1]))
    assert lhs == pytest.approx(rhs2, rel=1e-4)


def test_homogeneity_in_each_slot():
    base = dict(x=(0.1, 0.2), t1=0.7, t2=1.3, a=(2, 3))
    f, g = SmoothBump((0.3, 0.1), 0.5, 1.0), SmoothBump((-0.2, 0.4), 0.8, 1.0)
    v = bl.average_gsliced(req(f, g, **base))
    vf = bl.average_gsliced(req(SmoothBump((0.3, 0.1), 0.5, 2.5), g, **base))
    vg = bl.average_gsliced(req(f, SmoothBump((-0.2, 0.4), 0.8, -3.0), **base))
    assert vf == pytest.approx(2.5 * v, rel=1e-10)
    assert vg == pytest.approx(-3.0 * v, rel=1e-10)


@settings(max_examples=15)
@given(st.floats(0.2, 1.0), st.floats(0.0, 0.5), st.floats(0.3, 1.5), st.floats(0.3, 1.5))
def test_monotone_in_support(r0, extra, t1, t2):
    g = SmoothBump((0.0, 0.2), 0.7, 1.0)
    small = bl.average_gsliced(req(BallIndicator((0.1, 0), r0), g, (0.2, 0.1), t1, t2, (2, 3)))
    big = bl.average_gsliced(req(BallIndicator((0.1, 0), r0 + extra), g, (0.2, 0.1), t1, t2, (2, 3)))
    assert small <= big + 1e-9


@settings(max_examples=15)
@given(st.floats(0.3, 3.0), st.floats(-1, 1), st.floats(-1, 1), st.floats(0.3, 1.5), st.floats(0.3, 1.5))
def test_dilation_covariance(lam, x1, x2, t1, t2):
    f = SmoothBump((0.3, 0.1), 0.5, 1.0)
    g = BallIndicator((-0.2, 0.4), 0.8)
    lhs = bl.average_gsliced(req(f.dilated(lam), g.dilated(lam), (x1, x2), t1, t2, (2, 3)))
    rhs = bl.average_gsliced(req(f, g, (lam * x1, lam * x2), lam * t1, lam * t2, (2, 3)))
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)


# -- dyadic pieces ---------------------------------------------------------------

def test_dyadic_pieces_telescope():
    f = SmoothBump((0.3, 0.1), 0.5, 1.0)
    g = SmoothBump((-0.2, 0.4), 0.8, 1.0)
    r = req(f, g, (0.1, 0.2), 0.7, 1.3, (2, 3))
    total = sum(bl.average_dyadic_piece(r, k) for k in range(1, 41)) + bl.average_tail(r)
    assert abs(total - bl.average_gsliced(r)) <= 1e-6 * abs(total)


def test_dyadic_pieces_ones_positive():
    r = req(ONE, ONE, a=(2, 4))
    vals = np.array([bl.average_dyadic_piece(r, k) for k in range(1, 21)])
    assert np.all(vals > 0)
    assert np.all(np.diff(vals[2:]) < 0)
    assert bl.average_dyadic_piece(r, 41) == 0.0
    with pytest.raises(DomainError):
        bl.average_dyadic_piece(r, 0)


# -- maximal ---------------------------------------------------------------------

def test_maximal_ones():
    grid = Grid.uniform(2, -1, 1, 3)
    fld = bl.maximal_estimate(bl.MaximalRequest(ONE, ONE, grid, 0.5, 2.0, 2.0))
    assert np.allclose(fld.values, 1, atol=1e-9)


def test_diagonal_below_biparam():
    grid = Grid.uniform(2, -1.5, 1.5, 4)
    f, g = BallIndicator((0, 0), 0.5), BallIndicator((0.3, 0), 0.4)
    kw = dict(t_min=0.25, t_max=4, ratio=2 ** 0.5, a=(2, 3))
    bi = bl.maximal_estimate(bl.MaximalRequest(f, g, grid, mode="biparam", **kw)).values
    di = bl.maximal_estimate(bl.MaximalRequest(f, g, grid, mode="diagonal", **kw)).values
    assert np.all(di <= bi + 1e-15)
    assert np.any(di < bi)


def test_refinement_nondecreasing():
    grid = Grid.uniform(2, -1, 1, 3)
    f, g = BallIndicator((0, 0), 0.3), BallIndicator((0, 0), 0.5)
    base = bl.maximal_estimate(bl.MaximalRequest(f, g, grid, 0.25, 4, 2.0)).values
    refined = bl.maximal_estimate(bl.MaximalRequest(f, g, grid, 0.25, 4, 2.0, refine=True,
                                                    node_cap=64)).values
    assert np.all(refined >= base - 1e-15)


def test_maximal_thread_independent():
    grid = Grid.uniform(2, -1, 1, 3)
    f, g = BallIndicator((0, 0), 0.3), SmoothBump((0, 0), 0.5, 1.0)
    one = bl.maximal_estimate(bl.MaximalRequest(f, g, grid, 0.25, 4, 2.0, threads=1)).values
    four = bl.maximal_estimate(bl.MaximalRequest(f, g, grid, 0.25, 4, 2.0, threads=4)).values
    assert np.array_equal(one, four)


def test_maximal_bad_mode():
    with pytest.raises(PreconditionError):
        bl.MaximalRequest(ONE, ONE, Grid.uniform(2, -1, 1, 2), mode="both")
    with pytest.raises(PreconditionError):
        bl.MaximalRequest(ONE, ONE, Grid.uniform(2, -1, 1, 2), ratio=1.0)


def test_norm_ratio_dilation_invariance():
    f, g = BallIndicator((0, 0), 1.0), BallIndicator((0.2, 0), 0.8)
    p, q = 3.0, 6.0
    r = 1 / (1 / p + 1 / q)
    grid = Grid.uniform(2, -3, 3, 7)
    vals = []
    for lam in (1.0, 2.0, 4.0):
        req_l = bl.MaximalRequest(f.dilated(lam), g.dilated(lam), grid.scaled(1 / lam),
                                  0.25 / lam, 4 / lam, 2 ** 0.5)
        vals.append(bl.norm_ratio(f.dilated(lam), g.dilated(lam), p, q, r,
                                  bl.maximal_estimate(req_l)))
    assert 0 < vals[0] < np.inf
    assert np.allclose(vals, vals[0], rtol=1e-8)


def test_norm_ratio_errors():
    fld = bl.maximal_estimate(bl.MaximalRequest(ONE, ONE, Grid.uniform(2, -1, 1, 2), 1, 2, 2.0))
    f = BallIndicator((0, 0), 1.0)
    with pytest.raises(PreconditionError):
        bl.norm_ratio(f, f, 2, 2, 2, fld)
    with pytest.raises(DegenerateInputError):
        bl.norm_ratio(Constant(0.0), f, np.inf, 2, 2, fld)


# -- sharpness experiments ------------------------------------------------------

@pytest.mark.parametrize("a,tol", [((2, 2), 0.2), ((2, 3), 0.3)])
def test_nec1(a, tol):
    fit = bl.sharpness_nec1(2, a)
    assert fit.predicted_slope == 3
    assert abs(fit.slope - 3) <= tol


def test_nec1_short_sequence():
    with pytest.raises(FitError):
        bl.sharpness_nec1(2, (2, 2), deltas=[0.125])
    with pytest.raises(PreconditionError):
        bl.sharpness_nec1(2, (2, 2), deltas=[0.125, 0.25, 0.0625])


@pytest.mark.parametrize("a2", [2, 6])
def test_nec2(a2):
    fit = bl.sharpness_nec2(2, (2, a2))
    assert fit.predicted_slope == pytest.approx(2 / a2 + 1)
    assert abs(fit.slope - fit.predicted_slope) <= 0.15


def test_nec2_mirrored():
    fit = bl.sharpness_nec2(2, (6, 2), mirrored=True)
    assert fit.predicted_slope == pytest.approx(4 / 3)
    assert abs(fit.slope - 4 / 3) <= 0.15
    assert fit.passed


def test_l1_probe():
    fit = bl.l1_failure_probe(2, (2, 2))
    assert fit.extras["min_pointwise_ratio"] > 0
    assert fit.slope > 0 and fit.passed
    with pytest.raises(PreconditionError):
        bl.l1_failure_probe(2, (2, 3))


def test_g_one_independent_of_t2():
    f = BallIndicator((0.1, 0), 0.4)
    v = [bl.average_gsliced(req(f, ONE, (0.5, 0), 0.8, t2, (2, 3))) for t2 in (0.1, 1.0, 7.0)]
    assert np.allclose(v, v[0], rtol=1e-12)


@pytest.mark.parametrize("kw", [dict(C1=2.5), dict(C1=8.0), dict(eps0=0.05)])
def test_nec1_insensitive_to_constants(kw):
    assert abs(bl.sharpness_nec1(2, (2, 2), **kw).slope - 3) <= 0.2


@pytest.mark.parametrize("C", [2.5, 8.0])
def test_nec2_insensitive_to_constants(C):
    assert abs(bl.sharpness_nec2(2, (2, 6), C=C).slope - 4 / 3) <= 0.15
