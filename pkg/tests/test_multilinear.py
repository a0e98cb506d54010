import math
from fractions import Fraction

import numpy as np
import pytest

from maxlab import bilinear as bl
from maxlab import multilinear as ml
from maxlab.errors import AccuracyError, ArityError, DomainError, PreconditionError
from maxlab.fields import BallIndicator, Constant, Grid, SmoothBump
from maxlab.regions import multilinear_necessary

ONE = Constant(1.0)
N = 200_000


def test_nu_examples():
    assert ml.nu(3, 0.5) == pytest.approx(0.5 ** (1 / 3), abs=1e-12)
    assert ml.nu(2, 1.5) == 0
    assert ml.nu(2.5, 0) == 1
    with pytest.raises(DomainError):
        ml.nu(0.5, 0.2)


def test_request_validation():
    with pytest.raises(ArityError):
        ml.MultiAverageRequest((ONE,), (0, 0), (1,), (2,))
    with pytest.raises(ArityError):
        ml.MultiAverageRequest((ONE,) * 5, (0, 0), (1,) * 5, (2,) * 5)
    with pytest.raises(ArityError):
        ml.MultiAverageRequest((ONE,) * 3, (0, 0), (1, 1), (2, 2, 2))
    with pytest.raises(DomainError):
        ml.MultiAverageRequest((ONE,) * 3, (0, 0), (1, 0, 1), (2, 2, 2))
    with pytest.raises(DomainError):
        ml.MultiAverageRequest((ONE,) * 3, (0, 0), (1, 1, 1), (2, 2, 2), pivot=4)
    with pytest.raises(PreconditionError):
        ml.MultiAverageRequest((ONE,) * 3, (0, 0), (1, 1, 1), (2, 2, 2), samples=10)


@pytest.mark.parametrize("a", [(2, 2, 2), (2, 3, 4), (1, 2, 3, 2)])
def test_all_ones(a):
    m = len(a)
    est, se = ml.multilinear_average(ml.MultiAverageRequest((ONE,) * m, (0.1, 0.2), (1.0,) * m, a,
                                                            samples=20_000))
    assert abs(est - 1) <= 3 * se + 1e-12


def test_mass_round_sphere():
    # a = (2, 2) in the plane: the unit sphere of R^4
    assert ml.surface_mass(2, (2, 2), samples=N) == pytest.approx(2 * math.pi ** 2, rel=1e-12)
    # a = (2, 2, 2): the unit sphere of R^6 has area pi^3
    assert ml.surface_mass(2, (2, 2, 2), samples=N) == pytest.approx(math.pi ** 3, rel=1e-12)


def test_mass_agrees_with_bilinear():
    mc = ml.surface_mass(2, (2, 3), samples=N)
    assert mc == pytest.approx(bl.surface_mass(2, (2, 3)), rel=5e-3)


def _balls():
    return (BallIndicator((0.2, 0.0), 0.9), BallIndicator((-0.1, 0.3), 0.8),
            SmoothBump((0.0, 0.1), 0.7, 1.0))


def test_reduction_oracle():
    f1, f2, _ = _balls()
    req = ml.MultiAverageRequest((f1, f2, Constant(1.0)), (0.3, 0.1), (0.9, 1.2, 0.7), (2, 2, 3),
                                 samples=N, normalized=False, seed=4)
    est, se = ml.multilinear_average(req)
    ref = ml.bilinear_reduction(req)
    assert abs(est - ref) <= 3 * se


def test_reduction_requires_constant():
    req = ml.MultiAverageRequest(_balls(), (0.3, 0.1), (1, 1, 1), (2, 2, 3), samples=2000)
    with pytest.raises(PreconditionError):
        ml.bilinear_reduction(req)


def test_pivot_invariance():
    fs = _balls()
    res = [ml.multilinear_average(ml.MultiAverageRequest(fs, (0.3, 0.1), (0.9, 1.2, 0.7), (2, 3, 2),
                                                         pivot=l, samples=N, seed=l))
           for l in (1, 3)]
    (e1, s1), (e3, s3) = res
    assert abs(e1 - e3) <= 3 * math.hypot(s1, s3)


@pytest.mark.parametrize("a", [(2, 2), (2, 3)])
def test_degenerate_bilinear_mode(a):
    f, g, _ = _balls()
    x, t = (0.3, 0.1), (0.9, 1.2)
    ref = bl.average_gsliced(bl.AverageRequest(f, g, x, t[0], t[1], a))
    for pivot in (1, 2):
        est, se = ml.multilinear_average(ml.MultiAverageRequest((f, g), x, t, a, pivot=pivot,
                                                                samples=N, seed=pivot))
        assert abs(est - ref) <= 3 * se


def test_permutation_equivariance_symmetric_a():
    fs = _balls()
    t = (0.9, 1.2, 0.7)
    req = ml.MultiAverageRequest(fs, (0.3, 0.1), t, (2, 2, 2), samples=N)
    perm = ml.MultiAverageRequest((fs[2], fs[0], fs[1]), (0.3, 0.1), (t[2], t[0], t[1]), (2, 2, 2),
                                  pivot=2, samples=N)
    (e1, s1), (e2, s2) = ml.multilinear_average(req), ml.multilinear_average(perm)
    # the draws are shared, so the two estimates are strongly correlated
    assert abs(e1 - e2) <= 3 * max(s1, s2)


def test_permutation_equivariance_mc():
    fs = _balls()
    t, a = (0.9, 1.2, 0.7), (2, 3, 4)
    e1, s1 = ml.multilinear_average(ml.MultiAverageRequest(fs, (0.3, 0.1), t, a, samples=N))
    e2, s2 = ml.multilinear_average(ml.MultiAverageRequest((fs[1], fs[2], fs[0]), (0.3, 0.1),
                                                           (t[1], t[2], t[0]), (3, 4, 2),
                                                           samples=N, seed=7))
    assert abs(e1 - e2) <= 3 * math.hypot(s1, s2)


def test_determinism_and_threads():
    fs = _balls()
    base = dict(x=(0.3, 0.1), t=(0.9, 1.2, 0.7), a=(2, 3, 2), samples=150_000, seed=12)
    one = ml.multilinear_average(ml.MultiAverageRequest(fs, threads=1, **base))
    four = ml.multilinear_average(ml.MultiAverageRequest(fs, threads=4, **base))
    again = ml.multilinear_average(ml.MultiAverageRequest(fs, threads=1, **base))
    assert one == four == again


def test_accuracy_error_at_budget_cap():
    tiny = BallIndicator((3.0, 0.0), 0.02)
    req = ml.MultiAverageRequest((tiny, ONE, ONE), (0.0, 0.0), (3.0, 1.0, 1.0), (2, 2, 2),
                                 samples=2000, max_se_rel=1e-6)
    with pytest.raises(AccuracyError):
        ml.multilinear_average(req)


def test_dyadic_pieces_sum():
    fs = _balls()
    req = ml.MultiAverageRequest(fs, (0.3, 0.1), (0.9, 1.2, 0.7), (2, 2, 3), pivot=3,
                                 samples=50_000, normalized=False, max_se_rel=1.0)
    total, _ = ml.multilinear_average(req)
    pieces = sum(ml.multilinear_dyadic_piece(req, k)[0] for k in range(1, 60))
    assert pieces == pytest.approx(total, rel=1e-9)


# -- maximal ----------------------------------------------------------------------

def _grid():
    return Grid.uniform(2, -1, 1, 3)


def test_maximal_ones():
    fld = ml.multilinear_maximal(ml.MultiMaximalRequest((ONE,) * 3, (2, 2, 3), _grid(),
                                                        samples=4096))
    assert np.allclose(fld.values, 1.0)


def test_maximal_diagonal_and_monotone():
    small = (BallIndicator((0, 0), 0.4), BallIndicator((0.2, 0), 0.5), ONE)
    big = (BallIndicator((0, 0), 0.8), BallIndicator((0.2, 0), 0.5), ONE)
    kw = dict(a=(2, 3, 2), grid=_grid(), samples=8192)
    full = ml.multilinear_maximal(ml.MultiMaximalRequest(small, **kw)).values
    diag = ml.multilinear_maximal(ml.MultiMaximalRequest(small, mode="diagonal", **kw)).values
    bigger = ml.multilinear_maximal(ml.MultiMaximalRequest(big, **kw)).values
    assert np.all(diag <= full + 1e-15)
    assert np.all(full <= bigger + 1e-15)


def test_maximal_bad_inputs():
    with pytest.raises(DomainError):
        ml.MultiMaximalRequest((ONE,) * 3, (2, 2, 2), _grid(), mode="biparam")
    with pytest.raises(PreconditionError):
        ml.MultiMaximalRequest((ONE,) * 3, (2, 2, 2), _grid(), t_grid=(1.0, -1.0))


# -- necessity -------------------------------------------------------------------------

def test_necessity_244():
    fit = ml.necessity_experiment(2, (2, 4, 4), samples=N)
    assert fit.predicted_slope == 2
    assert abs(fit.slope - 2) <= 0.3


def test_necessity_consistency_with_region():
    for a in [(2, 2, 2), (2, 8, 8), (3, 6, 6), (2, 4, 4)]:
        fit = ml.necessity_experiment(2, a, deltas=[0.25, 0.125, 0.0625], radii=(1.0,),
                                      samples=4000)
        bound = Fraction(fit.extras["implied_inv_p1_bound"]).limit_denominator(1000)
        below = (bound - Fraction(1, 100), Fraction(0), Fraction(0))
        above = (bound + Fraction(1, 100), Fraction(0), Fraction(0))
        assert multilinear_necessary(below, 2, a)
        if bound < 1:
            assert not multilinear_necessary(above, 2, a)


def test_necessity_errors():
    with pytest.raises(ArityError):
        ml.necessity_experiment(2, (2, 2))
    with pytest.raises(PreconditionError):
        ml.necessity_experiment(2, (2, 2, 2), deltas=[0.6, 0.3, 0.1])


def test_dyadic_bound_ratios_stable():
    fs = (BallIndicator((0, 0), 0.8), BallIndicator((0.2, 0), 0.6), BallIndicator((0, 0.1), 0.7))
    rep = ml.dyadic_bound_check(fs, (0.5, 0.5), (1.0, 1.0, 1.0), (2, 2, 3), ks=range(3, 7),
                                samples=1 << 17)
    rb = np.array(rep.ratios_bilinear)
    rg = np.array(rep.ratios_growth)
    assert np.all(np.isfinite(rb)) and np.all(rb > 0)
    assert rb.max() / rb.min() < 3
    # the growth bound is loose for a3 > n: its ratio decays
    assert np.all(np.diff(rg) < 0)
