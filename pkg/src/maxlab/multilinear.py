"""Multilinear averages over ``|y^1|^{a1} + ... + |y^m|^{am} = 1`` in ``R^{mn}``.

With ``v_j = |y^j|^{a_j}`` the co-area formula turns the surface integral
into an integral over the simplex ``sum v_j = 1`` with density proportional
to ``prod v_j^{n/a_j - 1} |grad Phi|``, where
``|grad Phi|^2 = sum a_j^2 v_j^{2(a_j - 1)/a_j}``.  The simplex is sampled
from the Dirichlet law with parameters ``n/a_j``; the angular part of every
block except the pivot ``l`` is sampled uniformly, and the pivot block is
replaced by its exact spherical mean at radius ``nu_{a_l}(|hat y^l|)``.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import bilinear
from ._quad import panel_rule
from .errors import AccuracyError, ArityError, DomainError, PreconditionError
from .fields import BallIndicator, Constant, FunctionSpec, Grid, SampledField, ball_volume, sphere_area
from .fitting import fit_loglog
from .sampling import chunk_rng, chunk_sizes, parallel_map, sphere_points

M_MAX = 4


def nu(a, t):
    """``(1 - t)_+^{1/a}``."""
    if a < 1:
        raise DomainError(f"exponent must be at least 1, got {a}")
    t = np.asarray(t, dtype=float)
    out = np.maximum(1.0 - t, 0.0) ** (1.0 / a)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class MultiAverageRequest:
    """One m-linear average ``A_t(f_1, ..., f_m)(x)``.

    ``pivot`` is 1-based.  ``samples`` is the Monte-Carlo budget; the
    estimate is rejected when its standard error exceeds
    ``max_se_abs + max_se_rel * |estimate|``.  ``m = 2`` is accepted as a
    degenerate mode for cross-checks against the bilinear engine.
    """

    fs: tuple
    x: tuple
    t: tuple
    a: tuple
    pivot: int = 1
    samples: int = 10 ** 6
    seed: int = 0
    normalized: bool = True
    max_se_rel: float = 0.1
    max_se_abs: float = 1e-12
    threads: int = None

    def __post_init__(self):
        fs = tuple(self.fs)
        t = tuple(float(v) for v in np.atleast_1d(self.t))
        a = tuple(float(v) for v in np.atleast_1d(self.a))
        object.__setattr__(self, "fs", fs)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "x", tuple(float(v) for v in np.atleast_1d(self.x)))
        m = len(fs)
        if not 2 <= m <= M_MAX or len(t) != m or len(a) != m:
            raise ArityError(f"need 2..{M_MAX} functions with matching t and a, got "
                             f"{m}, {len(t)}, {len(a)}")
        if any(v <= 0 for v in t):
            raise DomainError(f"dilations must be positive, got {t}")
        if any(v < 1 for v in a):
            raise DomainError(f"exponents must be at least 1, got {a}")
        if not 1 <= self.pivot <= m:
            raise DomainError(f"pivot must lie in 1..{m}, got {self.pivot}")
        if self.samples < 1000:
            raise PreconditionError(f"need at least 1000 samples, got {self.samples}")

    @property
    def m(self):
        return len(self.fs)

    @property
    def n(self):
        return len(self.x)


def simplex_constant(n, a):
    """``prod (1/a_j) Gamma(n/a_j) / Gamma(sum n/a_j)``."""
    al = n / np.asarray(a, dtype=float)
    return float(np.exp(np.sum(special.gammaln(al)) - special.gammaln(al.sum()) - np.sum(np.log(a))))


def _grad_norm(v, a):
    # v: (S, m); v_j^{(a_j - 1)/a_j} computed in log space to survive v = 0
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore"):
        lv = np.log(v)
    terms = np.exp(2 * ((a - 1) / a * lv + np.log(a)))
    return np.sqrt(terms.sum(axis=-1))


def _draw_blocks(rng, size, n, a):
    al = n / np.asarray(a, dtype=float)
    v = rng.dirichlet(al, size)
    th = np.stack([sphere_points(rng, size, n) for _ in a], axis=1)    # (S, m, n)
    return v, th


def _block_values(req, v, th, ts_per_block):
    """Per-block factor arrays ``(S, T_j)`` for the given dilation lists."""
    x = np.asarray(req.x)
    n = req.n
    out = []
    for j, (f, a) in enumerate(zip(req.fs, req.a)):
        ts = np.asarray(ts_per_block[j], dtype=float)
        rad = v[:, j] ** (1.0 / a)
        if j == req.pivot - 1:
            r = rad[:, None] * ts[None, :]
            vals = f.sphere_mean(x, r.ravel(), n).reshape(r.shape)
        else:
            pts = x[None, None, :] - (ts[None, :, None] * rad[:, None, None]) * th[:, None, j, :]
            vals = f(pts)
        out.append(np.asarray(vals, dtype=float))
    return out


def _chunk_sums(work, total, threads):
    sizes = chunk_sizes(total)
    parts = parallel_map(lambda i: work(i, sizes[i]), range(len(sizes)), threads)
    acc = parts[0]
    for p in parts[1:]:
        acc = [u + w for u, w in zip(acc, p)]
    return acc, float(sum(sizes))


def _ratio(sx, sy, sxx, syy, sxy, count):
    """Ratio-of-means estimate with its delta-method standard error."""
    mx, my = sx / count, sy / count
    r = mx / my
    vx = sxx / count - mx * mx
    vy = syy / count - my * my
    cxy = sxy / count - mx * my
    var = np.maximum(vx - 2 * r * cxy + r * r * vy, 0.0) / (my * my) / max(count - 1, 1)
    return r, np.sqrt(var)


def _moments(req, restrict=None):
    n, a = req.n, req.a
    area = sphere_area(n)

    def work(i, size):
        rng = chunk_rng(req.seed, i)
        v, th = _draw_blocks(rng, size, n, a)
        w = _grad_norm(v, a)
        vals = _block_values(req, v, th, [[t] for t in req.t])
        F = np.prod([b[:, 0] for b in vals], axis=0) / area     # pivot mean carries |S|
        if restrict is not None:
            F = F * restrict(v)
        x, y = w * F, w
        return [x.sum(), y.sum(), (x * x).sum(), (y * y).sum(), (x * y).sum()]

    return _chunk_sums(work, req.samples, req.threads)


def _estimate(req, acc, count):
    sx, sy, sxx, syy, sxy = acc
    if req.normalized:
        return _ratio(sx, sy, sxx, syy, sxy, count)
    scale = sphere_area(req.n) ** req.m * simplex_constant(req.n, req.a)
    mean = sx / count
    se = np.sqrt(max(sxx / count - mean * mean, 0.0) / max(count - 1, 1))
    return scale * mean, scale * se


def _finish(req, acc, count, label):
    est, se = _estimate(req, acc, count)
    if se > req.max_se_abs + req.max_se_rel * abs(est):
        raise AccuracyError(f"{label}: standard error {se:.3g} above tolerance", est, se)
    return float(est), float(se)


def multilinear_average(req):
    """Monte-Carlo estimate of the average and its standard error.

    The normalised value is the ratio of the weighted integrand mean to the
    mean weight, both taken over the same draws; its standard error comes
    from the delta method.  With ``normalized=False`` the weighted mean is
    scaled by the exact simplex constant instead.
    """
    acc, count = _moments(req)
    return _finish(req, acc, count, "multilinear average")


def multilinear_dyadic_piece(req, k):
    """Part of the average with ``2^-k <= 1 - |hat y^l| <= 2^{1-k}`` for the pivot ``l``."""
    if k < 1 or int(k) != k:
        raise DomainError(f"piece index must be a positive integer, got {k}")
    lo, hi = 2.0 ** -k, 2.0 ** (1 - k)
    col = req.pivot - 1
    acc, count = _moments(req, lambda v: (v[:, col] >= lo) & (v[:, col] <= hi))
    est, se = _estimate(req, acc, count)
    return float(est), float(se)


def surface_mass(n, a, samples=10 ** 6, seed=0):
    """Unnormalised area ``|S|^m C_a E[|grad Phi|]`` estimated with ``samples`` draws.

    The stream is keyed by ``seed + 1`` so that it is independent of the one
    used for the average.
    """
    a = tuple(float(v) for v in a)
    m = len(a)

    def work(i, size):
        v = chunk_rng(seed + 1, i).dirichlet(n / np.asarray(a), size)
        return [_grad_norm(v, a).sum()]

    (s,), count = _chunk_sums(work, samples, None)
    return float(sphere_area(n) ** m * simplex_constant(n, a) * s / count)


# -- maximal estimates ---------------------------------------------------------

@dataclass(frozen=True)
class MultiMaximalRequest:
    """Discrete supremum of the normalised average over a product t-grid."""

    fs: tuple
    a: tuple
    grid: Grid
    t_grid: tuple = tuple(2.0 ** np.arange(-2, 3, 0.5))
    mode: str = "multiparam"
    pivot: int = 1
    samples: int = 1 << 17
    seed: int = 0
    threads: int = None

    def __post_init__(self):
        if self.mode not in ("multiparam", "diagonal"):
            raise DomainError(f"mode must be 'multiparam' or 'diagonal', got {self.mode!r}")
        ts = np.asarray(self.t_grid, dtype=float)
        if ts.ndim != 1 or ts.size == 0 or np.any(ts <= 0):
            raise PreconditionError("t grid must be a nonempty list of positive values")
        object.__setattr__(self, "t_grid", tuple(ts.tolist()))


def _table_at(req, x):
    m = len(req.fs)
    ts = np.asarray(req.t_grid)
    base = MultiAverageRequest(req.fs, x, (1.0,) * m, req.a, pivot=req.pivot, samples=req.samples,
                               seed=req.seed)
    area = sphere_area(base.n)
    letters = "abcd"[:m]
    spec = "s," + ",".join("s" + c for c in letters) + "->" + letters

    def work(i, size):
        v, th = _draw_blocks(chunk_rng(req.seed, i), size, base.n, base.a)
        w = _grad_norm(v, base.a)
        vals = _block_values(base, v, th, [ts] * m)
        return [np.einsum(spec, w, *vals), w.sum()]

    (tab, sw), _ = _chunk_sums(work, req.samples, None)
    return tab / (sw * area)


def _max_at(req, x):
    tab = _table_at(req, x)
    if req.mode == "diagonal":
        idx = np.arange(tab.shape[0])
        tab = tab[(idx,) * tab.ndim]
    return float(np.max(np.abs(tab)))


def multilinear_maximal(req):
    """Normalised maximal estimate on ``req.grid``.

    Every t-tuple at a point is evaluated from the same draws, so the
    diagonal supremum never exceeds the multiparameter one and the estimate
    is monotone in each input.
    """
    pts = req.grid.points()
    vals = np.array(parallel_map(lambda x: _max_at(req, x), pts, req.threads))
    return SampledField(req.grid, vals.reshape(req.grid.shape))


# -- reduction to the bilinear engine -------------------------------------------

def bilinear_reduction(req, rho_panels=4, rho_order=16, order=16):
    """Unnormalised trilinear average with ``f_3`` constant, via the bilinear engine.

    Slicing off the third block leaves an integral over the solid region
    ``r^{a1} + s^{a2} < 1``.  Its level sets ``r^{a1} + s^{a2} = rho`` are
    anisotropic dilates of the bilinear surface, so the value is a ``rho``
    integral of bilinear averages at dilations
    ``(t1 rho^{1/a1}, t2 rho^{1/a2})`` with the weight
    ``c |S| nu^{n - a3} |grad Phi| / (a3 G)`` attached to each surface point.
    """
    if req.m != 3 or not isinstance(req.fs[2], Constant):
        raise PreconditionError("reduction needs m = 3 and a constant third function")
    n = req.n
    a1, a2, a3 = req.a
    t1, t2, _ = req.t
    c = req.fs[2].c
    area = sphere_area(n)
    edges = np.linspace(0.0, 1.0, rho_panels + 1)
    rhos, wts = panel_rule(edges, rho_order)
    total = 0.0
    for rho, wq in zip(rhos, wts):
        if wq == 0 or rho <= 0 or rho >= 1:
            continue
        nv = nu(a3, rho)
        s1, s2 = rho ** (1 / a1), rho ** (1 / a2)

        def extra(r, om, s1=s1, s2=s2, nv=nv):
            G = np.hypot(a1 * r ** (a1 - 1), a2 * om ** (a2 - 1))
            grad = np.sqrt((a1 * (s1 * r) ** (a1 - 1)) ** 2 + (a2 * (s2 * om) ** (a2 - 1)) ** 2
                           + (a3 * nv ** (a3 - 1)) ** 2)
            return c * area * nv ** (n - a3) * grad / (a3 * G)

        sub = bilinear.AverageRequest(req.fs[0], req.fs[1], req.x, t1 * s1, t2 * s2, (a1, a2),
                                      order=order, normalized=False, rtol=1e-6)
        val = bilinear.average_gsliced(sub, extra=extra)
        total += wq * rho ** (n * (1 / a1 + 1 / a2) - 1) * val
    return float(total)


# -- necessity experiment ---------------------------------------------------------

def _lower_bound(n, a, delta, C, x, samples, seed, threads):
    """``int_{R(delta)} prod_{j>=2} f_j A f_1`` with the exact slicing weight, normalised.

    ``R(delta) = {|y^j|^{a_j} <= delta, j >= 2}`` is sampled uniformly.
    """
    m = len(a)
    f1 = BallIndicator(np.zeros(n), C * delta)
    fj = BallIndicator(np.zeros(n), 4.0)
    rho = float(np.linalg.norm(x))
    radii = np.array([delta ** (1 / aj) for aj in a[1:]])
    vol = float(np.prod(ball_volume(n) * radii ** n))
    a1 = a[0]

    def work(i, size):
        rng = chunk_rng(seed, i)
        prod = np.ones(size)
        v = np.zeros((size, m))
        for j in range(1, m):
            u = rng.uniform(size=size) ** (1 / n) * radii[j - 1]
            y = u[:, None] * sphere_points(rng, size, n)
            v[:, j] = u ** a[j]
            prod = prod * fj(x - rho * y)
        v[:, 0] = 1.0 - v[:, 1:].sum(axis=1)
        nv = v[:, 0] ** (1 / a1)
        grad = _grad_norm(v, a)
        A = f1.sphere_mean(x, rho * nv, n)
        val = prod * A * nv ** (n - a1) * grad / a1
        return [val.sum(), (val * val).sum()]

    (s, s2), count = _chunk_sums(work, samples, threads)
    mean = s / count
    se = np.sqrt(max(s2 / count - mean * mean, 0.0) / (count - 1))
    mass = surface_mass(n, a, samples, seed)
    return vol * mean / mass, vol * se / mass


def necessity_experiment(n, a, deltas=2.0 ** -np.arange(2, 6), C=4.0, radii=(1.0, 1.5, 2.0),
                         samples=10 ** 6, seed=0, tolerance=0.3, threads=None):
    """Decay rate of the maximal lower bound for a shrinking first input.

    ``f_1`` is the indicator of ``B(0, C delta)`` and the other inputs the
    indicator of ``B(0, 4)``.  At each ``x = (rho, 0, ...)`` with
    ``1 <= rho <= 2`` all dilations equal ``rho``, so the sphere carrying
    the pivot mean passes through the origin.  The minimum over the radii of
    the sliced integral over ``R(delta)`` is fitted against ``delta``; the
    predicted slope is ``(n - 1) + sum_{j>=2} n / a_j``.
    """
    a = tuple(float(v) for v in a)
    if len(a) < 3 or len(a) > M_MAX:
        raise ArityError(f"need 3..{M_MAX} exponents, got {len(a)}")
    deltas = np.asarray(deltas, dtype=float)
    if np.any(deltas <= 0) or np.any(deltas * (len(a) - 1) >= 1):
        raise PreconditionError("need 0 < delta < 1/(m - 1)")
    predicted = (n - 1) + sum(n / aj for aj in a[1:])
    lows, ses = [], []
    for d in deltas:
        vals = [_lower_bound(n, a, d, C, np.r_[rho, np.zeros(n - 1)], samples, seed, threads)
                for rho in radii]
        k = int(np.argmin([v[0] for v in vals]))
        lows.append(vals[k][0])
        ses.append(vals[k][1])
    fit = fit_loglog(deltas, np.array(lows), predicted, tolerance)
    fit.extras.update({"standard_errors": [float(s) for s in ses], "C": C, "n": n, "a": list(a),
                       "radii": list(radii), "samples": int(samples), "seed": int(seed),
                       "implied_inv_p1_bound": min(1.0, predicted / n)})
    return fit


# -- dyadic bounds for the pivot piece ---------------------------------------------

@dataclass
class DyadicBoundReport:
    ks: list
    pieces: list
    standard_errors: list
    rhs_growth: list
    rhs_bilinear: list
    ratios_growth: list = field(default_factory=list)
    ratios_bilinear: list = field(default_factory=list)

    def as_dict(self):
        return dict(self.__dict__)


def dyadic_bound_check(fs, x, t, a, ks=range(2, 7), samples=1 << 18, seed=0, t_grid=None,
                       radii=None, threads=None):
    """Compare the pivot-3 dyadic pieces with both maximal-function bounds.

    For each ``k`` the unnormalised piece is divided by
    ``2^{k(a3-n)/a3} M f1 M f2 M_s f3`` and by
    ``2^{-kn/a3} M^{(a1,a2)}(f1, f2) M f3``, each maximal function being the
    discrete one computed by this package.  Bounded ratios that do not grow
    with ``k`` are what the estimates predict.
    """
    from .fields import hl_max_at
    if len(fs) != 3:
        raise ArityError("dyadic bounds are stated for three inputs")
    a = tuple(float(v) for v in a)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = len(x)
    t_grid = bilinear.geometric_grid(0.125, 8.0, 2 ** 0.25) if t_grid is None else np.asarray(t_grid)
    radii = t_grid if radii is None else np.asarray(radii)
    Mf = [hl_max_at(f, x, radii) for f in fs]
    Ms3 = float(np.max(np.abs(fs[2].sphere_mean(x, t_grid, n))) / sphere_area(n))
    big = bilinear.MaximalRequest(fs[0], fs[1], Grid.uniform(n, -1.0, 1.0, 2),
                                  t_min=float(t_grid[0]), t_max=float(t_grid[-1]), a=a[:2])
    Mbil = bilinear._max_at(big, x, big.t_grid())
    req = MultiAverageRequest(fs, x, t, a, pivot=3, samples=samples, seed=seed, normalized=False,
                              threads=threads)
    rep = DyadicBoundReport(list(ks), [], [], [], [])
    for k in ks:
        est, se = multilinear_dyadic_piece(req, k)
        r14 = 2.0 ** (k * (a[2] - n) / a[2]) * Mf[0] * Mf[1] * Ms3
        r15 = 2.0 ** (-k * n / a[2]) * Mbil * Mf[2]
        rep.pieces.append(est)
        rep.standard_errors.append(se)
        rep.rhs_growth.append(r14)
        rep.rhs_bilinear.append(r15)
        rep.ratios_growth.append(est / r14 if r14 > 0 else np.inf)
        rep.ratios_bilinear.append(est / r15 if r15 > 0 else np.inf)
    return rep

