"""Bilinear averages over ``|y|^{a1} + |z|^{a2} = 1`` in ``R^n x R^n``.

Writing the surface as a graph over the ``y`` ball, ``z = omega(|y|) theta``,
the induced measure is ``W(|y|) omega(|y|)^{n-1} dy dtheta`` with
``W = sqrt(1 + omega'^2)``.  Integrating out the two spheres turns the
average into the one-dimensional integral

    int_0^1 W omega^{n-1} r^{n-1} A f(x, t1 r) A g(x, t2 omega(r)) dr,

where ``A`` is the unnormalised spherical mean.  That is the "g-sliced" path;
the "f-sliced" path does the same over the ``z`` ball.  The radial integral
is taken on a mesh graded in ``v = 1 - r^{a_out}`` with dyadic cells
``[2^-k, 2^{1-k}]`` (which are exactly the dyadic pieces), split further at
every radius where one of the spherical means has a kink.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np
from scipy import optimize, special

from ._quad import merge_breaks, panel_rule
from .errors import (AccuracyError, ArityError, DegenerateInputError, DomainError,
                     FitError, PreconditionError)
from .fields import (BallIndicator, Constant, FunctionSpec, Grid, SampledField,
                     hl_max_at, lp_norm, sphere_area)
from .fitting import fit_log2_linear, fit_loglog, fit_semilog
from .sampling import mc_moments, parallel_map, sphere_points

K_MAX = 40


def _pair(a):
    a = tuple(float(v) for v in (a.a if hasattr(a, "a") else a))
    if len(a) != 2:
        raise ArityError(f"bilinear anisotropy needs two exponents, got {len(a)}")
    if min(a) < 1:
        raise DomainError(f"exponents must be >= 1, got {a}")
    return a


@dataclass(frozen=True)
class SliceGeometry:
    n: int
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", _pair(self.a))

    def omega(self, r):
        a1, a2 = self.a
        return np.maximum(1 - np.asarray(r, dtype=float) ** a1, 0.0) ** (1 / a2)

    def omega_tilde(self, r):
        a1, a2 = self.a
        return np.maximum(1 - np.asarray(r, dtype=float) ** a2, 0.0) ** (1 / a1)

    def omega_prime(self, r):
        a1, a2 = self.a
        r = np.asarray(r, dtype=float)
        return -(a1 / a2) * r ** (a1 - 1) * self.omega(r) ** (1 - a2)

    def weight(self, r):
        """Co-area weight ``W(r) = |grad Phi| / (a2 omega^{a2-1})``."""
        a1, a2 = self.a
        r = np.asarray(r, dtype=float)
        om = self.omega(r)
        return np.hypot(a1 * r ** (a1 - 1), a2 * om ** (a2 - 1)) / (a2 * om ** (a2 - 1))

    def weight_tilde(self, r):
        return self.swapped().weight(r)

    def swapped(self):
        return SliceGeometry(self.n, self.a[::-1])


@dataclass
class RadialMesh:
    r: np.ndarray
    omega: np.ndarray
    weight: np.ndarray
    cell: np.ndarray


def radial_mesh(n, a_out, a_in, r_breaks=(), w_breaks=(), order=16, panels=4,
                kmax=K_MAX, cells=None):
    """Nodes and weights for ``int_0^1 F(r, omega(r)) G omega^{n-a_in} / a_in r^{n-1} dr``.

    ``G = sqrt(a_out^2 r^{2a_out-2} + a_in^2 omega^{2a_in-2})``.  Cell 1
    (``v >= 1/2``) is integrated in ``r``, cells ``2..kmax`` in ``v`` and the
    remaining tail (labelled ``kmax + 1``) in ``omega``.  ``cells`` restricts
    the mesh to a subset of cell labels.
    """
    rb = np.asarray(r_breaks, dtype=float).ravel()
    rb = rb[(rb > 0) & (rb < 1)]
    wb = np.asarray(w_breaks, dtype=float).ravel()
    wb = wb[(wb > 0) & (wb < 1)]
    v_from_r = -np.expm1(a_out * np.log(rb)) if rb.size else rb
    v_from_w = wb ** a_in
    want = (lambda k: True) if cells is None else (lambda k: k in cells)
    parts = []

    if want(1):
        top = 0.5 ** (1 / a_out)
        brk = np.concatenate((np.linspace(0, top, panels + 1)[1:-1], rb,
                              np.exp(np.log1p(-v_from_w) / a_out)))
        r, w = panel_rule(merge_breaks(0.0, top, brk), order)
        om = (1 - r ** a_out) ** (1 / a_in)
        g = np.hypot(a_out * r ** (a_out - 1), a_in * om ** (a_in - 1))
        parts.append((r, om, g * om ** (n - a_in) / a_in * r ** (n - 1) * w,
                      np.ones(r.size, dtype=int)))

    ks = [k for k in range(2, kmax + 1) if want(k)]
    if ks:
        lo, hi = 2.0 ** -max(ks), 2.0 ** (1 - min(ks))
        dy = 2.0 ** -np.arange(min(ks), max(ks))
        edges = merge_breaks(lo, hi, np.concatenate((dy, v_from_r, v_from_w)))
        v, w = panel_rule(edges, order)
        cell = np.floor(-np.log2(v)).astype(int) + 1
        keep = np.isin(cell, ks)
        v, w, cell = v[keep], w[keep], cell[keep]
        r = np.exp(np.log1p(-v) / a_out)
        om = v ** (1 / a_in)
        g = np.hypot(a_out * r ** (a_out - 1), a_in * om ** (a_in - 1))
        jac = (1 / a_out) * (1 - v) ** (1 / a_out - 1)
        parts.append((r, om, g * v ** ((n - a_in) / a_in) / a_in * r ** (n - 1) * jac * w, cell))

    if want(kmax + 1):
        top = 2.0 ** (-kmax / a_in)
        brk = np.concatenate((wb, v_from_r ** (1 / a_in)))
        om, w = panel_rule(merge_breaks(0.0, top, brk), order)
        v = om ** a_in
        r = np.exp(np.log1p(-v) / a_out)
        g = np.hypot(a_out * r ** (a_out - 1), a_in * om ** (a_in - 1))
        jac = (1 / a_out) * (1 - v) ** (1 / a_out - 1)
        parts.append((r, om, g * om ** (n - 1) * r ** (n - 1) * jac * w,
                      np.full(om.size, kmax + 1, dtype=int)))

    if not parts:
        e = np.empty(0)
        return RadialMesh(e, e, e, np.empty(0, dtype=int))
    return RadialMesh(*(np.concatenate(c) for c in zip(*parts)))


def _kinks(spec, x, ts):
    k = spec.sphere_kinks(x)
    if k.size == 0:
        return k
    return (k[:, None] / np.atleast_1d(ts)[None, :]).ravel()


def _core(out, t_out, inn, t_in, x, a_out, a_in, order, mean_order, cells=None, extra=None,
          kmax=K_MAX):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = len(x)
    mesh = radial_mesh(n, a_out, a_in, _kinks(out, x, t_out), _kinks(inn, x, t_in),
                       order=order, kmax=kmax, cells=cells)
    if mesh.r.size == 0:
        return 0.0
    wt = mesh.weight if extra is None else mesh.weight * extra(mesh.r, mesh.omega)
    A = out.sphere_mean(x, t_out * mesh.r, n, mean_order)
    B = inn.sphere_mean(x, t_in * mesh.omega, n, mean_order)
    return float(np.sum(wt * A * B))


@dataclass(frozen=True)
class AverageRequest:
    """One bilinear average ``A_t(f, g)(x)``.

    ``order`` is the Gauss node count per radial panel and
    ``sphere_resolution`` the per-panel node count for spherical means that
    have no closed form.
    """

    f: FunctionSpec
    g: FunctionSpec
    x: tuple
    t1: float
    t2: float
    a: tuple = (2.0, 2.0)
    order: int = 16
    sphere_resolution: int = 24
    normalized: bool = True
    rtol: float = 1e-7

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in np.atleast_1d(self.x)))
        object.__setattr__(self, "a", _pair(self.a))
        if not (self.t1 > 0 and self.t2 > 0):
            raise DomainError(f"dilations must be positive, got {(self.t1, self.t2)}")

    @property
    def n(self):
        return len(self.x)


def _checked(fn, req, label):
    """Run ``fn(order, mean_order)`` at the base and doubled resolution."""
    coarse = fn(req.order, req.sphere_resolution)
    fine = fn(2 * req.order, 2 * req.sphere_resolution)
    err = abs(fine - coarse)
    scale = _mass_scale(req.n, req.a)
    if err > req.rtol * abs(fine) + 1e-13 * scale:
        raise AccuracyError(f"{label}: estimated error {err:.3g} above tolerance", fine, err)
    return fine


def _mass_scale(n, a):
    return sphere_area(n) ** 2


def _normalize(value, req):
    return value / surface_mass(req.n, req.a) if req.normalized else value


def average_gsliced(req, extra=None):
    """Average with the outer integral over the ``y`` ball."""
    a1, a2 = req.a
    fn = lambda q, m: _core(req.f, req.t1, req.g, req.t2, req.x, a1, a2, q, m, extra=extra)
    return _normalize(_checked(fn, req, "g-sliced"), req)


def average_fsliced(req, extra=None):
    """Average with the outer integral over the ``z`` ball."""
    a1, a2 = req.a
    swap = None if extra is None else (lambda r, om: extra(om, r))
    fn = lambda q, m: _core(req.g, req.t2, req.f, req.t1, req.x, a2, a1, q, m, extra=swap)
    return _normalize(_checked(fn, req, "f-sliced"), req)


def average_dyadic_piece(req, k):
    """Part of the g-sliced average with ``2^-k <= 1 - |y|^{a1} <= 2^{1-k}``.

    Shells beyond ``K_MAX`` are not resolved individually and return 0.
    """
    if k < 1 or int(k) != k:
        raise DomainError(f"piece index must be a positive integer, got {k}")
    if k > K_MAX:
        return 0.0
    a1, a2 = req.a
    fn = lambda q, m: _core(req.f, req.t1, req.g, req.t2, req.x, a1, a2, q, m, cells={int(k)})
    return _normalize(_checked(fn, req, f"piece {k}"), req)


def average_tail(req):
    """Part of the g-sliced average with ``1 - |y|^{a1} < 2^-K_MAX``."""
    a1, a2 = req.a
    fn = lambda q, m: _core(req.f, req.t1, req.g, req.t2, req.x, a1, a2, q, m, cells={K_MAX + 1})
    return _normalize(_checked(fn, req, "tail"), req)


@lru_cache(maxsize=256)
def _surface_mass(n, a, order):
    one = Constant(1.0)
    x = np.zeros(n)
    return _core(one, 1.0, one, 1.0, x, a[0], a[1], order, 24)


def surface_mass(n, a, resolution=32):
    """Unnormalised area of the surface (cached per ``(n, a, resolution)``)."""
    return _surface_mass(int(n), _pair(a), int(resolution))


def solve_s_star(a):
    """Root in ``(0, 1)`` of ``s^{a1} + s^{a2} = 1``."""
    a1, a2 = _pair(a)
    return optimize.bisect(lambda s: s ** a1 + s ** a2 - 1, 0.0, 1.0, xtol=1e-15, rtol=1e-15,
                           maxiter=200)


# -- Monte-Carlo oracle ------------------------------------------------------

def _oracle_log_weight(v, n, a1, a2):
    """Log of the parametrised surface element divided by the Beta sampling density."""
    lr = np.log1p(-v) / a1
    lw = np.log(v) / a2
    ldw = np.log(a1 / a2) + (a1 - 1) * lr + (1 - a2) * lw
    l_ds = 0.5 * np.logaddexp(0.0, 2 * ldw)          # log sqrt(1 + omega'^2)
    l_drdv = -np.log(a1) + (1 / a1 - 1) * np.log1p(-v)
    alpha, beta = n / a2, n / a1
    l_pdf = (alpha - 1) * np.log(v) + (beta - 1) * np.log1p(-v) - special.betaln(alpha, beta)
    return l_ds + (n - 1) * (lr + lw) + l_drdv - l_pdf + 2 * np.log(sphere_area(n))


def average_param_oracle(req, samples=10 ** 6, seed=0, threads=None):
    """Monte-Carlo estimate of the unnormalised average and its standard error.

    Points ``(r theta, omega(r) phi)`` are drawn with ``v = 1 - r^{a1}``
    Beta-distributed and ``theta``, ``phi`` uniform on the sphere; each is
    weighted by the exact surface element over the sampling density.
    """
    if samples < 1000:
        raise PreconditionError(f"need at least 1000 samples, got {samples}")
    a1, a2 = req.a
    n = req.n
    x = np.asarray(req.x)
    alpha, beta = n / a2, n / a1
    tiny = np.finfo(float).tiny

    def draw(rng, size):
        v = np.clip(rng.beta(alpha, beta, size), tiny, 1 - 1e-16)
        th = sphere_points(rng, size, n)
        ph = sphere_points(rng, size, n)
        r = np.exp(np.log1p(-v) / a1)
        om = v ** (1 / a2)
        w = np.exp(_oracle_log_weight(v, n, a1, a2))
        return w * req.f(x - req.t1 * r[:, None] * th) * req.g(x - req.t2 * om[:, None] * ph)

    mean, se = mc_moments(draw, samples, seed, threads)
    return float(mean), float(se)


# -- maximal estimates ---------------------------------------------------------

def geometric_grid(t_min, t_max, ratio):
    if not (t_min > 0 and t_max >= t_min and ratio > 1):
        raise PreconditionError("need 0 < t_min <= t_max and ratio > 1")
    k = int(math.floor(math.log(t_max / t_min) / math.log(ratio) + 1e-9))
    return t_min * ratio ** np.arange(k + 1)


@dataclass(frozen=True)
class MaximalRequest:
    f: FunctionSpec
    g: FunctionSpec
    grid: Grid
    t_min: float = 0.125
    t_max: float = 8.0
    ratio: float = 2 ** (1 / 8)
    mode: str = "biparam"
    a: tuple = (2.0, 2.0)
    normalized: bool = True
    order: int = 8
    piece: int | None = None
    refine: bool = False
    node_cap: int = 1024
    threads: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", _pair(self.a))
        if self.mode not in ("biparam", "diagonal"):
            raise PreconditionError(f"mode must be 'biparam' or 'diagonal', got {self.mode!r}")
        geometric_grid(self.t_min, self.t_max, self.ratio)

    def t_grid(self, ratio=None):
        return geometric_grid(self.t_min, self.t_max, ratio or self.ratio)


def average_table(f, g, x, t1s, t2s, a, order=8, cells=None, mean_order=24):
    """Unnormalised g-sliced averages for every pair ``(t1s[i], t2s[j])``."""
    a1, a2 = _pair(a)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = len(x)
    t1s = np.atleast_1d(t1s)
    t2s = np.atleast_1d(t2s)
    mesh = radial_mesh(n, a1, a2, _kinks(f, x, t1s), _kinks(g, x, t2s), order=order, cells=cells)
    if mesh.r.size == 0:
        return np.zeros((t1s.size, t2s.size))
    F = f.sphere_mean(x, np.outer(t1s, mesh.r), n, mean_order)
    G = g.sphere_mean(x, np.outer(t2s, mesh.omega), n, mean_order)
    return (F * mesh.weight) @ G.T


def _max_at(req, x, ts):
    cells = None if req.piece is None else {int(req.piece)}
    if req.piece is not None and req.piece > K_MAX:
        return 0.0
    # one shared mesh for every pair, so the diagonal is a subset of the table
    table = average_table(req.f, req.g, x, ts, ts, req.a, req.order, cells)
    best = np.max(np.abs(table if req.mode == "biparam" else np.diag(table)))
    if req.normalized:
        best /= surface_mass(len(x), req.a)
    return float(best)


def maximal_estimate(req):
    """Discrete supremum over the t-grid of the (normalised) averages on ``req.grid``.

    With ``refine`` the ratio of the t-grid is square-rooted (so the old
    nodes are kept) until the field moves by less than 0.5% or the node cap
    is reached.
    """
    pts = req.grid.points()
    ratio = req.ratio
    ts = req.t_grid(ratio)
    vals = np.array(parallel_map(lambda x: _max_at(req, x, ts), pts, req.threads))
    while req.refine:
        ratio = math.sqrt(ratio)
        ts = req.t_grid(ratio)
        if ts.size > req.node_cap:
            break
        new = np.array(parallel_map(lambda x: _max_at(req, x, ts), pts, req.threads))
        change = np.max(np.abs(new - vals) / np.maximum(np.abs(new), 1e-300))
        vals = np.maximum(vals, new)
        if change < 0.005:
            break
    return SampledField(req.grid, vals)


def norm_ratio(f, g, p, q, r, fld, n=None):
    """``||field||_r / (||f||_p ||g||_q)``; requires ``1/r = 1/p + 1/q``."""
    inv = lambda s: 0.0 if np.isinf(s) else 1.0 / s
    if abs(inv(r) - inv(p) - inv(q)) > 1e-12:
        raise PreconditionError(f"1/r must equal 1/p + 1/q, got p={p}, q={q}, r={r}")
    n = fld.grid.n if n is None else n
    den = f.lp_norm(p, n) * g.lp_norm(q, n)
    if not (np.isfinite(den) and den > 0):
        raise DegenerateInputError(f"denominator ||f||_p ||g||_q = {den}")
    return lp_norm(fld, r) / den


# -- sharpness experiments -----------------------------------------------------

def _point(rho, n):
    x = np.zeros(n)
    x[0] = rho
    return x


def _lower_bounds(deltas, build, radii, a, n, order):
    values = []
    for d in deltas:
        f, g, tfun = build(d)
        vals = []
        for rho in radii:
            t1, t2 = tfun(rho)
            req = AverageRequest(f, g, _point(rho, n), t1, t2, a, order=order)
            vals.append(average_gsliced(req))
        values.append(min(vals))
    return np.array(values)


def _check_deltas(deltas):
    d = np.asarray(deltas, dtype=float)
    if d.size < 3:
        raise FitError(f"need at least 3 scales, got {d.size}", {"delta": d.tolist()})
    if np.any(np.diff(d) >= 0) or np.any(d < 2.0 ** -10) or np.any(d <= 0):
        raise PreconditionError("scales must be decreasing and >= 2^-10")
    return d


def sharpness_nec1(n, a, deltas=2.0 ** -np.arange(3, 8), eps0=None, C1=4.0, n_radii=5,
                   tolerance=0.2, max_residual=0.1, order=16):
    """Lower-bound rate for ``f = 1_{B(0, 2 delta/s*)}``, ``g = 1_{B(0, C1 delta)}``.

    The average at ``t1 = t2 = |x|/s*`` is minimised over radii of the
    annulus ``s* <= |x| <= s* + eps0``; the predicted slope in ``delta`` is
    ``2n - 1``.
    """
    a = _pair(a)
    s = solve_s_star(a)
    eps0 = (1 - s) / 2 if eps0 is None else eps0
    radii = s + eps0 * np.linspace(0, 1, n_radii)
    try:
        d = _check_deltas(deltas)
    except FitError:
        raise
    zero = np.zeros(n)
    build = lambda dl: (BallIndicator(zero, 2 * dl / s), BallIndicator(zero, C1 * dl),
                        lambda rho: (rho / s, rho / s))
    vals = _lower_bounds(d, build, radii, a, n, order)
    fit = fit_loglog(d, vals, 2 * n - 1, tolerance, max_residual)
    fit.extras.update({"s_star": s, "eps0": eps0, "C1": C1, "n": n, "a": list(a)})
    return fit


def sharpness_nec2(n, a, deltas=2.0 ** -np.arange(6, 11), C=4.0, mirrored=False, n_radii=5,
                   tolerance=0.15, max_residual=0.1, order=16):
    """Lower-bound rate for ``f = 1_{B(0, C delta)}``, ``g = 1_{B(0, 10)}`` at ``t = |x|``.

    Measured as a minimum over ``1 <= |x| <= 2``; the predicted slope is
    ``n/a2 + n - 1``.  ``mirrored`` swaps the roles of ``f`` and ``g`` and
    predicts ``n/a1 + n - 1``.
    """
    a = _pair(a)
    d = _check_deltas(deltas)
    zero = np.zeros(n)
    radii = np.linspace(1, 2, n_radii)
    big = BallIndicator(zero, 10.0)
    if mirrored:
        build = lambda dl: (big, BallIndicator(zero, C * dl), lambda rho: (rho, rho))
        predicted = n / a[0] + n - 1
    else:
        build = lambda dl: (BallIndicator(zero, C * dl), big, lambda rho: (rho, rho))
        predicted = n / a[1] + n - 1
    vals = _lower_bounds(d, build, radii, a, n, order)
    fit = fit_loglog(d, vals, predicted, tolerance, max_residual)
    fit.extras.update({"C": C, "mirrored": bool(mirrored), "n": n, "a": list(a)})
    return fit


def _radial_max_g1(f, a, rhos, ts, n, order=8):
    """``sup_t`` of the normalised average with ``g = 1`` at ``x = (rho, 0, ...)``."""
    one = Constant(1.0)
    mass = surface_mass(n, a)
    out = []
    for rho in rhos:
        table = average_table(f, one, _point(rho, n), ts, np.ones(1), a, order)
        out.append(np.max(np.abs(table)) / mass)
    return np.array(out)


def l1_failure_probe(n, a, scale_sequence=(8.0, 16.0, 32.0, 64.0), delta=0.25,
                     t_ratio=2 ** (1 / 16), tolerance=0.25, hl_points=9):
    """``L^1 x L^infty`` failure: with ``g = 1`` the maximal function dominates ``Mf``.

    Checks the pointwise ratio to the Hardy-Littlewood maximal function on
    ``1 <= |x| <= 2`` and fits the growth of the maximal function's mass over
    ``|x| <= R`` against ``log R``.  The predicted semilog slope is the
    limiting value of ``|S^{n-1}| |x|^n sup_t A_t(f, 1)(x)``.
    """
    a = _pair(a)
    if max(a) > n:
        raise PreconditionError("the reduction to the Hardy-Littlewood function needs a1, a2 <= n")
    f = BallIndicator(np.zeros(n), delta)
    R = np.asarray(scale_sequence, dtype=float)
    ts = geometric_grid(delta / 4, 2 * R.max(), t_ratio)

    rad = np.linspace(1, 2, hl_points)
    mx = _radial_max_g1(f, a, rad, ts, n)
    hl = np.array([hl_max_at(f, _point(r, n), ts) for r in rad])
    ratio = mx / hl

    # mass over delta <= |x| <= R by the radial profile on a log-spaced mesh
    rho = np.geomspace(delta, R.max(), 48 * int(np.log2(R.max() / delta)) + 1)
    prof = _radial_max_g1(f, a, rho, ts, n)
    dens = sphere_area(n) * prof * rho ** n      # integrand in d(log rho)
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(np.log(rho)))))
    masses = np.interp(np.log(R), np.log(rho), cum)
    predicted = float(dens[-1])
    fit = fit_semilog(R, masses, predicted, tolerance * predicted)
    fit.extras.update({"min_pointwise_ratio": float(ratio.min()),
                       "pointwise_ratios": ratio.tolist(), "delta": delta, "n": n, "a": list(a)})
    fit.passed = bool(fit.passed and ratio.min() > 0 and fit.slope > 0)
    return fit


def dyadic_decay(n, a, f, g, p, q, ks, grid, t_min=0.25, t_max=4.0, ratio=2 ** (1 / 4),
                 threshold=-0.1, threads=None):
    """Log2-slope in ``k`` of ``||sup_t piece_k||_r / (||f||_p ||g||_q)``.

    The reported predicted slope is the pointwise shell-mass rate ``-n/a2``;
    the verdict is ``slope <= threshold``.
    """
    a = _pair(a)
    r = 1.0 / (1.0 / p + 1.0 / q)
    ratios = []
    for k in ks:
        req = MaximalRequest(f, g, grid, t_min, t_max, ratio, "biparam", a, piece=int(k),
                             threads=threads)
        ratios.append(norm_ratio(f, g, p, q, r, maximal_estimate(req), n))
    fit = fit_log2_linear(np.asarray(ks, dtype=float), np.array(ratios), -n / a[1], np.inf)
    fit.passed = bool(fit.slope <= threshold)
    fit.extras.update({"threshold": threshold, "p": p, "q": q, "r": r, "n": n, "a": list(a)})
    return fit
