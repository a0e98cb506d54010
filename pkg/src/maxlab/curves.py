"""Bilinear maximal averages along plane curves ``gamma(s) = (gamma1(s), gamma2(s))``.

Curves are given by polynomials (exact derivatives and exact preimages of
kink points) or by arbitrary callables (finite-difference derivatives).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from ._quad import merge_breaks, panel_rule
from .bilinear import geometric_grid
from .errors import DomainError, PreconditionError, UntypedCurveError
from .fields import BallIndicator, Constant, Grid, LogPower, SampledField, hl_max_at, lp_norm
from .fitting import fit_loglog
from .sampling import parallel_map

M_MAX = 6


@dataclass(frozen=True)
class Cutoff:
    """``psi(s) = k (1 - ((s - center)/width)^2)^2`` on ``|s - center| < width``.

    With ``normalized`` the constant ``k = 15/(16 width)`` makes ``int psi = 1``.
    """

    center: float = 0.0
    width: float = 0.1
    normalized: bool = True

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError(f"cutoff width must be positive, got {self.width}")

    @property
    def support(self):
        return self.center - self.width, self.center + self.width

    @property
    def scale(self):
        return 15 / (16 * self.width) if self.normalized else 1.0

    def __call__(self, s):
        u = (np.asarray(s, dtype=float) - self.center) / self.width
        return np.where(np.abs(u) < 1, self.scale * (1 - u * u) ** 2, 0.0)

    @property
    def mass(self):
        return self.scale * 16 * self.width / 15


def default_width(s0):
    """Support radius ``min((1 - s0)/4, s0/4, 0.1)``; the middle term is dropped at ``s0 = 0``."""
    terms = [(1 - s0) / 4, 0.1]
    if s0 > 0:
        terms.append(s0 / 4)
    w = min(terms)
    if w <= 0:
        raise DomainError(f"no admissible cutoff width at s0 = {s0}")
    return w


def _as_curve_fn(g):
    if isinstance(g, Polynomial):
        return g
    if isinstance(g, (list, tuple, np.ndarray)):
        return Polynomial(np.asarray(g, dtype=float))
    if callable(g):
        return g
    raise PreconditionError("curve components must be polynomials, coefficient lists or callables")


def _richardson_derivative(fn, k, s, h=0.02):
    """``k``-th derivative by central differences with one Richardson step."""
    def central(step):
        j = np.arange(k + 1)
        coef = np.array([(-1) ** int(i) * math.comb(k, int(i)) for i in j], dtype=float)
        pts = s + (k / 2 - j) * step
        return float(np.dot(coef, [float(fn(p)) for p in pts])) / step ** k
    return (4 * central(h / 2) - central(h)) / 3


@dataclass(frozen=True)
class CurveSpec:
    gamma1: object
    gamma2: object
    cutoff: Cutoff = field(default_factory=Cutoff)
    s0: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "gamma1", _as_curve_fn(self.gamma1))
        object.__setattr__(self, "gamma2", _as_curve_fn(self.gamma2))

    @classmethod
    def graph(cls, gamma2, cutoff=None, s0=None):
        """``gamma(s) = (s, gamma2(s))``."""
        return cls(Polynomial([0.0, 1.0]), gamma2, cutoff or Cutoff(), s0)

    @classmethod
    def normal_form(cls, m, s0=0.0, c_star=1.0, phi=(1.0,), width=None):
        """``gamma(s) = (s, c_star - (s - s0)^m phi(s))`` with a cutoff centred at ``s0``."""
        g2 = Polynomial([c_star]) - Polynomial([-s0, 1.0]) ** m * Polynomial(phi)
        w = default_width(s0) if width is None else width
        return cls(Polynomial([0.0, 1.0]), g2, Cutoff(s0, w), s0)

    def derivative(self, which, k, s):
        fn = self.gamma1 if which == 1 else self.gamma2
        if isinstance(fn, Polynomial):
            return float(fn.deriv(k)(s)) if k > 0 else float(fn(s))
        return _richardson_derivative(fn, k, s)

    def preimages(self, which, values):
        """Parameters ``s`` in the cutoff support with ``gamma_which(s)`` in ``values``."""
        fn = self.gamma1 if which == 1 else self.gamma2
        lo, hi = self.cutoff.support
        values = np.atleast_1d(np.asarray(values, dtype=float))
        if not isinstance(fn, Polynomial) or values.size == 0:
            return np.empty(0)
        c = fn.convert().coef
        if len(c) == 2:
            s = (values - c[0]) / c[1]
        elif len(c) == 1:
            return np.empty(0)
        else:
            out = []
            for v in values:
                cc = c.copy()
                cc[0] -= v
                rts = np.polynomial.polynomial.polyroots(cc)
                out.append(rts.real[np.abs(rts.imag) <= 1e-9 * (1 + np.abs(rts.real))])
            s = np.concatenate(out) if out else np.empty(0)
        return s[(s > lo) & (s < hi)]


@dataclass
class TypeReport:
    s0: float
    m: int
    derivatives: list


def detect_type(curve, s0, tol=1e-8, m_max=M_MAX):
    """Smallest ``m`` with ``|gamma2^{(m)}(s0)| > tol * max(1, max_k |gamma2^{(k)}(s0)|)``."""
    ders = [curve.derivative(2, k, s0) for k in range(1, m_max + 1)]
    mags = np.abs(ders)
    scale = float(mags.max())
    if scale <= tol:
        raise UntypedCurveError(f"all derivatives up to order {m_max} vanish at s0 = {s0}")
    thresh = tol * max(1.0, scale)
    m = int(np.argmax(mags > thresh)) + 1
    return TypeReport(float(s0), m, [float(d) for d in ders])


def _kink_points(spec):
    """Positions where a one-dimensional catalogue function is not smooth."""
    if isinstance(spec, Constant):
        return np.empty(0)
    c = spec.center[0]
    ks = spec.radial_kinks()
    return np.unique(np.concatenate((c - ks, c + ks)))


def _curve_mesh(f, g, x, t1s, t2s, curve, order, panels=8):
    lo, hi = curve.cutoff.support
    kf = _kink_points(f)
    kg = _kink_points(g)
    brk = [np.linspace(lo, hi, panels + 1)[1:-1]]
    if kf.size:
        brk.append(curve.preimages(1, ((x - kf[:, None]) / np.atleast_1d(t1s)[None, :]).ravel()))
    if kg.size:
        brk.append(curve.preimages(2, ((x - kg[:, None]) / np.atleast_1d(t2s)[None, :]).ravel()))
    s, w = panel_rule(merge_breaks(lo, hi, np.concatenate(brk)), order)
    return s, w * curve.cutoff(s)


def curve_average(f, g, x, t1, t2, curve, order=16):
    """``int f(x - t1 gamma1(s)) g(x - t2 gamma2(s)) psi(s) ds``."""
    if not (t1 > 0 and t2 > 0):
        raise DomainError("dilations must be positive")
    x = float(np.atleast_1d(x)[0])
    s, w = _curve_mesh(f, g, x, t1, t2, curve, order)
    g1 = curve.gamma1(s)
    g2 = curve.gamma2(s)
    return float(np.sum(w * f.eval1d(x - t1 * g1) * g.eval1d(x - t2 * g2)))


def curve_table(f, g, x, t1s, t2s, curve, order=8):
    s, w = _curve_mesh(f, g, x, t1s, t2s, curve, order)
    F = f.eval1d(x - np.outer(t1s, curve.gamma1(s)))
    G = g.eval1d(x - np.outer(t2s, curve.gamma2(s)))
    return (F * w) @ G.T


def curve_maximal(f, g, grid, t_min, t_max, ratio=2 ** (1 / 8), mode="biparam", curve=None,
                  order=8, threads=None):
    """Discrete ``sup_t |int f(x - t1 gamma1) g(x - t2 gamma2) psi|`` on a 1-D grid."""
    if grid.n != 1:
        raise PreconditionError("curve maximal functions live on one-dimensional grids")
    if mode not in ("biparam", "diagonal"):
        raise PreconditionError(f"unknown mode {mode!r}")
    curve = curve or CurveSpec.normal_form(2, 0.5)
    ts = geometric_grid(t_min, t_max, ratio)

    def at(x):
        table = curve_table(f, g, float(x[0]), ts, ts, curve, order)
        return float(np.max(np.abs(table if mode == "biparam" else np.diag(table))))

    return SampledField(grid, parallel_map(at, grid.points(), threads))


# -- truncated maximal operator ------------------------------------------------

def _critical_t(f, h, xb):
    """Dilations at which an end of ``x - t (h -+ 2)`` crosses a kink of ``f``."""
    ks = _kink_points(f)
    if ks.size == 0:
        return np.empty((xb.shape[0], 0))
    ends = np.array([h + 2, h - 2])
    ends = ends[ends != 0]
    t = ((xb - ks[None, :])[:, :, None] / ends[None, None, :]).reshape(xb.shape[0], -1)
    return np.where(t > 0, t, np.nan)


def mstar_values(f, h, xs, ts, block=1024, kink_aware=True):
    """``max_t t^{-1} int_{x - t(h+2)}^{x - t(h-2)} f`` for every ``x`` in ``xs``.

    With ``kink_aware`` the t-grid is augmented, per point, by the
    dilations where an interval end meets a kink of ``f``; for piecewise
    constant ``f`` the supremum is attained at one of those or in the
    limit ``t -> 0``.
    """
    xs = np.asarray(xs, dtype=float)
    ts = np.asarray(ts, dtype=float)
    out = np.empty(xs.size)
    for i in range(0, xs.size, block):
        xb = xs[i:i + block, None]
        tb = np.broadcast_to(ts, (xb.shape[0], ts.size))
        if kink_aware:
            tb = np.concatenate((tb, _critical_t(f, h, xb)), axis=1)
        valid = np.isfinite(tb)
        tb = np.where(valid, tb, 1.0)
        mass = f.interval_integral(xb - tb * (h + 2), xb - tb * (h - 2))
        out[i:i + block] = np.max(np.where(valid, np.abs(mass) / tb, 0.0), axis=1)
    return out


def mstar(f, h, grid, t_grid, kink_aware=True):
    """``M*_h f(x) = sup_t int_{h-2}^{h+2} f(x - t y) dy`` over a discrete t-grid."""
    if grid.n != 1:
        raise PreconditionError("M*_h acts on functions of one variable")
    return SampledField(grid, mstar_values(f, h, grid.points()[:, 0], t_grid,
                                           kink_aware=kink_aware))


def mstar_indicator_exact(h, x):
    """Closed form of ``M*_h 1_{(0,1)}`` for ``h >= 2``: ``min(4, (h+2)/x)`` for ``x > 0``."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(x > 0, np.minimum(4.0, (h + 2) / x), 0.0)


def mstar_indicator_norm(h, p):
    """``||M*_h 1_{(0,1)}||_p = (4^{p-1} p/(p-1))^{1/p} (h+2)^{1/p}`` for ``h >= 2``."""
    if np.isinf(p):
        return 4.0
    return (4 ** (p - 1) * p / (p - 1)) ** (1 / p) * (h + 2) ** (1 / p)


def mstar_exponent(p, h_sequence=2.0 ** np.arange(2, 9), f=None, cells_per_unit=256,
                   extent=64, t_ratio=2 ** (1 / 32), tolerance=0.05):
    """Fit ``log ||M*_h f||_p`` against ``log h``; predicted slope ``1/p``.

    The grid spacing and extent scale with ``h + 2`` so every ``h`` sees the
    same relative resolution.  For the default ``f = 1_{(0,1)}`` the fit
    extras carry the closed-form norms and the profile bounds of
    ``M*_h f(x) (1 + x/h)`` on ``(0, 4h)``.
    """
    if not p > 1:
        raise DomainError(f"need p > 1, got {p}")
    f = f or BallIndicator((0.5,), 0.5)
    hs = np.asarray(h_sequence, dtype=float)
    norms, exact, lows, highs = [], [], [], []
    for h in hs:
        L = abs(h) + 2
        dx = L / cells_per_unit
        count = int(round((extent + 1) * L / dx)) + 1
        grid = Grid((-L + dx / 2,), (-L + dx / 2 + (count - 1) * dx,), (count,))
        ts = geometric_grid(1.0 / (4 * cells_per_unit * L), 4 * extent * L, t_ratio)
        fld = mstar(f, h, grid, ts)
        norms.append(lp_norm(fld, p))
        exact.append(mstar_indicator_norm(h, p))
        xs = grid.points()[:, 0]
        sel = (xs > 0) & (xs < 4 * h)
        prof = fld.values.ravel()[sel] * (1 + xs[sel] / h)
        lows.append(float(prof.min()))
        highs.append(float(prof.max()))
    fit = fit_loglog(hs, norms, 0.0 if np.isinf(p) else 1 / p, tolerance)
    fit.extras.update({"p": p, "closed_form_norms": exact, "profile_min": lows,
                       "profile_max": highs})
    return fit


# -- sharpness -------------------------------------------------------------------

@dataclass
class DivergenceReport:
    case: str
    m: int
    p: float
    q: float
    etas: list
    values: list
    ratios: list
    predicted_ratio: float
    tolerance: float
    passed: bool
    verdict: str
    extras: dict = field(default_factory=dict)

    def as_dict(self):
        from dataclasses import asdict
        return asdict(self)


def _shell_integral(fn, lo, hi, order=32):
    """``int`` of ``fn(u)`` over ``lo <= |u| <= hi`` on dyadic panels."""
    k = max(1, int(math.ceil(math.log2(hi / lo))))
    edges = np.unique(np.concatenate((lo * 2.0 ** np.arange(k), [hi])))
    u, w = panel_rule(edges[edges <= hi], order, cosmap=False)
    return float(np.dot(w, fn(u)) + np.dot(w, fn(-u)))


def _halving(fn, eta0, halvings, outer):
    etas = eta0 * 2.0 ** -np.arange(halvings + 2)
    shells = np.array([_shell_integral(fn, etas[i + 1], etas[i]) for i in range(halvings + 1)])
    base = _shell_integral(fn, etas[0], outer)
    values = base + np.cumsum(shells)           # value with inner cutoff etas[i+1]
    return etas, shells, values


def curve_sharpness(case, m, p=np.inf, q=2.0, eta0=None, halvings=3, x=0.5, C=4.0,
                    log_exponent=0.0, tolerance=None, floor=1e-30, phi=(1.0,)):
    """Rate checks for the finite-type constructions.

    The curve is the normal form ``gamma(s) = (s, c_star - (s - s0)^m phi(s))``
    with ``c_star = 1``.  Case ``"ii"`` (``s0 = 0``) uses ``f = 1_{[-1,1]}``
    and ``g = |u|^{-1/q} log^{-c}(1/|u|)`` at ``t1 = x/C``, ``t2 = x``.  For
    ``q < m`` the increments over successive halvings of the inner cutoff
    ``eta`` must grow by ``2^{m/q - 1}``; for ``q > m`` the cut-off values
    must settle (ratios within 5% of 1).  The increments then only decay
    like ``eta^{1 - m/q}``, so the default first cutoff is ``2^-16`` instead
    of ``2^-6``.  Case ``"iii"`` (``s0 = 1/2``) uses log-power ``f`` and
    ``g`` at ``t1 = x/s0``, ``t2 = x``; increments must scale by
    ``2^{1/p + m/q - 1}``, which is at least 1 exactly when the integral
    diverges.  Case ``"i"`` (``gamma(s0) = 0``) checks the two pointwise
    bounds by ``Mf`` and ``Mg``.

    At the construction's dilations the argument of ``g`` is
    ``t2 (s - s0)^m phi(s)``, which is evaluated in that form; forming
    ``x - t2 gamma2(s)`` would cancel catastrophically for small ``s - s0``.
    """
    if case == "i":
        return _case_i(m)
    inv_p = 0.0 if np.isinf(p) else 1.0 / p
    inv_q = 0.0 if np.isinf(q) else 1.0 / q
    ph = Polynomial(phi)
    t2 = x
    if case == "ii":
        s0 = 0.0
        f = BallIndicator((0.0,), 1.0)
        t1 = x / C
        f_arg = lambda u: x - t1 * u
        exponent = m * inv_q - 1
    elif case == "iii":
        s0 = 0.5
        f = LogPower(inv_p, log_exponent, (0.0,), floor=floor)
        t1 = x / s0
        f_arg = lambda u: -t1 * u
        exponent = inv_p + m * inv_q - 1
    else:
        raise DomainError(f"unknown case {case!r}")
    g = LogPower(inv_q, log_exponent, (0.0,), floor=floor)
    curve = CurveSpec.normal_form(m, s0, 1.0, phi)
    if eta0 is None:
        eta0 = 2.0 ** -16 if (case == "ii" and exponent < 0) else 2.0 ** -6

    def integrand(u):
        return f.eval1d(f_arg(u)) * g.eval1d(t2 * u ** m * ph(s0 + u)) * curve.cutoff(s0 + u)

    etas, shells, values = _halving(integrand, eta0, halvings, curve.cutoff.width)
    predicted = 2.0 ** exponent
    if exponent < 0 and case == "ii":
        ratios = (values[1:] / values[:-1]).tolist()
        tol = 0.05 if tolerance is None else tolerance
        passed = bool(np.all(np.abs(np.array(ratios) - 1) <= tol))
        verdict = "convergent"
        target = 1.0
    else:
        ratios = (shells[1:] / shells[:-1]).tolist()
        tol = 0.1 if tolerance is None else tolerance
        target = predicted
        passed = bool(np.all(np.abs(np.array(ratios) / predicted - 1) <= tol))
        verdict = "divergent" if exponent >= 0 else "convergent"
    return DivergenceReport(case, m, float(p), float(q), etas.tolist(), values.tolist(), ratios,
                            float(target), float(tol), passed, verdict,
                            {"shell_integrals": shells.tolist(), "rate_exponent": exponent,
                             "increment_ratio_prediction": predicted, "x": x})


def _case_i(m, x_grid=None, t_ratio=2 ** (1 / 8), bound=4.0):
    """Pointwise ``M(f, 1) <= C Mf`` and ``M(1, g) <= C Mg`` for a curve through 0."""
    curve = CurveSpec.normal_form(m, 0.0, 0.0)
    one = Constant(1.0)
    catalogue = [BallIndicator((0.0,), 0.5), BallIndicator((1.0,), 0.25),
                 LogPower(0.5, 1.0, (0.0,)), BallIndicator((-0.5,), 1.0)]
    xs = np.linspace(-1.95, 2.05, 17) if x_grid is None else np.asarray(x_grid, dtype=float)
    ts = geometric_grid(2.0 ** -8, 2.0 ** 8, t_ratio)
    consts = []
    for fn in catalogue:
        worst = 0.0
        for xv in xs:
            hl = hl_max_at(fn, [xv], ts)
            if hl <= 0:
                continue
            left = np.max(np.abs(curve_table(fn, one, xv, ts, np.ones(1), curve)))
            right = np.max(np.abs(curve_table(one, fn, xv, np.ones(1), ts, curve)))
            worst = max(worst, left / hl, right / hl)
        consts.append(worst)
    consts = np.array(consts)
    passed = bool(consts.max() <= bound)
    return DivergenceReport("i", m, np.inf, np.inf, [], [], consts.tolist(), bound, 0.0, passed,
                            "bounded", {"functions": [repr(c) for c in catalogue]})
