"""Test functions, grids, sphere rules, norms and the Hardy-Littlewood maximal function.

Every catalogue member except :class:`Constant` is radial about a centre,
``f(x) = phi(|x - c|)``.  Besides pointwise evaluation each member knows its
unnormalised spherical means ``int_{S^{n-1}} f(x - t theta) dtheta``
(closed form where one exists), the radii at which those means fail to be
smooth in ``t``, its ``L^p`` norm and its one-dimensional interval integrals.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate, special

from ._quad import merge_breaks, panel_rule
from .errors import DimensionError, DomainError, PreconditionError

LOG_FLOOR = 1e-9


def sphere_area(n):
    """Surface measure of ``S^{n-1}`` (``2`` for the zero sphere)."""
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


def ball_volume(n):
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def _vec(x):
    return np.atleast_1d(np.asarray(x, dtype=float))


class FunctionSpec:
    """Base class of the test-function catalogue."""

    center = None

    @property
    def dim(self):
        return None if self.center is None else len(self.center)

    # -- radial interface --------------------------------------------
    def profile(self, rho):
        raise NotImplementedError

    def _dist(self, x):
        x = np.asarray(x, dtype=float)
        c = self.center
        if len(c) == 1:
            if x.ndim > 0 and x.shape[-1] == 1:
                x = x[..., 0]
            return np.abs(x - c[0])
        if x.shape[-1] != len(c):
            raise DimensionError(f"point dimension {x.shape[-1]} does not match {len(c)}")
        return np.sqrt(np.sum((x - c) ** 2, axis=-1))

    def __call__(self, x):
        return self.profile(self._dist(x))

    def eval1d(self, u):
        """Values at scalar positions ``u`` of a one-dimensional member."""
        if self.dim != 1:
            raise DimensionError("eval1d needs a one-dimensional function")
        return self.profile(np.abs(np.asarray(u, dtype=float) - self.center[0]))

    def radial_kinks(self):
        """Radii where ``phi`` is not smooth."""
        return np.empty(0)

    def sphere_kinks(self, x):
        """Sphere radii ``t`` where ``t -> mean over |y - x| = t`` is not smooth."""
        d = float(np.linalg.norm(_vec(x) - self.center))
        ks = self.radial_kinks()
        return np.unique(np.abs(np.concatenate((d - ks, d + ks))))

    def sphere_mean(self, x, t, n=None, order=24):
        """Unnormalised mean ``int_{S^{n-1}} f(x - t theta) dtheta`` for an array ``t``.

        ``order`` is the per-panel node count of the angular fallback used
        when no closed form is available.
        """
        x = _vec(x)
        n = len(x) if n is None else n
        t = np.abs(np.asarray(t, dtype=float))
        d = float(np.linalg.norm(x - self.center))
        return self._sphere_mean(d, t, n, order)

    def _sphere_mean(self, d, t, n, order=24):
        if n == 1:
            return self.profile(np.abs(d - t)) + self.profile(d + t)
        if n == 3:
            return self._sphere_mean3(d, t)
        if n == 2:
            return self._sphere_mean2_numeric(d, t, order)
        raise DimensionError(f"unsupported dimension {n}")

    def _sphere_mean3(self, d, t):
        # 2 pi / (d t) * int_{|d-t|}^{d+t} phi(rho) rho drho
        t = np.asarray(t, dtype=float)
        out = np.empty_like(t)
        small = d * t <= 1e-12 * np.maximum(d + t, 1e-300) ** 2
        out[small] = 4 * np.pi * self.profile(np.maximum(d, t[small]))
        tb = t[~small]
        if tb.size:
            hi = self.radial_integral(d + tb, 1)
            lo = self.radial_integral(np.abs(d - tb), 1)
            out[~small] = 2 * np.pi * (hi - lo) / (d * tb)
        return out

    def _sphere_mean2_numeric(self, d, t, order=24):
        t = np.asarray(t, dtype=float)
        out = np.empty_like(t)
        ks = self.radial_kinks()
        for i, ti in np.ndenumerate(t):
            if d * ti == 0:
                out[i] = 2 * np.pi * self.profile(np.array(d + ti))
                continue
            c = (d * d + ti * ti - ks ** 2) / (2 * d * ti)
            brk = np.arccos(c[(c > -1) & (c < 1)])
            if min(d, ti) > 0 and abs(d - ti) < 1e-15 * (d + ti) and 0 in ks:
                brk = np.append(brk, 0.0)
            edges = merge_breaks(0.0, np.pi, brk)
            a, w = panel_rule(edges, order)
            rho = np.sqrt(np.maximum(d * d + ti * ti - 2 * d * ti * np.cos(a), 0.0))
            out[i] = 2 * np.dot(w, self.profile(rho))
        return out

    def radial_integral(self, rho, k):
        """``int_0^rho phi(s) s^k ds`` for an array ``rho``, by adaptive quadrature."""
        rho = np.asarray(rho, dtype=float)
        out = np.empty_like(rho)
        ks = self.radial_kinks()
        for i, r in np.ndenumerate(rho):
            pts = [b for b in ks if 0 < b < r]
            val, _ = integrate.quad(lambda s: self.profile(np.array(s)) * s ** k, 0.0, r,
                                    points=pts or None, limit=200, epsabs=1e-13, epsrel=1e-11)
            out[i] = val
        return out

    def interval_integral(self, lo, hi):
        """``int_lo^hi f(u) du`` for a one-dimensional member."""
        if self.dim != 1:
            raise DimensionError("interval integrals need a one-dimensional function")
        c = self.center[0]
        lo = np.asarray(lo, dtype=float) - c
        hi = np.asarray(hi, dtype=float) - c
        prim = lambda u: np.sign(u) * self.radial_integral(np.abs(u), 0)
        return prim(hi) - prim(lo)

    def lp_norm(self, p, n=None):
        """Exact (or adaptive-quadrature) ``L^p(R^n)`` norm."""
        n = self.dim if n is None else n
        if p <= 0:
            raise DomainError(f"p must be positive, got {p}")
        if np.isinf(p):
            return float(self.sup())
        ks = self.radial_kinks()
        top = self.radial_extent()
        pts = [b for b in ks if 0 < b < top]
        val, _ = integrate.quad(lambda s: abs(float(self.profile(np.array(s)))) ** p * s ** (n - 1),
                                0.0, top, points=pts or None, limit=400, epsrel=1e-11)
        return (sphere_area(n) * val) ** (1 / p)

    def radial_extent(self):
        return np.inf

    def sup(self):
        raise NotImplementedError

    # -- transformations ---------------------------------------------
    def dilated(self, lam):
        """The function ``x -> f(lam x)``."""
        raise NotImplementedError

    def shifted(self, v):
        """The function ``x -> f(x - v)``."""
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(FunctionSpec):
    c: float = 1.0

    @property
    def dim(self):
        return None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        shape = x.shape[:-1] if x.ndim > 0 else ()
        return np.full(shape, float(self.c))

    def profile(self, rho):
        return np.full(np.shape(rho), float(self.c))

    def eval1d(self, u):
        return self.profile(u)

    def sphere_kinks(self, x):
        return np.empty(0)

    def sphere_mean(self, x, t, n=None, order=24):
        n = len(_vec(x)) if n is None else n
        return np.full(np.shape(t), self.c * sphere_area(n))

    def interval_integral(self, lo, hi):
        return self.c * (np.asarray(hi, dtype=float) - np.asarray(lo, dtype=float))

    def lp_norm(self, p, n=None):
        if p <= 0:
            raise DomainError(f"p must be positive, got {p}")
        if np.isinf(p) or self.c == 0:
            return abs(self.c)
        return np.inf

    def sup(self):
        return abs(self.c)

    def dilated(self, lam):
        return self

    def shifted(self, v):
        return self


@dataclass(frozen=True)
class BallIndicator(FunctionSpec):
    center: tuple = (0.0, 0.0)
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in _vec(self.center)))
        if not self.radius > 0:
            raise DomainError(f"radius must be positive, got {self.radius}")

    def profile(self, rho):
        return (np.asarray(rho) <= self.radius).astype(float)

    def radial_kinks(self):
        return np.array([self.radius])

    def radial_extent(self):
        return self.radius

    def _sphere_mean(self, d, t, n, order=24):
        R = self.radius
        t = np.asarray(t, dtype=float)
        if n == 1:
            return super()._sphere_mean(d, t, n, order)
        with np.errstate(divide="ignore", invalid="ignore"):
            kappa = (d * d + t * t - R * R) / (2 * d * t)
        kappa = np.clip(np.nan_to_num(kappa, nan=0.0), -1.0, 1.0)
        if n == 2:
            out = 2 * np.arccos(kappa)
        elif n == 3:
            out = 2 * np.pi * (1 - kappa)
        else:
            raise DimensionError(f"unsupported dimension {n}")
        deg = (d * t) == 0
        if np.any(deg):
            out = np.where(deg, sphere_area(n) * (np.maximum(d, t) <= R), out)
        return out

    def radial_integral(self, rho, k):
        r = np.minimum(np.asarray(rho, dtype=float), self.radius)
        return r ** (k + 1) / (k + 1)

    def lp_norm(self, p, n=None):
        n = self.dim if n is None else n
        if p <= 0:
            raise DomainError(f"p must be positive, got {p}")
        if np.isinf(p):
            return 1.0
        return (ball_volume(n) * self.radius ** n) ** (1 / p)

    def sup(self):
        return 1.0

    def dilated(self, lam):
        return BallIndicator(tuple(np.asarray(self.center) / lam), self.radius / lam)

    def shifted(self, v):
        return BallIndicator(tuple(np.asarray(self.center) + _vec(v)), self.radius)


@dataclass(frozen=True)
class SmoothBump(FunctionSpec):
    """Gaussian bump ``height * exp(-|x - center|^2 / width^2)``."""

    center: tuple = (0.0, 0.0)
    width: float = 1.0
    height: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in _vec(self.center)))
        if not self.width > 0:
            raise DomainError(f"width must be positive, got {self.width}")

    def profile(self, rho):
        rho = np.asarray(rho, dtype=float)
        return self.height * np.exp(-(rho / self.width) ** 2)

    def _sphere_mean(self, d, t, n, order=24):
        w2 = self.width ** 2
        t = np.asarray(t, dtype=float)
        z = 2 * d * t / w2
        g = self.height * np.exp(-((d - t) ** 2) / w2)
        if n == 1:
            return super()._sphere_mean(d, t, n, order)
        if n == 2:
            return 2 * np.pi * g * special.ive(0, z)
        if n == 3:
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(z > 1e-300, -np.expm1(-2 * z) / (2 * z), 1.0)
            return 4 * np.pi * g * ratio
        raise DimensionError(f"unsupported dimension {n}")

    def radial_integral(self, rho, k):
        rho = np.asarray(rho, dtype=float)
        w = self.width
        s = (k + 1) / 2
        # int_0^rho exp(-s^2/w^2) s^k ds = w^{k+1}/2 * lower_gamma((k+1)/2, rho^2/w^2)
        return self.height * 0.5 * w ** (k + 1) * special.gamma(s) * special.gammainc(s, (rho / w) ** 2)

    def lp_norm(self, p, n=None):
        n = self.dim if n is None else n
        if p <= 0:
            raise DomainError(f"p must be positive, got {p}")
        if np.isinf(p):
            return abs(self.height)
        return abs(self.height) * (np.pi * self.width ** 2 / p) ** (n / (2 * p))

    def sup(self):
        return abs(self.height)

    def dilated(self, lam):
        return SmoothBump(tuple(np.asarray(self.center) / lam), self.width / lam, self.height)

    def shifted(self, v):
        return SmoothBump(tuple(np.asarray(self.center) + _vec(v)), self.width, self.height)


@dataclass(frozen=True)
class LogPower(FunctionSpec):
    """``|s|^{-beta} log^{-gamma}(1/|s|)`` for ``|s| < support``, ``s = scale * (x - center)``.

    Values are frozen at ``|s| = floor`` for smaller ``|s|``.
    """

    beta: float = 0.5
    gamma: float = 1.0
    center: tuple = (0.0,)
    support: float = 1 / math.e
    scale: float = 1.0
    floor: float = LOG_FLOOR

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in _vec(self.center)))
        if self.beta < 0 or self.gamma < 0:
            raise DomainError("beta and gamma must be nonnegative")
        if not 0 < self.support < 1:
            raise DomainError("support must lie in (0, 1)")

    def _phi(self, s):
        s = np.maximum(np.asarray(s, dtype=float), self.floor)
        with np.errstate(divide="ignore"):
            val = s ** (-self.beta) * np.log(1 / s) ** (-self.gamma)
        return val

    def profile(self, rho):
        s = self.scale * np.asarray(rho, dtype=float)
        return np.where(s < self.support, self._phi(np.minimum(s, self.support)), 0.0)

    def radial_kinks(self):
        return np.array([0.0, self.floor / self.scale, self.support / self.scale])

    def radial_extent(self):
        return self.support / self.scale

    def radial_integral(self, rho, k):
        # substitute s = exp(-u); the integrand decays like exp(-(k+1-beta) u)
        rho = np.asarray(rho, dtype=float)
        out = np.empty_like(rho)
        sc = self.scale
        b, g, fl = self.beta, self.gamma, self.floor
        for i, r in np.ndenumerate(rho):
            top = min(r * sc, self.support)
            if top <= 0:
                out[i] = 0.0
                continue
            val = 0.0
            if top > fl:
                f = lambda u: np.exp(-(k + 1 - b) * u) * u ** (-g)
                val, _ = integrate.quad(f, -math.log(top), -math.log(fl), limit=200,
                                        epsabs=0.0, epsrel=1e-11)
            cap = min(top, fl)
            val += float(self._phi(fl)) * cap ** (k + 1) / (k + 1)
            out[i] = val / sc ** (k + 1)
        return out

    def lp_norm(self, p, n=None):
        n = self.dim if n is None else n
        if p <= 0:
            raise DomainError(f"p must be positive, got {p}")
        if np.isinf(p):
            return float(self._phi(self.floor))
        bp, gp = self.beta * p, self.gamma * p
        if bp > n or (bp == n and gp <= 1):
            raise DomainError(f"log-power function is not in L^{p}(R^{n})")
        f = lambda u: np.exp(-(n - bp) * u) * u ** (-gp)
        fl = self.floor
        val, _ = integrate.quad(f, -math.log(self.support), -math.log(fl), limit=400,
                                epsabs=0.0, epsrel=1e-11)
        val += float(self._phi(fl)) ** p * fl ** n / n
        return (sphere_area(n) * val / self.scale ** n) ** (1 / p)

    def sup(self):
        return float(self._phi(self.floor))

    def dilated(self, lam):
        return LogPower(self.beta, self.gamma, tuple(np.asarray(self.center) / lam),
                        self.support, self.scale * lam, self.floor)

    def shifted(self, v):
        return LogPower(self.beta, self.gamma, tuple(np.asarray(self.center) + _vec(v)),
                        self.support, self.scale, self.floor)


@dataclass(frozen=True)
class RadialProfile(FunctionSpec):
    """Radial function tabulated at increasing radii, linear in between and zero beyond."""

    radii: tuple = (0.0, 1.0)
    values: tuple = (1.0, 0.0)
    center: tuple = (0.0, 0.0)

    def __post_init__(self):
        r = tuple(float(v) for v in self.radii)
        v = tuple(float(v) for v in self.values)
        if len(r) != len(v) or len(r) < 2:
            raise PreconditionError("radial profile needs matching tables of length >= 2")
        if np.any(np.diff(r) <= 0) or r[0] < 0:
            raise PreconditionError("profile radii must be increasing and nonnegative")
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "center", tuple(float(c) for c in _vec(self.center)))

    def profile(self, rho):
        return np.interp(np.asarray(rho, dtype=float), self.radii, self.values, right=0.0)

    def radial_kinks(self):
        return np.array(self.radii)

    def radial_extent(self):
        return self.radii[-1]

    def sup(self):
        return max(abs(v) for v in self.values)

    def dilated(self, lam):
        return RadialProfile(tuple(np.asarray(self.radii) / lam), self.values,
                             tuple(np.asarray(self.center) / lam))

    def shifted(self, v):
        return RadialProfile(self.radii, self.values, tuple(np.asarray(self.center) + _vec(v)))


def spec_lp_norm(f, p, n=None):
    return f.lp_norm(p, n)


# -- grids and sampled fields ----------------------------------------------

@dataclass(frozen=True)
class Grid:
    """Uniform tensor grid; axis ``i`` has ``counts[i]`` points from ``lo[i]`` to ``hi[i]``."""

    lo: tuple
    hi: tuple
    counts: tuple

    def __post_init__(self):
        lo, hi, counts = _vec(self.lo), _vec(self.hi), np.atleast_1d(self.counts)
        if not (len(lo) == len(hi) == len(counts)):
            raise PreconditionError("lo, hi and counts must have equal length")
        if np.any(counts < 2) or np.any(hi <= lo):
            raise PreconditionError("need at least two points and hi > lo on every axis")
        object.__setattr__(self, "lo", tuple(lo))
        object.__setattr__(self, "hi", tuple(hi))
        object.__setattr__(self, "counts", tuple(int(c) for c in counts))

    @classmethod
    def uniform(cls, n, lo, hi, count):
        return cls((lo,) * n, (hi,) * n, (count,) * n)

    @classmethod
    def with_spacing(cls, n, lo, hi, h):
        count = int(round((hi - lo) / h)) + 1
        return cls.uniform(n, lo, lo + (count - 1) * h, count)

    @property
    def n(self):
        return len(self.counts)

    @property
    def shape(self):
        return self.counts

    @property
    def size(self):
        return int(np.prod(self.counts))

    @property
    def spacing(self):
        return tuple((h - l) / (c - 1) for l, h, c in zip(self.lo, self.hi, self.counts))

    @property
    def cell_volume(self):
        return float(np.prod(self.spacing))

    def axes(self):
        return [np.linspace(l, h, c) for l, h, c in zip(self.lo, self.hi, self.counts)]

    def points(self):
        """Grid points as an array of shape ``(size, n)`` in C order."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def scaled(self, lam):
        return Grid(tuple(np.asarray(self.lo) * lam), tuple(np.asarray(self.hi) * lam), self.counts)

    def shifted(self, v):
        v = _vec(v)
        return Grid(tuple(np.asarray(self.lo) + v), tuple(np.asarray(self.hi) + v), self.counts)


@dataclass
class SampledField:
    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.size != self.grid.size:
            raise PreconditionError(f"{vals.size} values for a grid of {self.grid.size} points")
        if not np.all(np.isfinite(vals)):
            raise PreconditionError("sampled values must be finite")
        self.values = vals.reshape(self.grid.shape)

    def to_csv(self, path=None):
        """Write ``x0, ..., x{n-1}, value`` rows; returns the text when ``path`` is None."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"x{i}" for i in range(self.grid.n)] + ["value"])
        for pt, v in zip(self.grid.points(), self.values.ravel()):
            w.writerow([repr(float(c)) for c in pt] + [repr(float(v))])
        text = buf.getvalue()
        if path is None:
            return text
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return text


def sample(f, grid):
    return SampledField(grid, f(grid.points()))


# -- sphere rules ----------------------------------------------------------

@dataclass(frozen=True)
class SphereRule:
    n: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)


def sphere_rule(n, resolution):
    """Quadrature on ``S^{n-1}`` with total weight ``|S^{n-1}|``.

    ``n = 2`` uses ``resolution`` equispaced angles; ``n = 3`` uses
    ``resolution`` azimuths times ``resolution // 2`` Gauss nodes in the
    polar cosine.
    """
    if n not in (2, 3):
        raise DimensionError(f"sphere rules exist for n = 2, 3 only, got {n}")
    if resolution < 4:
        raise PreconditionError(f"resolution must be at least 4, got {resolution}")
    phi = 2 * np.pi * np.arange(resolution) / resolution
    if n == 2:
        nodes = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        weights = np.full(resolution, 2 * np.pi / resolution)
        return SphereRule(2, nodes, weights)
    u, wu = np.polynomial.legendre.leggauss(max(resolution // 2, 2))
    s = np.sqrt(1 - u * u)
    nodes = np.stack([
        (s[:, None] * np.cos(phi)[None, :]).ravel(),
        (s[:, None] * np.sin(phi)[None, :]).ravel(),
        np.repeat(u, resolution),
    ], axis=-1)
    weights = np.repeat(wu, resolution) * (2 * np.pi / resolution)
    return SphereRule(3, nodes, weights)


def spherical_average(g, x, t, rule):
    """``sum_i w_i g(x - t theta_i)`` for a point (or array of points) ``x``."""
    if t < 0:
        raise DomainError(f"radius must be nonnegative, got {t}")
    x = np.asarray(x, dtype=float)
    pts = x[..., None, :] - t * rule.nodes
    return g(pts) @ rule.weights


def lp_norm(fld, p):
    """Riemann-sum ``L^p`` norm of a sampled field."""
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    v = np.abs(fld.values)
    if np.isinf(p):
        return float(v.max())
    return float((np.sum(v ** p) * fld.grid.cell_volume) ** (1 / p))


# -- Hardy-Littlewood ------------------------------------------------------

def _ball_integrals(f, x, radii, n, order=16):
    """``int_{B(x, r)} f`` for increasing ``radii`` via cumulative radial panels."""
    edges = merge_breaks(0.0, radii[-1], np.concatenate((radii, f.sphere_kinks(x))))
    rho, w = panel_rule(edges, order)
    vals = f.sphere_mean(x, rho, n) * rho ** (n - 1) * w
    per = vals.reshape(-1, order).sum(axis=1)
    cum = np.concatenate(([0.0], np.cumsum(per)))
    idx = np.searchsorted(edges, radii)
    return cum[np.clip(idx, 0, len(cum) - 1)]


def hl_max(f, grid, radius_grid, order=16):
    """Discrete centred Hardy-Littlewood maximal function of ``f`` on ``grid``.

    At each point the ball averages over ``radius_grid`` are formed from
    exact spherical means integrated radially, and the largest is kept.
    """
    radii = np.asarray(radius_grid, dtype=float)
    if radii.ndim != 1 or radii.size == 0 or np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise PreconditionError("radius grid must be positive and increasing")
    n = grid.n
    if isinstance(f, Constant):
        return SampledField(grid, np.full(grid.size, abs(f.c)))
    out = [hl_max_at(f, x, radii, order) for x in grid.points()]
    return SampledField(grid, out)


def hl_max_at(f, x, radii, order=16):
    """``max_r |B(x, r)|^{-1} |int_{B(x, r)} f|`` over the given radii."""
    x = _vec(x)
    n = len(x)
    radii = np.asarray(radii, dtype=float)
    if not np.all(radii > 0):
        raise DomainError("averaging radii must be positive")
    if isinstance(f, Constant):
        return abs(f.c)
    if n == 1:
        mass = f.interval_integral(x[0] - radii, x[0] + radii)
    else:
        mass = _ball_integrals(f, x, radii, n, order)
    return float(np.max(np.abs(mass) / (ball_volume(n) * radii ** n)))


def spherical_max(f, grid, t_grid, n=None):
    """Discrete spherical maximal function ``sup_t |S|^{-1} |A f(x, t)|``."""
    n = grid.n if n is None else n
    t = np.asarray(t_grid, dtype=float)
    area = sphere_area(n)
    out = np.array([np.max(np.abs(f.sphere_mean(x, t, n))) / area for x in grid.points()])
    return SampledField(grid, out)
