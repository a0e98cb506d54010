"""Plain SVG output for region diagrams, scaling fits and sampled fields."""

from fractions import Fraction
from xml.sax.saxutils import escape

import numpy as np

from .. import regions
from ..errors import DomainError

SIZE = 360
PAD = 48


def _fmt(v):
    return f"{float(v):.2f}"


def _frac_text(v):
    if isinstance(v, Fraction):
        return str(v)
    fr = Fraction(float(v)).limit_denominator(64)
    return str(fr) if abs(float(fr) - float(v)) < 1e-9 else f"{float(v):.3g}"


class _Canvas:
    """Maps a data box onto a square plotting area with the y axis pointing up."""

    def __init__(self, xlim, ylim, title=""):
        self.xlim, self.ylim = xlim, ylim
        self.parts = []
        self.title = title

    def X(self, x):
        x0, x1 = self.xlim
        return PAD + (float(x) - x0) / (x1 - x0) * SIZE

    def Y(self, y):
        y0, y1 = self.ylim
        return PAD + SIZE - (float(y) - y0) / (y1 - y0) * SIZE

    def add(self, text):
        self.parts.append(text)

    def polygon(self, pts, fill="#b0b0b0", stroke="#202020"):
        coords = " ".join(f"{_fmt(self.X(x))},{_fmt(self.Y(y))}" for x, y in pts)
        self.add(f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" stroke-width="1.5"/>')

    def line(self, x0, y0, x1, y1, stroke="#202020", width=1.0, dash=None):
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(f'<line x1="{_fmt(self.X(x0))}" y1="{_fmt(self.Y(y0))}" x2="{_fmt(self.X(x1))}" '
                 f'y2="{_fmt(self.Y(y1))}" stroke="{stroke}" stroke-width="{width}"{d}/>')

    def text(self, x, y, s, dx=0, dy=0, size=12, anchor="start"):
        self.add(f'<text x="{_fmt(self.X(x) + dx)}" y="{_fmt(self.Y(y) + dy)}" font-size="{size}" '
                 f'font-family="sans-serif" text-anchor="{anchor}">{escape(str(s))}</text>')

    def dot(self, x, y, r=3, fill="#202020"):
        self.add(f'<circle cx="{_fmt(self.X(x))}" cy="{_fmt(self.Y(y))}" r="{r}" fill="{fill}"/>')

    def axes(self, xlabel, ylabel, xticks, yticks):
        x0, x1 = self.xlim
        y0, y1 = self.ylim
        self.add(f'<rect x="{PAD}" y="{PAD}" width="{SIZE}" height="{SIZE}" fill="none" '
                 f'stroke="#202020"/>')
        for t, lab in xticks:
            self.line(t, y0, t, y0 + 0.015 * (y1 - y0))
            self.text(t, y0, lab, dy=16, size=11, anchor="middle")
        for t, lab in yticks:
            self.line(x0, t, x0 + 0.015 * (x1 - x0), t)
            self.text(x0, t, lab, dx=-6, dy=4, size=11, anchor="end")
        self.text((x0 + x1) / 2, y0, xlabel, dy=34, size=13, anchor="middle")
        self.add(f'<text x="14" y="{_fmt(PAD + SIZE / 2)}" font-size="13" font-family="sans-serif" '
                 f'text-anchor="middle" transform="rotate(-90 14 {_fmt(PAD + SIZE / 2)})">'
                 f'{escape(ylabel)}</text>')

    def render(self):
        w = SIZE + 2 * PAD
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" '
                f'viewBox="0 0 {w} {w}">')
        title = ""
        if self.title:
            title = (f'<text x="{w / 2}" y="24" font-size="14" font-family="sans-serif" '
                     f'text-anchor="middle">{escape(self.title)}</text>')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', title]
                         + self.parts + ["</svg>", ""])


def _unit_ticks():
    return [(v, str(v)) for v in (0, 0.5, 1)]


def region_outline(n, a=None, kind="bilinear", case=None, m=None, x3=0):
    """Corner list and vertex labels of a supported region.

    ``kind`` is ``"bilinear"`` (``a`` of length 2), ``"trilinear-slice"``
    (``a`` of length 3, section at ``1/p3 = x3``) or ``"curve"`` (``case``
    and ``m``).  Labels come from :func:`regions.vertices` for the bilinear
    kind; other corners are labelled by their coordinates.
    """
    labels = {}
    if kind == "bilinear":
        poly = regions.region_polygon(n, a)
        for name, pt in regions.vertices(n, a).vertices:
            labels[tuple(pt)] = name
    elif kind == "trilinear-slice":
        poly = regions.halfplane_polygon(regions.trilinear_slice_halfplanes(n, a, x3))
    elif kind == "curve":
        poly = regions.halfplane_polygon(regions.curve_halfplanes(case, m))
    else:
        raise DomainError(f"unsupported region kind {kind!r}")
    return poly, labels


def plot_region(n, a=None, kind="bilinear", case=None, m=None, x3=0, title=None):
    """SVG of the shaded exponent region on the unit square with labelled corners."""
    poly, labels = region_outline(n, a, kind, case, m, x3)
    if title is None:
        if kind == "curve":
            title = f"curve case ({case}), m = {m}"
        elif kind == "trilinear-slice":
            title = f"n = {n}, a = {tuple(a)}, 1/p3 = {x3}"
        else:
            title = f"n = {n}, a = {tuple(a)}"
    c = _Canvas((0, 1), (0, 1), title)
    if poly:
        c.polygon([(float(x), float(y)) for x, y in poly])
    c.axes("1/p", "1/q", _unit_ticks(), _unit_ticks())
    for x, y in poly:
        name = labels.get((x, y))
        text = name if name else f"({_frac_text(x)}, {_frac_text(y)})"
        c.dot(x, y)
        dx = 6 if float(x) < 0.9 else -6
        dy = -6 if float(y) < 0.9 else 14
        c.text(x, y, text, dx=dx, dy=dy, size=12, anchor="start" if dx > 0 else "end")
    return c.render()


def _nice_limits(v):
    lo, hi = float(np.min(v)), float(np.max(v))
    if hi <= lo:
        hi = lo + 1.0
    pad = 0.06 * (hi - lo)
    return lo - pad, hi + pad


def _ticks(lim, count=4, fmt="{:.3g}"):
    vals = np.linspace(lim[0], lim[1], count + 2)[1:-1]
    return [(v, fmt.format(v)) for v in vals]


def plot_scaling(u, w, slope, intercept, xlabel="log x", ylabel="log y", title=""):
    """Data points ``(u, w)`` and the fitted line ``w = slope u + intercept``.

    Coordinates are given already transformed (log, log2, ...).
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    xl, yl = _nice_limits(u), _nice_limits(np.concatenate((w, slope * u + intercept)))
    c = _Canvas(xl, yl, title)
    c.axes(xlabel, ylabel, _ticks(xl), _ticks(yl))
    c.line(u.min(), slope * u.min() + intercept, u.max(), slope * u.max() + intercept,
           stroke="#c03030", width=1.5)
    for a, b in zip(u, w):
        c.dot(a, b)
    c.text(xl[0], yl[1], f"slope {slope:.4g}", dx=8, dy=18, size=12)
    return c.render()


def plot_series(x, series, xlabel="x", ylabel="value", title=""):
    """Line plot of one or more ``(label, values)`` series against ``x``."""
    x = np.asarray(x, dtype=float)
    allv = np.concatenate([np.asarray(v, dtype=float) for _, v in series])
    xl, yl = _nice_limits(x), _nice_limits(allv[np.isfinite(allv)])
    c = _Canvas(xl, yl, title)
    c.axes(xlabel, ylabel, _ticks(xl), _ticks(yl))
    colours = ["#202020", "#c03030", "#3060c0", "#30a050"]
    for i, (label, vals) in enumerate(series):
        vals = np.asarray(vals, dtype=float)
        col = colours[i % len(colours)]
        pts = " ".join(f"{_fmt(c.X(a))},{_fmt(c.Y(b))}" for a, b in zip(x, vals) if np.isfinite(b))
        c.add(f'<polyline points="{pts}" fill="none" stroke="{col}" stroke-width="1.5"/>')
        c.text(xl[0], yl[1], label, dx=8, dy=18 + 14 * i, size=11)
    return c.render()


def plot_field(field, title=""):
    """Heat map of a 2-D sampled field, or a line plot of a 1-D one."""
    grid = field.grid
    vals = np.asarray(field.values, dtype=float).reshape(grid.shape)
    if grid.n == 1:
        return plot_series(grid.axes()[0], [("value", vals)], "x", "value", title)
    if grid.n != 2:
        raise DomainError("fields are plotted in one or two dimensions")
    ax, ay = grid.axes()
    hx, hy = grid.spacing
    xl = (ax[0] - hx / 2, ax[-1] + hx / 2)
    yl = (ay[0] - hy / 2, ay[-1] + hy / 2)
    c = _Canvas(xl, yl, title)
    lo, hi = float(np.min(vals)), float(np.max(vals))
    span = hi - lo if hi > lo else 1.0
    for i, x in enumerate(ax):
        for j, y in enumerate(ay):
            level = int(round(255 * (1 - (vals[i, j] - lo) / span)))
            col = f"#{level:02x}{level:02x}{255:02x}"
            x0, y1 = c.X(x - hx / 2), c.Y(y + hy / 2)
            wpx = c.X(x + hx / 2) - x0
            hpx = c.Y(y - hy / 2) - y1
            c.add(f'<rect x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(wpx)}" height="{_fmt(hpx)}" '
                  f'fill="{col}"/>')
    c.axes("x1", "x2", _ticks(xl), _ticks(yl))
    c.text(xl[0], yl[0], f"min {lo:.3g}  max {hi:.3g}", dx=4, dy=-6, size=11)
    return c.render()


def plot_bars(labels, values, title="", ylabel="value"):
    values = np.asarray(values, dtype=float)
    k = len(values)
    yl = _nice_limits(np.concatenate((values, [0.0])))
    c = _Canvas((0, k), yl, title)
    c.axes("", ylabel, [(i + 0.5, lab) for i, lab in enumerate(labels)], _ticks(yl))
    base = max(yl[0], 0.0) if yl[0] > 0 else 0.0
    for i, v in enumerate(values):
        top, bot = max(v, base), min(v, base)
        x0, x1 = c.X(i + 0.2), c.X(i + 0.8)
        c.add(f'<rect x="{_fmt(x0)}" y="{_fmt(c.Y(top))}" width="{_fmt(x1 - x0)}" '
              f'height="{_fmt(c.Y(bot) - c.Y(top))}" fill="#8090b0" stroke="#202020"/>')
    return c.render()
