"""Small Gauss-Legendre helpers shared by the engines."""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _unit_rule(order):
    u, w = np.polynomial.legendre.leggauss(order)
    u = 0.5 * (u + 1.0)
    w = 0.5 * w
    return u, w


@lru_cache(maxsize=64)
def _unit_cosmap(order):
    # x = (1 - cos(pi u)) / 2 clusters nodes quadratically at both ends,
    # which turns square-root endpoint behaviour into a smooth integrand.
    u, w = _unit_rule(order)
    x = 0.5 * (1.0 - np.cos(np.pi * u))
    wx = w * 0.5 * np.pi * np.sin(np.pi * u)
    return x, wx


def panel_rule(edges, order, cosmap=True):
    """Composite rule on consecutive ``edges``.

    Returns flat ``(nodes, weights)``; degenerate panels contribute nothing.
    """
    edges = np.asarray(edges, dtype=float)
    lo = edges[:-1, None]
    width = np.diff(edges)[:, None]
    x, w = _unit_cosmap(order) if cosmap else _unit_rule(order)
    nodes = lo + width * x[None, :]
    weights = width * w[None, :]
    return nodes.ravel(), weights.ravel()


def merge_breaks(lo, hi, breaks):
    """Sorted unique breakpoints of ``[lo, hi]`` including the ends."""
    pts = [lo, hi]
    span = hi - lo
    for b in np.atleast_1d(np.asarray(breaks, dtype=float)).ravel():
        if np.isfinite(b) and lo < b < hi:
            pts.append(float(b))
    pts = np.unique(pts)
    keep = np.concatenate(([True], np.diff(pts) > 1e-14 * max(span, 1e-300)))
    pts = pts[keep]
    pts[-1] = hi
    return pts
