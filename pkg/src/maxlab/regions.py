"""Exponent regions, case classification and necessary conditions.

Points are reciprocal exponents ``(1/p, 1/q, ...)`` with ``p = inf`` encoded
as 0.  Whenever every input is an ``int`` or a :class:`fractions.Fraction`
(or an integral float) the predicates are evaluated in exact rational
arithmetic; otherwise each inequality is checked with a relative tolerance
of ``1e-12``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence

from .errors import ArityError, DomainError

REL_TOL = 1e-12
VERTEX_LABELS = frozenset("HPYBOAXQG")


def _num(x):
    if isinstance(x, Rational):
        return Fraction(x)
    x = float(x)
    if x.is_integer():
        return Fraction(int(x))
    return x


def _exact(*values):
    return all(isinstance(v, Fraction) for v in values)


def _lt(lhs, rhs):
    if _exact(lhs, rhs):
        return lhs < rhs
    return float(lhs) < float(rhs) - REL_TOL * max(1.0, abs(float(rhs)))


def _le(lhs, rhs):
    if _exact(lhs, rhs):
        return lhs <= rhs
    return float(lhs) <= float(rhs) + REL_TOL * max(1.0, abs(float(rhs)))


def _pos(x):
    return x if x > 0 else x * 0


@dataclass(frozen=True)
class Anisotropy:
    """Exponent vector ``a`` of the surface ``sum_j |y^j|^{a_j} = 1`` in (R^n)^m."""

    a: tuple
    n: int = 2

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        if len(a) < 2:
            raise ArityError(f"anisotropy needs at least two exponents, got {len(a)}")
        if any(v < 1 for v in a):
            raise DomainError(f"every exponent must be >= 1, got {a}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.n}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "n", int(self.n))

    @property
    def m(self):
        return len(self.a)

    def __getitem__(self, i):
        return self.a[i]

    def __iter__(self):
        return iter(self.a)

    def __len__(self):
        return len(self.a)

    def swapped(self):
        return Anisotropy(tuple(reversed(self.a)), self.n)


@dataclass(frozen=True)
class ExponentPoint:
    coords: tuple

    def __post_init__(self):
        coords = tuple(_num(c) for c in self.coords)
        if any(c < 0 or c > 1 for c in coords):
            raise DomainError(f"exponent coordinates must lie in [0, 1], got {self.coords}")
        object.__setattr__(self, "coords", coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


class CaseLabel(NamedTuple):
    case: str
    subcase: bool


@dataclass
class RegionReport:
    """Labelled vertices of the bilinear region for given ``(n, a)``."""

    case_label: CaseLabel
    vertices: list = field(default_factory=list)
    n: int = 2
    a: tuple = (1.0, 1.0)

    def vertex(self, label):
        for name, pt in self.vertices:
            if name == label:
                return pt
        raise KeyError(label)

    def as_dict(self):
        return {
            "case": self.case_label.case,
            "subcase": self.case_label.subcase,
            "n": self.n,
            "a": [float(v) for v in self.a],
            "vertices": [[name, [str(c) for c in pt]] for name, pt in self.vertices],
        }


def _coords(pt, arity):
    coords = tuple(_num(c) for c in pt)
    if len(coords) != arity:
        raise ArityError(f"expected a point with {arity} coordinates, got {len(coords)}")
    return coords


def _exps(a, arity=None):
    vals = tuple(_num(v) for v in a)
    if arity is not None and len(vals) != arity:
        raise ArityError(f"expected {arity} exponents, got {len(vals)}")
    if any(v < 1 for v in vals):
        raise DomainError(f"every exponent must be >= 1, got {a}")
    return vals


def in_P(pt, n):
    """Membership in ``{(x, y) in [0,1)^2 : x + y < (2n-1)/n}``."""
    x, y = _coords(pt, 2)
    n = _num(n)
    return (_lt(x, 1) and _lt(y, 1) and _le(0, x) and _le(0, y)
            and _lt(x + y, (2 * n - 1) / n))


def _loss(n, a):
    # (a - n)_+ / (a n) == (1/n - 1/a)_+
    return _pos(1 / n - 1 / a)


def in_Pa(pt, n, a):
    """Membership in the sufficiency region of the bilinear maximal bound."""
    x, y = _coords(pt, 2)
    a1, a2 = _exps(a, 2)
    n = _num(n)
    return in_P((x, y), n) and _lt(x, 1 - _loss(n, a2)) and _lt(y, 1 - _loss(n, a1))


def classify_case(n, a):
    a1, a2 = _exps(a, 2)
    n = _num(n)
    if max(a1, a2) <= n:
        case = "A"
    elif min(a1, a2) <= n:
        case = "B"
    else:
        case = "C"
    return CaseLabel(case, bool(1 / a1 + 1 / a2 > 1 / n))


def vertices(n, a):
    """Labelled corner points of the bilinear region.

    Case A returns the pentagon ``O, G, Q, P, H`` of ``P``.  Case B with
    ``a1 <= n < a2`` returns ``H, P, Y, B``; its mirror image
    (``a2 <= n < a1``) returns ``G, Q, X, A``.  Case C returns ``O, B, Y, X, A``
    when ``1/a1 + 1/a2 > 1/n`` and the rectangle ``O, B, Y, A`` otherwise,
    where ``Y`` is then the corner on the two vertical/horizontal edges.
    """
    a1, a2 = _exps(a, 2)
    n = _num(n)
    label = classify_case(n, (a1, a2))
    one = Fraction(1) if _exact(n, a1, a2) else 1.0
    O = (0 * one, 0 * one)
    H = (0 * one, one)
    G = (one, 0 * one)
    P = ((n - 1) / n, one)
    Q = (one, (n - 1) / n)
    xb = 1 - 1 / n + 1 / a2
    ya = 1 - 1 / n + 1 / a1
    if label.case == "A":
        verts = [("O", O), ("G", G), ("Q", Q), ("P", P), ("H", H)]
    elif label.case == "B" and a1 <= n:
        verts = [("H", H), ("P", P), ("Y", (xb, 1 - 1 / a2)), ("B", (xb, 0 * one))]
    elif label.case == "B":
        verts = [("G", G), ("Q", Q), ("X", (1 - 1 / a1, ya)), ("A", (0 * one, ya))]
    elif label.subcase:
        verts = [("O", O), ("B", (xb, 0 * one)), ("Y", (xb, 1 - 1 / a2)),
                 ("X", (1 - 1 / a1, ya)), ("A", (0 * one, ya))]
    else:
        verts = [("O", O), ("B", (xb, 0 * one)), ("Y", (xb, ya)), ("A", (0 * one, ya))]
    return RegionReport(label, verts, int(n), (float(a1), float(a2)))


def necessary_ok(pt, n, a):
    """Closed necessary conditions for the bilinear maximal bound."""
    x, y = _coords(pt, 2)
    a1, a2 = _exps(a, 2)
    n = _num(n)
    if not _le(x + y, (2 * n - 1) / n):
        return False
    if a2 > n and not _le(x, 1 - (1 / n - 1 / a2)):
        return False
    if a1 > n and not _le(y, 1 - (1 / n - 1 / a1)):
        return False
    return True


def trilinear_one_over_p3(i, n, a):
    """Per-coordinate bound ``1/p_i^3`` of the trilinear region (``i`` is 1-based).

    The value is returned unclamped.
    """
    a = _exps(a, 3)
    n = _num(n)
    if i not in (1, 2, 3):
        raise DomainError(f"index must be 1, 2 or 3, got {i}")
    j1, j2 = sorted((j for j in range(3) if j != i - 1), key=lambda j: (a[j], j))
    return n / a[j2] + (1 - n / a[j2]) * (1 - _pos(1 / n - 1 / a[j1]))


def in_P3tilde(pt, n, a):
    xs = _coords(pt, 3)
    a = _exps(a, 3)
    n = _num(n)
    if not all(_le(0, x) and _lt(x, 1) for x in xs):
        return False
    if not _lt(sum(xs), (3 * n - 1) / n):
        return False
    return all(_lt(xs[i], trilinear_one_over_p3(i + 1, n, a)) for i in range(3))


def multilinear_necessary(pt, n, a, strict=True):
    """Necessary conditions for the m-linear maximal bound.

    The per-coordinate conditions are strict by default; ``strict=False``
    closes them, which makes the ``m = 2`` case coincide with
    :func:`necessary_ok`.
    """
    a = _exps(a)
    if len(a) < 2:
        raise ArityError("need at least two exponents")
    xs = _coords(pt, len(a))
    n = _num(n)
    m = len(a)
    if not _le(sum(xs), (m * n - 1) / n):
        return False
    cmp = _lt if strict else _le
    for i in range(m):
        rest = sum(1 / a[j] for j in range(m) if j != i)
        if not cmp(xs[i], 1 - _pos(1 / n - rest)):
            return False
    return True


# -- half-planes and polygons --------------------------------------------

def bilinear_halfplanes(n, a, closed_square=True):
    """Half-planes ``(u, v, c)`` meaning ``u*x + v*y <= c`` cutting out ``closure(P^a)``."""
    a1, a2 = _exps(a, 2)
    n = _num(n)
    hp = [(-1, 0, 0), (0, -1, 0), (1, 0, 1), (0, 1, 1), (1, 1, (2 * n - 1) / n)]
    if a2 > n:
        hp.append((1, 0, 1 - (1 / n - 1 / a2)))
    if a1 > n:
        hp.append((0, 1, 1 - (1 / n - 1 / a1)))
    return hp


def curve_halfplanes(case, m):
    """Closure of the boundedness region for the curve maximal operator.

    ``case`` is ``"i"``, ``"ii"`` or ``"iii"``, the three finite-type regimes.
    """
    m = _num(m)
    base = [(-1, 0, 0), (0, -1, 0), (1, 0, 1), (0, 1, 1)]
    if case == "i":
        return base + [(1, 1, 1)]
    if case == "ii":
        return base + [(1, 1, 1), (0, 1, 1 / m)]
    if case == "iii":
        return base + [(1, m, 1)]
    raise DomainError(f"unknown curve case {case!r}")


def trilinear_slice_halfplanes(n, a, x3=0):
    """Section ``x_3 = const`` of the closure of the trilinear sufficiency region."""
    n = _num(n)
    a = _exps(a, 3)
    x3 = _num(x3)
    return [(-1, 0, 0), (0, -1, 0),
            (1, 0, min(1, trilinear_one_over_p3(1, n, a))),
            (0, 1, min(1, trilinear_one_over_p3(2, n, a))),
            (1, 1, (3 * n - 1) / n - x3)]


def halfplane_polygon(halfplanes, tol=1e-12):
    """Vertices of the bounded polygon ``{u*x + v*y <= c for all (u, v, c)}``.

    Rational coefficients give exact vertices.  The vertices are returned in
    counter-clockwise order; an empty list means the intersection has no
    corner points.
    """
    hp = [tuple(_num(v) for v in h) for h in halfplanes]
    exact = all(_exact(*h) for h in hp)
    eps = 0 if exact else tol
    pts = []
    for i in range(len(hp)):
        u1, v1, c1 = hp[i]
        for j in range(i + 1, len(hp)):
            u2, v2, c2 = hp[j]
            det = u1 * v2 - u2 * v1
            if (det == 0) if exact else abs(det) < tol:
                continue
            x = (c1 * v2 - c2 * v1) / det
            y = (u1 * c2 - u2 * c1) / det
            if all(u * x + v * y <= c + eps for u, v, c in hp):
                if not any(abs(x - px) <= eps and abs(y - py) <= eps for px, py in pts):
                    pts.append((x, y))
    if len(pts) < 3:
        return pts
    cx = sum(float(p[0]) for p in pts) / len(pts)
    cy = sum(float(p[1]) for p in pts) / len(pts)
    import math

    pts.sort(key=lambda p: math.atan2(float(p[1]) - cy, float(p[0]) - cx))
    return pts


def region_polygon(n, a):
    """Full corner list of ``closure(P^a)`` by half-plane intersection."""
    return halfplane_polygon(bilinear_halfplanes(n, a))
