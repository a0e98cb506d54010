from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from maxlab import regions as R
from maxlab.errors import ArityError, DomainError

unit = st.floats(0, 1, allow_nan=False)
expo = st.sampled_from([1, 1.5, 2, 3, 4, 6, 100])


def test_in_P_examples():
    assert R.in_P((0.7, 0.7), 2)
    assert not R.in_P((0.8, 0.8), 2)
    assert not R.in_P((1.0, 0.0), 2)


def test_in_P_arity():
    with pytest.raises(ArityError):
        R.in_P((0.1, 0.2, 0.3), 2)


def test_in_Pa_examples():
    assert not R.in_Pa((0.9, 0.3), 2, (2, 3))
    assert R.in_Pa((0.7, 0.7), 2, (2, 2))
    assert R.in_Pa((0.5, 0.5), 2, (100, 100))


def test_exponent_point_range():
    with pytest.raises(DomainError):
        R.ExponentPoint((1.2, 0.0))


def test_anisotropy_checks():
    with pytest.raises(DomainError):
        R.Anisotropy((0.5, 2), 2)


def test_classify_case():
    assert R.classify_case(2, (2, 2)).case == "A"
    assert R.classify_case(2, (2, 3)).case == "B"
    lab = R.classify_case(2, (3, 3))
    assert lab.case == "C" and lab.subcase


def test_vertices_case_B_exact():
    rep = R.vertices(2, (2, 3))
    assert rep.case_label.case == "B"
    assert [v[0] for v in rep.vertices] == ["H", "P", "Y", "B"]
    assert rep.vertex("H") == (0, 1)
    assert rep.vertex("P") == (F(1, 2), 1)
    assert rep.vertex("Y") == (F(5, 6), F(2, 3))
    assert rep.vertex("B") == (F(5, 6), 0)
    assert all(isinstance(c, F) for _, pt in rep.vertices for c in pt)


def test_vertices_case_C():
    rep = R.vertices(2, (3, 3))
    assert rep.vertex("A") == (0, F(5, 6))
    assert rep.vertex("X") == (F(2, 3), F(5, 6))


def test_vertices_case_A_polygon():
    rep = R.vertices(2, (2, 2))
    pts = {tuple(pt) for _, pt in rep.vertices}
    assert pts == {(0, 0), (1, 0), (1, F(1, 2)), (F(1, 2), 1), (0, 1)}
    assert set(R.region_polygon(2, (2, 2))) == pts


def test_necessary_ok_examples():
    assert R.necessary_ok((0.75, 0.75), 2, (2, 2))
    assert not R.necessary_ok((0.9, 0.0), 2, (2, 3))
    assert R.necessary_ok((0, 0), 2, (7, 9))


def test_trilinear_p3_examples():
    assert R.trilinear_one_over_p3(1, 2, (2, 2, 6)) == 1
    assert R.trilinear_one_over_p3(3, 2, (4, 6, 6)) == F(5, 6)
    for i in (1, 2, 3):
        assert R.trilinear_one_over_p3(i, 2, (1, 1, 1)) == 1


def test_in_P3tilde_examples():
    assert R.in_P3tilde((0.5, 0.5, 0.5), 2, (2, 2, 2))
    assert not R.in_P3tilde((0.9, 0.9, 0.9), 2, (2, 2, 2))
    # 1/p_1^3 for a = (4, 6, 6): j1, j2 = 2, 3 -> 1/3 + (2/3)(1 - (1/2 - 1/6)) = 7/9
    bound = 1 / 3 + (2 / 3) * (1 - (1 / 2 - 1 / 6))
    assert float(R.trilinear_one_over_p3(1, 2, (4, 6, 6))) == pytest.approx(bound, abs=1e-15)
    assert R.in_P3tilde((0.9, 0.3, 0.3), 2, (4, 6, 6)) == (0.9 < bound)


def test_multilinear_necessary_examples():
    assert R.multilinear_necessary((0.9, 0.9, 0.6), 2, (2, 2, 2))
    assert not R.multilinear_necessary((0.8, 0.0, 0.0), 2, (8, 8, 8))


@given(unit, unit, expo, expo)
def test_multilinear_m2_matches_necessary_ok(x, y, a1, a2):
    assert R.multilinear_necessary((x, y), 2, (a1, a2), strict=False) == R.necessary_ok((x, y), 2, (a1, a2))


@given(unit, unit, expo, expo, st.floats(0, 1))
def test_monotone_bilinear(x, y, a1, a2, lam):
    a = (a1, a2)
    for pred in (lambda p: R.in_P(p, 2), lambda p: R.in_Pa(p, 2, a), lambda p: R.necessary_ok(p, 2, a)):
        if pred((x, y)):
            assert pred((lam * x, y)) and pred((x, lam * y))


@given(unit, unit, unit, expo, expo, expo, st.floats(0, 1), st.integers(0, 2))
def test_monotone_trilinear(x, y, z, a1, a2, a3, lam, i):
    pt = [x, y, z]
    a = (a1, a2, a3)
    small = list(pt)
    small[i] *= lam
    if R.in_P3tilde(pt, 2, a):
        assert R.in_P3tilde(small, 2, a)
    if R.multilinear_necessary(pt, 2, a):
        assert R.multilinear_necessary(small, 2, a)


@given(unit, unit, expo, expo)
def test_containment_and_symmetry(x, y, a1, a2):
    if R.in_Pa((x, y), 2, (a1, a2)):
        assert R.in_P((x, y), 2)
        assert R.necessary_ok((x, y), 2, (a1, a2))
    assert R.in_Pa((x, y), 2, (a1, a2)) == R.in_Pa((y, x), 2, (a2, a1))


@pytest.mark.parametrize("a", [(2, 2), (2, 3), (3, 2), (3, 3), (6, 6), (1, 2), (3, 8)])
def test_vertex_consistency(a):
    rep = R.vertices(2, a)
    hps = R.bilinear_halfplanes(2, a)
    for _, pt in rep.vertices:
        x, y = pt
        assert R.necessary_ok((x, y), 2, a)
        assert any(u * x + v * y == c for u, v, c in hps)
        assert 0 <= x <= 1 and 0 <= y <= 1


def test_polygon_case_B_matches_figure_shape():
    poly = R.region_polygon(2, (2, 3))
    assert set(poly) == {(0, 0), (F(5, 6), 0), (F(5, 6), F(2, 3)), (F(1, 2), 1), (0, 1)}


def test_polygon_case_C_subcase_pentagon():
    poly = R.region_polygon(2, (3, 3))
    assert set(poly) == {(0, 0), (F(5, 6), 0), (F(5, 6), F(2, 3)), (F(2, 3), F(5, 6)), (0, F(5, 6))}


def test_polygon_case_C_rectangle():
    poly = R.region_polygon(2, (6, 6))
    ya = F(1, 2) + F(1, 6)
    assert set(poly) == {(0, 0), (ya, 0), (ya, ya), (0, ya)}
    assert R.vertices(2, (6, 6)).vertex("Y") == (ya, ya)


def test_curve_region_case_iii():
    poly = R.halfplane_polygon(R.curve_halfplanes("iii", 2))
    assert set(poly) == {(0, 0), (1, 0), (0, F(1, 2))}


def test_halfplane_polygon_float_and_ccw():
    poly = R.halfplane_polygon([(-1, 0, 0), (0, -1, 0), (1, 1, 0.7 ** 0.5)])
    pts = np.array([[float(x), float(y)] for x, y in poly])
    area = 0.5 * np.sum(pts[:, 0] * np.roll(pts[:, 1], -1) - np.roll(pts[:, 0], -1) * pts[:, 1])
    assert area == pytest.approx(0.35, rel=1e-12)


def test_region_report_dict():
    d = R.vertices(2, (2, 3)).as_dict()
    assert d["case"] == "B" and d["vertices"][2] == ["Y", ["5/6", "2/3"]]
