"""Experiment kinds: parameter schemas and runners.

A runner takes the parsed parameters, the seed and the thread count and
returns an :class:`Outcome` with a verdict, a summary for the JSON report,
CSV rows and an SVG plot.
"""

from dataclasses import dataclass, field

import numpy as np

from .. import bilinear, curves, multilinear, regions
from ..fields import Grid
from ..errors import ConfigError
from .config import Param
from . import svg


@dataclass
class Outcome:
    passed: bool
    summary: dict
    header: list
    rows: list
    plot: str = ""
    notes: list = field(default_factory=list)


def _fit_outcome(fit, xlabel, ylabel, title, transform="log", columns=("x", "y")):
    x = np.asarray(fit.x, dtype=float)
    y = np.asarray(fit.y, dtype=float)
    if transform == "log":
        u, w = np.log(x), np.log(y)
    elif transform == "semilog":
        u, w = np.log(x), y
    else:
        u, w = x, np.log2(y)
    plot = svg.plot_scaling(u, w, fit.slope, fit.intercept, xlabel, ylabel, title)
    rows = [[float(a), float(b)] for a, b in zip(x, y)]
    summary = {"predicted_slope": fit.predicted_slope, "fitted_slope": fit.slope,
               "stderr": fit.stderr, "residual": fit.residual, "tolerance": fit.tolerance,
               "fit": fit.as_dict()}
    return Outcome(bool(fit.passed), summary, list(columns), rows, plot)


def _grid(p, n):
    return Grid.uniform(n, p["grid_lo"], p["grid_hi"], p["grid_count"])


def _field_rows(fld):
    pts = fld.grid.points()
    vals = np.asarray(fld.values, dtype=float).ravel()
    header = [f"x{i + 1}" for i in range(pts.shape[1])] + ["value"]
    return header, [list(map(float, pt)) + [float(v)] for pt, v in zip(pts, vals)]


# -- runners -----------------------------------------------------------------------

def run_bilinear_average(p, seed, threads):
    req = bilinear.AverageRequest(p["f"], p["g"], tuple(p["x"]), p["t1"], p["t2"], tuple(p["a"]),
                                  order=p["order"], sphere_resolution=p["sphere_resolution"],
                                  normalized=p["normalized"], rtol=p["rtol"])
    gs = bilinear.average_gsliced(req)
    fs = bilinear.average_fsliced(req)
    rel = abs(gs - fs) / abs(gs) if gs != 0 else abs(fs)
    passed = rel <= p["tolerance"]
    summary = {"gsliced": gs, "fsliced": fs, "relative_difference": rel}
    rows = [["gsliced", gs], ["fsliced", fs]]
    labels, vals = ["g-sliced", "f-sliced"], [gs, fs]
    if p["oracle_samples"] > 0:
        mean, se = bilinear.average_param_oracle(req, p["oracle_samples"], seed, threads)
        if req.normalized:
            mass = bilinear.surface_mass(req.n, req.a)
            mean, se = mean / mass, se / mass
        z = abs(mean - gs) / se if se > 0 else (0.0 if mean == gs else np.inf)
        summary.update({"oracle": mean, "oracle_se": se, "oracle_z": z})
        rows += [["oracle", mean], ["oracle_se", se]]
        labels.append("oracle")
        vals.append(mean)
        passed = passed and z <= 3
    plot = svg.plot_bars(labels, vals, "bilinear average by path", "average")
    return Outcome(bool(passed), summary, ["quantity", "value"], rows, plot)


def run_bilinear_maximal(p, seed, threads):
    n = len(p["f"].center)
    req = bilinear.MaximalRequest(p["f"], p["g"], _grid(p, n), p["t_min"], p["t_max"], p["ratio"],
                                  p["mode"], tuple(p["a"]), p["normalized"], p["order"],
                                  refine=p["refine"], threads=threads)
    fld = bilinear.maximal_estimate(req)
    summary = {"max": float(np.max(fld.values)), "min": float(np.min(fld.values))}
    if p["p"] is not None and p["q"] is not None:
        r = 1 / (1 / p["p"] + 1 / p["q"])
        summary.update({"r": r, "norm_ratio": bilinear.norm_ratio(p["f"], p["g"], p["p"], p["q"],
                                                                  r, fld, n)})
    header, rows = _field_rows(fld)
    return Outcome(True, summary, header, rows, svg.plot_field(fld, f"bilinear maximal, {p['mode']}"))


def run_dyadic_decay(p, seed, threads):
    n = p["n"]
    fit = bilinear.dyadic_decay(n, tuple(p["a"]), p["f"], p["g"], p["p"], p["q"], p["ks"],
                                _grid(p, n), p["t_min"], p["t_max"], p["ratio"], p["threshold"],
                                threads)
    return _fit_outcome(fit, "k", "log2 ratio", "dyadic pieces", transform="log2",
                        columns=("k", "norm_ratio"))


def run_nec1(p, seed, threads):
    fit = bilinear.sharpness_nec1(p["n"], tuple(p["a"]), np.asarray(p["deltas"]), p["eps0"],
                                  p["C1"], p["n_radii"], p["tolerance"])
    return _fit_outcome(fit, "log delta", "log lower bound", "first necessary condition",
                        columns=("delta", "lower_bound"))


def run_nec2(p, seed, threads):
    fit = bilinear.sharpness_nec2(p["n"], tuple(p["a"]), np.asarray(p["deltas"]), p["C"],
                                  p["mirrored"], p["n_radii"], tolerance=p["tolerance"])
    return _fit_outcome(fit, "log delta", "log lower bound", "second necessary condition",
                        columns=("delta", "lower_bound"))


def run_l1(p, seed, threads):
    fit = bilinear.l1_failure_probe(p["n"], tuple(p["a"]), tuple(p["scales"]), p["delta"],
                                    tolerance=p["tolerance"])
    return _fit_outcome(fit, "log R", "mass", "L1 failure probe", transform="semilog",
                        columns=("R", "mass"))


def run_curve_maximal(p, seed, threads):
    curve = curves.CurveSpec.normal_form(p["curve_m"], p["curve_s0"], p["curve_c_star"],
                                         tuple(p["curve_phi"]))
    grid = Grid((p["grid_lo"],), (p["grid_hi"],), (p["grid_count"],))
    fld = curves.curve_maximal(p["f"], p["g"], grid, p["t_min"], p["t_max"], p["ratio"], p["mode"],
                               curve, p["order"], threads)
    header, rows = _field_rows(fld)
    summary = {"max": float(np.max(fld.values)), "min": float(np.min(fld.values))}
    return Outcome(True, summary, header, rows, svg.plot_field(fld, "curve maximal"))


def run_mstar(p, seed, threads):
    fit = curves.mstar_exponent(p["p"], np.asarray(p["h_sequence"]), None, p["cells_per_unit"],
                                p["extent"], p["t_ratio"], p["tolerance"])
    lows, highs = fit.extras["profile_min"], fit.extras["profile_max"]
    bounded = min(lows) > 0 and max(highs) / min(lows) <= p["profile_spread"]
    out = _fit_outcome(fit, "log h", "log norm", "truncated maximal operator",
                       columns=("h", "norm"))
    out.passed = bool(fit.passed and bounded)
    out.summary["profile_bounded"] = bool(bounded)
    return out


def run_curve_sharpness(p, seed, threads):
    rep = curves.curve_sharpness(p["case"], p["m"], p["p"], p["q"], p["eta0"], p["halvings"],
                                 p["x"], p["C"], p["log_exponent"], p["tolerance"])
    summary = {"report": rep.as_dict()}
    if rep.case == "i":
        rows = [[i, c] for i, c in enumerate(rep.ratios)]
        plot = svg.plot_bars([str(i) for i in range(len(rep.ratios))], rep.ratios,
                             "case (i) constants", "constant")
        return Outcome(bool(rep.passed), summary, ["function", "constant"], rows, plot)
    etas = rep.etas[1:]
    rows = [[e, v] for e, v in zip(etas, rep.values)]
    plot = svg.plot_series(np.log2(etas), [("value", rep.values)], "log2 eta", "cut-off value",
                           f"curve case ({rep.case}), m = {rep.m}")
    return Outcome(bool(rep.passed), summary, ["eta", "value"], rows, plot)


def run_trilinear_average(p, seed, threads):
    fs = p["functions"]
    req = multilinear.MultiAverageRequest(tuple(fs), tuple(p["x"]), tuple(p["t"]), tuple(p["a"]),
                                          pivot=p["pivot"], samples=p["samples"], seed=seed,
                                          normalized=p["normalized"], threads=threads)
    est, se = multilinear.multilinear_average(req)
    summary = {"estimate": est, "standard_error": se}
    rows = [[req.pivot, est, se]]
    passed = True
    if p["cross_pivot"]:
        other = multilinear.MultiAverageRequest(req.fs, req.x, req.t, req.a, pivot=p["cross_pivot"],
                                                samples=req.samples, seed=seed + 1,
                                                normalized=req.normalized, threads=threads)
        e2, s2 = multilinear.multilinear_average(other)
        z = abs(est - e2) / np.hypot(se, s2) if se + s2 > 0 else 0.0
        summary.update({"cross_estimate": e2, "cross_standard_error": s2, "z": z})
        rows.append([other.pivot, e2, s2])
        passed = z <= 3
    plot = svg.plot_bars([f"pivot {r[0]}" for r in rows], [r[1] for r in rows],
                         "multilinear average", "estimate")
    return Outcome(bool(passed), summary, ["pivot", "estimate", "standard_error"], rows, plot)


def run_trilinear_necessity(p, seed, threads):
    fit = multilinear.necessity_experiment(p["n"], tuple(p["a"]), np.asarray(p["deltas"]), p["C"],
                                           tuple(p["radii"]), p["samples"], seed, p["tolerance"],
                                           threads)
    return _fit_outcome(fit, "log delta", "log lower bound", "multilinear necessity",
                        columns=("delta", "lower_bound"))


def run_region_report(p, seed, threads):
    kind, n = p["region"], p["n"]
    a = tuple(p["a"]) if p["a"] is not None else None
    if kind == "bilinear":
        if a is None or len(a) != 2:
            raise ConfigError("bilinear regions need two exponents")
        rep = regions.vertices(n, a)
        summary = {"region": rep.as_dict()}
    elif kind == "trilinear-slice":
        if a is None or len(a) != 3:
            raise ConfigError("trilinear sections need three exponents")
        summary = {"region": {"n": n, "a": list(a), "x3": p["x3"]}}
    else:
        summary = {"region": {"case": p["case"], "m": p["m"]}}
    poly, labels = svg.region_outline(n, a, kind, p["case"], p["m"], p["x3"])
    rows = [[labels.get((x, y), ""), str(x), str(y), float(x), float(y)] for x, y in poly]
    summary["polygon"] = [[r[0], r[1], r[2]] for r in rows]
    plot = svg.plot_region(n, a, kind, p["case"], p["m"], p["x3"])
    return Outcome(True, summary, ["label", "x_exact", "y_exact", "x", "y"], rows, plot)


# -- schemas -----------------------------------------------------------------------

_BALL2 = "ball center=0,0 radius=1"
_GRID = {"grid_lo": Param("float", "-2"), "grid_hi": Param("float", "2"),
         "grid_count": Param("int", "9")}
_T = {"t_min": Param("float", "0.125"), "t_max": Param("float", "8"),
      "ratio": Param("float", "2^(1/8)")}

KINDS = {
    "bilinear-average": ({
        "f": Param("function"), "g": Param("function"), "x": Param("floats"),
        "t1": Param("float"), "t2": Param("float"), "a": Param("floats", "2,2"),
        "order": Param("int", "16"), "sphere_resolution": Param("int", "24"),
        "rtol": Param("float", "1e-7"), "normalized": Param("bool", "true"),
        "tolerance": Param("float", "1e-4"), "oracle_samples": Param("int", "0"),
    }, run_bilinear_average),
    "bilinear-maximal": ({
        "f": Param("function", _BALL2), "g": Param("function", _BALL2),
        "a": Param("floats", "2,2"), **_GRID, **_T,
        "mode": Param("str", "biparam", ("biparam", "diagonal")),
        "normalized": Param("bool", "true"), "order": Param("int", "8"),
        "refine": Param("bool", "false"), "p": Param("float", None), "q": Param("float", None),
    }, run_bilinear_maximal),
    "dyadic-decay": ({
        "n": Param("int", "2"), "a": Param("floats", "2,4"),
        "f": Param("function", _BALL2), "g": Param("function", _BALL2),
        "p": Param("float", "1/0.6"), "q": Param("float", "1/0.35"),
        "ks": Param("ints", "2,3,4,5,6,7,8"),
        "grid_lo": Param("float", "-3"), "grid_hi": Param("float", "3"),
        "grid_count": Param("int", "13"), "t_min": Param("float", "0.25"),
        "t_max": Param("float", "4"), "ratio": Param("float", "2^(1/4)"),
        "threshold": Param("float", "-0.1"),
    }, run_dyadic_decay),
    "sharpness-nec1": ({
        "n": Param("int", "2"), "a": Param("floats", "2,2"),
        "deltas": Param("floats", "2^-3,2^-4,2^-5,2^-6,2^-7"), "eps0": Param("float", None),
        "C1": Param("float", "4"), "n_radii": Param("int", "5"), "tolerance": Param("float", "0.2"),
    }, run_nec1),
    "sharpness-nec2": ({
        "n": Param("int", "2"), "a": Param("floats", "2,6"),
        "deltas": Param("floats", "2^-6,2^-7,2^-8,2^-9,2^-10"), "C": Param("float", "4"),
        "mirrored": Param("bool", "false"), "n_radii": Param("int", "5"),
        "tolerance": Param("float", "0.15"),
    }, run_nec2),
    "l1-failure": ({
        "n": Param("int", "2"), "a": Param("floats", "2,2"), "scales": Param("floats", "8,16,32,64"),
        "delta": Param("float", "0.25"), "tolerance": Param("float", "0.25"),
    }, run_l1),
    "curve-maximal": ({
        "f": Param("function", "ball center=0 radius=1"),
        "g": Param("function", "ball center=0 radius=1"),
        "curve_m": Param("int", "2"), "curve_s0": Param("float", "0.5"),
        "curve_c_star": Param("float", "1"), "curve_phi": Param("floats", "1"),
        "grid_lo": Param("float", "-2"), "grid_hi": Param("float", "2"),
        "grid_count": Param("int", "41"), **_T,
        "mode": Param("str", "biparam", ("biparam", "diagonal")), "order": Param("int", "8"),
    }, run_curve_maximal),
    "mstar-exponent": ({
        "p": Param("float", "2"), "h_sequence": Param("floats", "4,8,16,32,64,128,256"),
        "cells_per_unit": Param("int", "256"), "extent": Param("float", "64"),
        "t_ratio": Param("float", "2^(1/8)"), "tolerance": Param("float", "0.05"),
        "profile_spread": Param("float", "8"),
    }, run_mstar),
    "curve-sharpness": ({
        "case": Param("str", "ii", ("i", "ii", "iii")), "m": Param("int", "3"),
        "p": Param("float", "inf"), "q": Param("float", "2"), "eta0": Param("float", None),
        "halvings": Param("int", "3"), "x": Param("float", "0.5"), "C": Param("float", "4"),
        "log_exponent": Param("float", "0"), "tolerance": Param("float", None),
    }, run_curve_sharpness),
    "trilinear-average": ({
        "functions": Param("functions"), "x": Param("floats"), "t": Param("floats"),
        "a": Param("floats", "2,2,2"), "pivot": Param("int", "1"),
        "samples": Param("int", "1000000"), "normalized": Param("bool", "true"),
        "cross_pivot": Param("int", "0"),
    }, run_trilinear_average),
    "trilinear-necessity": ({
        "n": Param("int", "2"), "a": Param("floats", "2,2,2"),
        "deltas": Param("floats", "2^-2,2^-3,2^-4,2^-5"), "C": Param("float", "4"),
        "radii": Param("floats", "1,1.5,2"), "samples": Param("int", "1000000"),
        "tolerance": Param("float", "0.3"),
    }, run_trilinear_necessity),
    "region-report": ({
        "region": Param("str", "bilinear", ("bilinear", "trilinear-slice", "curve")),
        "n": Param("int", "2"), "a": Param("floats", None),
        "case": Param("str", "iii", ("i", "ii", "iii")), "m": Param("int", "2"),
        "x3": Param("float", "0"),
    }, run_region_report),
}

SCHEMAS = {k: v[0] for k, v in KINDS.items()}


def runner(kind):
    return KINDS[kind][1]


def describe(kind):
    """One line per parameter: name, type and default."""
    out = []
    for key, spec in SCHEMAS[kind].items():
        if spec.default is None:
            d = "optional"
        elif isinstance(spec.default, str):
            d = f"default {spec.default}"
        else:
            d = "required"
        out.append(f"{key} ({spec.kind}, {d})")
    return out
