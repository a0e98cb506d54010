"""Least-squares scaling fits."""

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from .errors import FitError


@dataclass
class ScalingFit:
    slope: float
    intercept: float
    stderr: float
    residual: float
    predicted_slope: float
    tolerance: float
    passed: bool
    x: list = field(default_factory=list)
    y: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def as_dict(self):
        d = asdict(self)
        d["passed"] = bool(self.passed)
        return d


def _fit(u, v, predicted, tolerance, max_residual, x, y):
    res = stats.linregress(u, v)
    resid = v - (res.intercept + res.slope * u)
    rms = float(np.sqrt(np.mean(resid ** 2)))
    fit = ScalingFit(float(res.slope), float(res.intercept), float(res.stderr), rms,
                     float(predicted), float(tolerance),
                     bool(abs(res.slope - predicted) <= tolerance),
                     [float(t) for t in x], [float(t) for t in y])
    if max_residual is not None and rms > max_residual:
        raise FitError(f"fit residual {rms:.3g} exceeds {max_residual:.3g}", fit.as_dict())
    return fit


def _check(x, y, positive_x=True, positive_y=True):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    data = {"x": x.tolist(), "y": y.tolist()}
    if x.shape != y.shape or x.ndim != 1:
        raise FitError("x and y must be one-dimensional and of equal length", data)
    if x.size < 3:
        raise FitError(f"need at least 3 points, got {x.size}", data)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise FitError("non-finite data", data)
    if (positive_x and np.any(x <= 0)) or (positive_y and np.any(y <= 0)):
        raise FitError("log fit needs positive data", data)
    if np.ptp(x) == 0:
        raise FitError("x values are all equal", data)
    return x, y


def fit_loglog(x, y, predicted, tolerance, max_residual=None):
    """Slope of ``log y`` against ``log x``."""
    x, y = _check(x, y)
    return _fit(np.log(x), np.log(y), predicted, tolerance, max_residual, x, y)


def fit_semilog(x, y, predicted, tolerance, max_residual=None):
    """Slope of ``y`` against ``log x``."""
    x, y = _check(x, y, positive_y=False)
    return _fit(np.log(x), y, predicted, tolerance, max_residual, x, y)


def fit_log2_linear(k, y, predicted, tolerance, max_residual=None):
    """Slope of ``log2 y`` against ``k``."""
    k, y = _check(k, y, positive_x=False)
    return _fit(k, np.log2(y), predicted, tolerance, max_residual, k, y)
