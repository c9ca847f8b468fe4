"""Logarithmic regression of signal strength against distance.

The fitted curve is ``y = intercept + slope * log10(d)``, an ordinary least
squares line in log-distance space. With base-10 logs the slope is directly
comparable to ``-10 n`` of the log-distance model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from pathcal.errors import DegenerateError, ValidationError


@dataclass(frozen=True)
class FittedValue:
    label: str
    distance: float
    value: float


@dataclass(frozen=True)
class RegressionResult:
    intercept: float
    slope: float
    r_squared: float
    fitted: tuple[FittedValue, ...]
    ss_tot: float
    ss_res: float
    ss_reg: float

    def predict(self, d: float) -> float:
        return regression_predict(self, d)


def log_regression(points: Sequence[tuple[float, float]],
                   labels: Sequence[str] | None = None) -> RegressionResult:
    """Fit ``value = a + b*log10(distance)`` by least squares.

    Args:
        points: (distance in meters, value in dB) pairs.
        labels: optional per-point labels carried into ``fitted``.

    Raises:
        DegenerateError: fewer than two points or all distances equal.
    """
    if len(points) < 2:
        raise DegenerateError(f"regression needs at least 2 points, got {len(points)}")
    if labels is None:
        labels = [str(i + 1) for i in range(len(points))]
    elif len(labels) != len(points):
        raise ValidationError("labels and points differ in length")

    d = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    if np.any(~np.isfinite(d)) or np.any(d <= 0):
        raise ValidationError("regression distances must be finite and > 0")
    if np.any(~np.isfinite(y)):
        raise ValidationError("regression values must be finite")

    x = np.log10(d)
    xc = x - x.mean()
    sxx = float(xc @ xc)
    if sxx == 0.0:
        raise DegenerateError("degenerate geometry: all regression distances are equal")

    yc = y - y.mean()
    slope = float(xc @ yc) / sxx
    intercept = float(y.mean() - slope * x.mean())
    fitted = intercept + slope * x

    ss_tot = float(yc @ yc)
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_reg = float(np.sum((fitted - y.mean()) ** 2))
    # a constant target is fitted exactly by a flat line
    r_squared = 1.0 if ss_tot == 0.0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))

    return RegressionResult(
        intercept=intercept,
        slope=slope,
        r_squared=r_squared,
        fitted=tuple(FittedValue(str(l), float(di), float(fi))
                     for l, di, fi in zip(labels, d, fitted)),
        ss_tot=ss_tot,
        ss_res=ss_res,
        ss_reg=ss_reg,
    )


def regression_predict(reg: RegressionResult, d: float) -> float:
    d = float(d)
    if not math.isfinite(d) or d <= 0:
        raise ValidationError(f"distance must be > 0, got {d}")
    return reg.intercept + reg.slope * math.log10(d)
