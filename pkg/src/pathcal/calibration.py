"""Calibrating the log-distance exponent against a measured campaign.

Three routes share one objective, the RMS error (dB) between per-point mean
RSSI and the model prediction:

* ``select_best_exponent`` picks among a few candidate exponents,
* ``fit_exponent_least_squares`` solves for the exact minimizer,
* ``fit_exponent_grid`` brute-forces a dense grid and exists mainly to
  cross-check the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from pathcal.errors import DegenerateError, ValidationError
from pathcal.propagation import ldpl_rssi_grid, predict_rssi
from pathcal.survey import LogDistance, SurveyCampaign

DISCRETE = "DiscreteSelection"
LEAST_SQUARES = "LeastSquares"
GRID = "GridSearch"

GRID_LO, GRID_HI, GRID_STEP = 0.5, 10.0, 1e-3


@dataclass(frozen=True)
class Residual:
    label: str
    measured: float
    predicted: float
    residual: float


@dataclass(frozen=True)
class FitResult:
    exponent: float
    method: str
    residuals: tuple[Residual, ...]
    mae: float
    rmse: float
    mean_relative_error: float


@dataclass(frozen=True)
class EnvironmentClass:
    name: str
    n_low: float
    n_high: float

    def contains(self, n: float) -> bool:
        return self.n_low <= n <= self.n_high


ENVIRONMENT_CLASSES = (
    EnvironmentClass("Free space", 2.0, 2.0),
    EnvironmentClass("Cellular radio in urban area", 2.7, 3.5),
    EnvironmentClass("Cellular radio in urban area with fading", 3.0, 5.0),
    EnvironmentClass("Closed environment with line of sight", 1.6, 1.8),
    EnvironmentClass("Building with obstacles", 4.0, 6.0),
    EnvironmentClass("Factory with obstacles", 2.0, 3.0),
)


def classify_environment(n: float) -> list[EnvironmentClass]:
    """Built-in environment classes whose exponent range contains ``n``."""
    return [env for env in ENVIRONMENT_CLASSES if env.contains(n)]


def evaluate_exponent(campaign: SurveyCampaign, n: float, method: str = DISCRETE) -> FitResult:
    """Residuals and error statistics of the log-distance model at exponent ``n``."""
    if not campaign.points:
        raise DegenerateError("campaign has no measurement points")
    model = LogDistance(n)
    residuals = []
    for p in campaign.points:
        measured = p.mean
        predicted = predict_rssi(model, campaign.radio, p.distance)
        residuals.append(Residual(p.label, measured, predicted, measured - predicted))

    k = len(residuals)
    mae = math.fsum(abs(r.residual) for r in residuals) / k
    rmse = math.sqrt(math.fsum(r.residual ** 2 for r in residuals) / k)
    # a point whose samples are all exactly 0 dB has no defined relative error
    rel = [abs(r.residual) / abs(r.measured) for r in residuals if r.measured != 0]
    mre = math.fsum(rel) / len(rel) if rel else 0.0
    # rmse >= mae holds exactly; max() only absorbs rounding
    return FitResult(model.exponent, method, tuple(residuals), mae, max(rmse, mae), mre)


def select_best_exponent(campaign: SurveyCampaign, candidates: Sequence[float]) -> FitResult:
    """Candidate exponent with the smallest RMS error; ties go to the smaller exponent."""
    if not candidates:
        raise ValidationError("no candidate exponents given")
    if not campaign.points:
        raise DegenerateError("campaign has no measurement points")
    best = None
    for n in sorted(float(c) for c in candidates):
        fit = evaluate_exponent(campaign, n, DISCRETE)
        if best is None or fit.rmse < best.rmse:
            best = fit
    return best


def _decades_and_targets(campaign: SurveyCampaign) -> tuple[np.ndarray, np.ndarray]:
    radio = campaign.radio
    x = np.log10(np.array(campaign.distances) / radio.ref_distance)
    # the model says ref_rssi - m = 10 n x
    y = radio.ref_rssi - np.array(campaign.means)
    return x, y


def fit_exponent_least_squares(campaign: SurveyCampaign) -> FitResult:
    """Closed-form exponent minimizing squared dB error of the mean RSSI.

    With ``x = log10(d / d0)`` and ``y = erp - ref_loss - mean``, the
    objective ``sum((y - 10 n x)^2)`` is minimized by
    ``n = sum(x y) / (10 sum(x^2))``.
    """
    if len(set(campaign.distances)) < 2:
        raise DegenerateError(
            "degenerate geometry: least-squares fit needs at least 2 distinct distances")
    x, y = _decades_and_targets(campaign)
    sxx = float(x @ x)
    if sxx == 0.0:
        raise DegenerateError("degenerate geometry: every point sits at the reference distance")
    n = float(x @ y) / (10.0 * sxx)
    if not n > 0:
        raise DegenerateError(
            f"fitted exponent {n:.4g} is not positive; signal does not decay with distance")
    return evaluate_exponent(campaign, n, LEAST_SQUARES)


def grid_points(lo: float, hi: float, step: float) -> np.ndarray:
    if not (0 < lo <= hi) or not step > 0 or not all(map(math.isfinite, (lo, hi, step))):
        raise ValidationError(f"invalid grid range lo={lo}, hi={hi}, step={step}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    # strip accumulated float noise so that e.g. 5.0 is hit exactly
    return np.round(lo + step * np.arange(count), 12)


def fit_exponent_grid(campaign: SurveyCampaign, lo: float = GRID_LO, hi: float = GRID_HI,
                      step: float = GRID_STEP) -> FitResult:
    """Brute-force RMS minimization over ``{lo, lo+step, ..., hi}``.

    Evaluates every grid exponent with the forward model; the first minimum
    wins, so ties resolve to the smaller exponent regardless of platform.
    """
    if not campaign.points:
        raise DegenerateError("campaign has no measurement points")
    grid = grid_points(lo, hi, step)
    predicted = ldpl_rssi_grid(campaign.radio, campaign.distances, grid)
    err = np.sqrt(np.mean((np.array(campaign.means)[None, :] - predicted) ** 2, axis=1))
    return evaluate_exponent(campaign, float(grid[int(np.argmin(err))]), GRID)
