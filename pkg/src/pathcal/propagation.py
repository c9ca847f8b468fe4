"""Free-space and log-distance path loss, and RSSI prediction from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from pathcal.errors import DegenerateError, ValidationError
from pathcal.survey import FreeSpace, LogDistance, PathLossModel, RadioConfig

# 20*log10(4*pi/c) with d in km and f in GHz
FSPL_CONSTANT_DB = 92.44


@dataclass(frozen=True)
class Prediction:
    distance: float
    loss: float
    rssi: float


def _check_distance(d: float) -> float:
    d = float(d)
    if not math.isfinite(d) or d <= 0:
        raise ValidationError(f"distance must be > 0, got {d}")
    return d


def ldpl_loss(d: float, n: float, radio: RadioConfig) -> float:
    """Log-distance path loss in dB at ``d`` meters with exponent ``n``.

    ``ref_loss + 10 * n * log10(d / ref_distance)``. Distances below the
    reference distance are allowed and give a loss below ``ref_loss``.
    """
    d = _check_distance(d)
    if not math.isfinite(n) or n <= 0:
        raise ValidationError(f"propagation exponent must be > 0, got {n}")
    return radio.ref_loss + 10.0 * n * math.log10(d / radio.ref_distance)


def fspl_loss(d: float, radio: RadioConfig) -> float:
    """Free-space path loss in dB, net of antenna gains.

    Takes ``d`` in meters and converts to km internally so the 92.44 dB
    constant applies with the frequency in GHz.
    """
    d = _check_distance(d)
    d_km = d / 1000.0
    return (20.0 * math.log10(d_km) + 20.0 * math.log10(radio.frequency)
            + FSPL_CONSTANT_DB - radio.tx_gain - radio.rx_gain)


def path_loss(model: PathLossModel, radio: RadioConfig, d: float) -> float:
    if isinstance(model, LogDistance):
        return ldpl_loss(d, model.exponent, radio)
    if isinstance(model, FreeSpace):
        return fspl_loss(d, radio)
    raise TypeError(f"unknown path loss model {model!r}")


def predict_rssi(model: PathLossModel, radio: RadioConfig, d: float) -> float:
    """Received strength at ``d``: the radiated power minus the model's path loss."""
    return radio.erp - path_loss(model, radio, d)


def predict_table(model: PathLossModel, radio: RadioConfig,
                  distances: Sequence[float]) -> list[Prediction]:
    out = []
    for d in distances:
        loss = path_loss(model, radio, d)
        out.append(Prediction(distance=float(d), loss=loss, rssi=radio.erp - loss))
    return out


def coverage_distance(model: PathLossModel, radio: RadioConfig, min_rssi: float) -> float:
    """Distance in meters at which the predicted RSSI falls to ``min_rssi``.

    Only log-distance models are inverted. A threshold equal to the RSSI at
    the reference distance returns the reference distance itself.
    """
    if not isinstance(model, LogDistance):
        raise DegenerateError(f"{model.name} is not invertible in this toolkit")
    min_rssi = float(min_rssi)
    if not math.isfinite(min_rssi):
        raise ValidationError(f"min_rssi must be finite, got {min_rssi}")
    if min_rssi > radio.ref_rssi:
        raise DegenerateError(
            f"min_rssi {min_rssi:g} dB is unreachable: predicted RSSI at the reference "
            f"distance is only {radio.ref_rssi:g} dB")
    margin = radio.ref_rssi - min_rssi
    return radio.ref_distance * 10.0 ** (margin / (10.0 * model.exponent))


def ldpl_rssi_grid(radio: RadioConfig, distances: Sequence[float],
                   exponents: Sequence[float]) -> np.ndarray:
    """Vectorized log-distance RSSI, shape ``(len(exponents), len(distances))``."""
    d = np.asarray(distances, dtype=float)
    n = np.asarray(exponents, dtype=float)
    if np.any(d <= 0) or np.any(n <= 0):
        raise ValidationError("distances and exponents must be > 0")
    decades = np.log10(d / radio.ref_distance)
    return radio.erp - (radio.ref_loss + 10.0 * n[:, None] * decades[None, :])
