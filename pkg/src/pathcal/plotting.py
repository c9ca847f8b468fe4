"""Matplotlib figures for survey reports.

Figures are built with the object-oriented ``Figure`` API (no pyplot global
state) and saved without a Software tag, so identical inputs produce
byte-identical PNG files.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from pathcal.regression import RegressionResult
from pathcal.survey import SurveyCampaign

DPI = 100
_PNG_METADATA = {"Software": None}


def _new_figure(nrows: int = 1, height: float = 4.0) -> tuple[Figure, np.ndarray]:
    fig = Figure(figsize=(7.0, height), dpi=DPI, layout="constrained")
    axes = fig.subplots(nrows=nrows, ncols=1, squeeze=False)[:, 0]
    return fig, axes


def _save(fig: Figure, path: Path) -> Path:
    fig.savefig(path, format="png", dpi=DPI, metadata=_PNG_METADATA)
    return path


def _style(ax, xlabel="Distance (m)", ylabel="Signal strength (dB)"):
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8, loc="best")


def plot_runs(campaign: SurveyCampaign, path: Path) -> Path:
    """Every test run and the per-point mean against distance."""
    fig, (ax,) = _new_figure()
    d = np.array(campaign.distances)
    samples = np.array([p.samples for p in campaign.points])
    for run in range(campaign.run_count):
        ax.plot(d, samples[:, run], marker="o", ms=3, lw=0.8, alpha=0.7, label=f"Run {run + 1}")
    ax.plot(d, campaign.means, color="k", lw=2, marker="s", ms=4, label="Mean")
    ax.set_title(f"{campaign.name}: measured signal strength per run")
    _style(ax)
    return _save(fig, path)


def plot_models(campaign: SurveyCampaign, columns: dict[str, list[float]], path: Path) -> Path:
    """Measured means against each model's predicted RSSI column."""
    fig, (ax,) = _new_figure()
    d = np.array(campaign.distances)
    ax.plot(d, campaign.means, color="k", lw=2, marker="s", ms=4, label="Measured mean")
    for name, values in columns.items():
        ax.plot(d, values, marker=".", lw=1, label=name.upper())
    ax.set_title(f"{campaign.name}: measured vs predicted signal strength")
    _style(ax)
    return _save(fig, path)


def plot_regression(campaign: SurveyCampaign, reg: RegressionResult,
                    model_name: str, model_values: list[float], path: Path) -> Path:
    """Regression curve against the selected model, linear and log distance axes."""
    fig, axes = _new_figure(nrows=2, height=7.0)
    d = np.array(campaign.distances)
    dense = np.geomspace(d.min(), d.max(), 200)
    curve = reg.intercept + reg.slope * np.log10(dense)
    for ax, scale in zip(axes, ("linear", "log")):
        ax.scatter(d, campaign.means, s=14, color="k", zorder=3, label="Measured mean")
        ax.plot(dense, curve, color="tab:red",
                label=f"Log regression (R$^2$={reg.r_squared:.2f})")
        ax.plot(d, model_values, color="tab:blue", marker=".", lw=1, label=model_name.upper())
        ax.set_xscale(scale)
        _style(ax)
    axes[0].set_title(f"{campaign.name}: logarithmic regression and {model_name.upper()}")
    return _save(fig, path)
