"""End-to-end survey report: prediction table, error tables, fit summary.

``build_report`` computes a ``ReportBundle`` in memory; ``write_report``
lays it out in a directory::

    report.txt                         human-readable summary
    summary.json                       fit, regression, environment classes, thresholds
    prediction_table.csv               measured mean + one column per model
    errors_real_vs_<model>.csv         measured mean as reference
    errors_regression_vs_<model>.csv   regression fit as reference
    series/*.csv                       plot-ready curves, one file per family
    figures/*.png                      rendered plots (optional)

Nothing written depends on wall-clock time, so repeated runs on the same
inputs give byte-identical directories.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from pathcal import __version__
from pathcal.calibration import (
    DISCRETE, EnvironmentClass, FitResult, classify_environment, evaluate_exponent,
    fit_exponent_grid, fit_exponent_least_squares, select_best_exponent,
)
from pathcal.errors import DegenerateError, ValidationError
from pathcal.metrics import ErrorTable, compare, error_table, threshold_report
from pathcal.propagation import predict_rssi
from pathcal.regression import RegressionResult, log_regression
from pathcal.survey import (
    FreeSpace, LogDistance, PathLossModel, SurveyCampaign, dump_campaign_csv, format_exponent,
    format_number,
)

DEFAULT_EXPONENTS = (3.0, 4.0, 5.0, 6.0)
DEFAULT_THRESHOLD = 0.15
MODES = ("discrete", "continuous", "grid")


def fmt_db(value: float) -> str:
    out = f"{value:.2f}"
    return "0.00" if out == "-0.00" else out


@dataclass
class ReportBundle:
    campaign: SurveyCampaign
    models: list[PathLossModel]
    prediction_table: dict[str, list[float]]
    fit: FitResult
    environments: list[EnvironmentClass]
    regression: RegressionResult | None
    regression_skipped: str | None
    error_tables: dict[str, ErrorTable]
    threshold: float
    exceeding: list[str]
    warnings: list[str] = field(default_factory=list)

    @property
    def selected_model(self) -> LogDistance:
        return LogDistance(self.fit.exponent)


def fit_campaign(campaign: SurveyCampaign, mode: str = "discrete",
                 exponents: Sequence[float] = DEFAULT_EXPONENTS) -> FitResult:
    if mode == "discrete":
        return select_best_exponent(campaign, exponents)
    if mode == "continuous":
        return fit_exponent_least_squares(campaign)
    if mode == "grid":
        return fit_exponent_grid(campaign)
    raise ValidationError(f"unknown fit mode {mode!r}; expected one of {', '.join(MODES)}")


def prediction_columns(campaign: SurveyCampaign,
                       models: Sequence[PathLossModel]) -> dict[str, list[float]]:
    return {m.name: [predict_rssi(m, campaign.radio, d) for d in campaign.distances]
            for m in models}


def build_report(campaign: SurveyCampaign, exponents: Sequence[float] = DEFAULT_EXPONENTS,
                 mode: str = "discrete", exponent: float | None = None,
                 threshold: float = DEFAULT_THRESHOLD, include_fspl: bool = True) -> ReportBundle:
    """Run the whole evaluation on ``campaign``.

    The comparison model is ``LDPL(exponent)`` when forced, otherwise the
    exponent found by ``mode``. Regression is skipped, with a reason, when the
    campaign has fewer than two distinct distances.
    """
    if not campaign.points:
        raise DegenerateError("campaign has no measurement points")
    if exponent is not None:
        fit = evaluate_exponent(campaign, exponent, DISCRETE)
    else:
        fit = fit_campaign(campaign, mode, exponents)
    selected = LogDistance(fit.exponent)

    models: list[PathLossModel] = [LogDistance(n) for n in exponents]
    if selected not in models:
        models.append(selected)
    if include_fspl:
        models.append(FreeSpace())
    table = prediction_columns(campaign, models)
    selected_values = table[selected.name]
    estimates = dict(zip(campaign.labels, selected_values))

    tables = {f"real_vs_{selected.name}": error_table(campaign, estimates)}
    regression, skipped = None, None
    try:
        regression = log_regression(list(zip(campaign.distances, campaign.means)), campaign.labels)
    except DegenerateError as exc:
        skipped = str(exc)
    if regression is not None:
        tables[f"regression_vs_{selected.name}"] = compare(
            ((f.label, f.value) for f in regression.fitted), estimates)

    _, exceeding = threshold_report(tables[f"real_vs_{selected.name}"], threshold)

    warnings = [f"{p.label} at {p.distance:g} m is closer than the reference distance "
                f"{campaign.radio.ref_distance:g} m; predictions are extrapolated"
                for p in campaign.points if p.distance < campaign.radio.ref_distance]

    return ReportBundle(
        campaign=campaign, models=models, prediction_table=table, fit=fit,
        environments=classify_environment(fit.exponent), regression=regression,
        regression_skipped=skipped, error_tables=tables, threshold=threshold,
        exceeding=exceeding, warnings=warnings,
    )


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------

def _csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def prediction_csv(campaign: SurveyCampaign, columns: dict[str, list[float]]) -> str:
    rows = [["point", "distance_m", "mean_db"] + [f"{name}_db" for name in columns]]
    for i, p in enumerate(campaign.points):
        rows.append([p.label, format_number(p.distance), fmt_db(p.mean)]
                    + [fmt_db(values[i]) for values in columns.values()])
    return _csv(rows)


def error_csv(table: ErrorTable) -> str:
    rows = [["point", "reference_db", "estimate_db", "relative_error", "percent"]]
    for r in table.rows:
        rows.append([r.label, fmt_db(r.reference), fmt_db(r.estimate),
                     f"{r.relative_error:.4f}", str(r.percent)])
    return _csv(rows)


def _fit_dict(fit: FitResult) -> dict:
    return {
        "exponent": round(fit.exponent, 6),
        "method": fit.method,
        "mae_db": round(fit.mae, 4),
        "rmse_db": round(fit.rmse, 4),
        "mean_relative_error": round(fit.mean_relative_error, 6),
    }


def summary_dict(bundle: ReportBundle) -> dict:
    reg = bundle.regression
    return {
        "campaign": bundle.campaign.name,
        "points": len(bundle.campaign),
        "runs": bundle.campaign.run_count,
        "fit": _fit_dict(bundle.fit),
        "environment_classes": [
            {"name": e.name, "n_low": e.n_low, "n_high": e.n_high} for e in bundle.environments],
        "regression": (
            {"intercept_db": round(reg.intercept, 6), "slope_db_per_decade": round(reg.slope, 6),
             "r_squared": round(reg.r_squared, 6)}
            if reg is not None else {"skipped": bundle.regression_skipped}),
        "error_tables": {
            name: {"mean_relative_error": round(t.mean_relative_error, 6),
                   "max_relative_error": round(t.max_relative_error, 6),
                   "count_below_threshold": t.count_below(bundle.threshold)}
            for name, t in bundle.error_tables.items()},
        "threshold": {"value": bundle.threshold, "count": len(bundle.exceeding),
                      "exceeding": bundle.exceeding},
        "warnings": bundle.warnings,
    }


def report_text(bundle: ReportBundle) -> str:
    c, fit = bundle.campaign, bundle.fit
    lines = [
        f"# pathcal {__version__}",
        f"campaign: {c.name} ({len(c)} points x {c.run_count} runs)",
        f"radio: erp={c.radio.erp:g} dB, ref_loss={c.radio.ref_loss:g} dB "
        f"at {c.radio.ref_distance:g} m, f={c.radio.frequency:g} GHz",
        "",
        f"selected exponent: n = {format_exponent(fit.exponent)} ({fit.method})",
        f"  rmse = {fit.rmse:.2f} dB, mae = {fit.mae:.2f} dB, "
        f"mean relative error = {fit.mean_relative_error * 100:.1f}%",
        "  environment classes: "
        + (", ".join(f"{e.name} ({e.n_low:g}-{e.n_high:g})" for e in bundle.environments) or "none"),
    ]
    if bundle.regression is not None:
        r = bundle.regression
        lines.append(f"regression: y = {r.intercept:.2f} + ({r.slope:.2f}) * log10(d), "
                     f"R^2 = {r.r_squared:.2f}")
    else:
        lines.append(f"regression: skipped ({bundle.regression_skipped})")
    lines.append("")
    for name, table in bundle.error_tables.items():
        lines.append(f"{name}: mean {table.mean_relative_error * 100:.1f}%, "
                     f"max {table.max_relative_error * 100:.1f}%")
        lines.append("  " + " ".join(f"{r.label}={r.percent}%" for r in table.rows))
    lines.append(f"points above {bundle.threshold * 100:g}% (real vs {bundle.selected_model.name}): "
                 + (", ".join(bundle.exceeding) or "none"))
    for w in bundle.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def series_files(bundle: ReportBundle) -> dict[str, str]:
    c = bundle.campaign
    means = [["point", "distance_m", "mean_db"]]
    means += [[p.label, format_number(p.distance), fmt_db(p.mean)] for p in c.points]
    models = [["distance_m"] + [f"{name}_db" for name in bundle.prediction_table]]
    for i, p in enumerate(c.points):
        models.append([format_number(p.distance)] + [fmt_db(v[i]) for v in bundle.prediction_table.values()])
    out = {
        "measured.csv": dump_campaign_csv(c),
        "means.csv": _csv(means),
        "models.csv": _csv(models),
    }
    if bundle.regression is not None:
        reg = [["point", "distance_m", "regression_db"]]
        reg += [[f.label, format_number(f.distance), fmt_db(f.value)] for f in bundle.regression.fitted]
        out["regression.csv"] = _csv(reg)
    return out


def write_report(bundle: ReportBundle, out_dir: str | Path, figures: bool = True) -> list[Path]:
    """Write every report artifact under ``out_dir``; returns the paths written."""
    out = Path(out_dir)
    (out / "series").mkdir(parents=True, exist_ok=True)
    files = {
        "report.txt": report_text(bundle),
        "summary.json": json.dumps(summary_dict(bundle), indent=2, sort_keys=True) + "\n",
        "prediction_table.csv": prediction_csv(bundle.campaign, bundle.prediction_table),
    }
    for name, table in bundle.error_tables.items():
        files[f"errors_{name}.csv"] = error_csv(table)
    for name, text in series_files(bundle).items():
        files[f"series/{name}"] = text

    written = []
    for rel, text in files.items():
        path = out / rel
        path.write_text(text)
        written.append(path)

    if figures:
        from pathcal import plotting

        fig_dir = out / "figures"
        fig_dir.mkdir(exist_ok=True)
        c = bundle.campaign
        ldpl_cols = {k: v for k, v in bundle.prediction_table.items() if k.startswith("ldpl")}
        written.append(plotting.plot_runs(c, fig_dir / "runs.png"))
        written.append(plotting.plot_models(c, ldpl_cols, fig_dir / "models.png"))
        if bundle.regression is not None:
            name = bundle.selected_model.name
            written.append(plotting.plot_regression(
                c, bundle.regression, name, bundle.prediction_table[name], fig_dir / "regression.png"))
    return written
