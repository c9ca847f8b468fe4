"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data validation error,
3 degenerate computation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from pathcal import __version__
from pathcal.calibration import GRID_HI, GRID_LO, GRID_STEP, classify_environment, fit_exponent_grid
from pathcal.errors import DegenerateError, ValidationError
from pathcal.propagation import coverage_distance
from pathcal.report import (
    DEFAULT_EXPONENTS, DEFAULT_THRESHOLD, MODES, build_report, fit_campaign,
    prediction_columns, prediction_csv, write_report,
)
from pathcal.survey import FreeSpace, LogDistance, load_campaign, load_radio_config, format_exponent

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def exponent_list(text: str) -> list[float]:
    """Parse ``"3,4,5,6"``; an empty string gives an empty list."""
    if not text.strip():
        return []
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if any(not v > 0 for v in values):
        raise argparse.ArgumentTypeError(f"exponents must be > 0: {text!r}")
    return values


def _fraction(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"threshold must be in (0, 1), got {text}")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pathcal", description="Path-loss calibration for RSSI site surveys.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_args(p):
        p.add_argument("--campaign", required=True, type=Path, help="campaign CSV file")
        p.add_argument("--config", required=True, type=Path, help="radio config JSON file")

    p = sub.add_parser("predict", help="measured means and model predictions per point")
    data_args(p)
    p.add_argument("--exponents", type=exponent_list, default=list(DEFAULT_EXPONENTS),
                   help="comma-separated LDPL exponents (default 3,4,5,6; '' for means only)")
    p.add_argument("--fspl", action="store_true", help="add a free-space column")
    p.add_argument("--out", type=Path, help="also write prediction_table.csv into this directory")

    p = sub.add_parser("fit", help="calibrate the LDPL exponent")
    data_args(p)
    p.add_argument("--mode", choices=MODES, default="discrete")
    p.add_argument("--exponents", type=exponent_list, default=list(DEFAULT_EXPONENTS),
                   help="candidates for discrete mode (default 3,4,5,6)")
    p.add_argument("--lo", type=_positive, default=GRID_LO, help="grid mode lower bound")
    p.add_argument("--hi", type=_positive, default=GRID_HI, help="grid mode upper bound")
    p.add_argument("--step", type=_positive, default=GRID_STEP, help="grid mode step")

    p = sub.add_parser("report", help="write the full evaluation to a directory")
    data_args(p)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--mode", choices=MODES, default="discrete")
    p.add_argument("--exponents", type=exponent_list, default=list(DEFAULT_EXPONENTS))
    p.add_argument("--exponent", type=_positive, help="force the comparison exponent")
    p.add_argument("--threshold", type=_fraction, default=DEFAULT_THRESHOLD)
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")

    p = sub.add_parser("coverage", help="distance at which predicted RSSI reaches a threshold")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--exponent", required=True, type=_positive)
    p.add_argument("--min-rssi", required=True, type=float)

    p = sub.add_parser("validate", help="check a campaign and config without computing anything")
    data_args(p)
    return parser


def cmd_predict(args) -> int:
    campaign = load_campaign(args.campaign, args.config)
    models = [LogDistance(n) for n in args.exponents]
    if args.fspl:
        models.append(FreeSpace())
    text = prediction_csv(campaign, prediction_columns(campaign, models))
    sys.stdout.write(text)
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "prediction_table.csv").write_text(text)
    return EXIT_OK


def cmd_fit(args) -> int:
    campaign = load_campaign(args.campaign, args.config)
    if args.mode == "discrete" and not args.exponents:
        raise UsageError("discrete mode needs at least one candidate in --exponents")
    if args.mode == "grid":
        if args.lo > args.hi:
            raise UsageError(f"--lo {args.lo:g} is above --hi {args.hi:g}")
        fit = fit_exponent_grid(campaign, args.lo, args.hi, args.step)
    else:
        fit = fit_campaign(campaign, args.mode, args.exponents)
    n = format_exponent(fit.exponent) if args.mode == "discrete" else f"{fit.exponent:.3f}"
    envs = classify_environment(fit.exponent)
    print(f"n = {n}")
    print(f"method: {fit.method}")
    print(f"rmse = {fit.rmse:.2f} dB")
    print(f"mae = {fit.mae:.2f} dB")
    print(f"mean relative error = {fit.mean_relative_error * 100:.1f}%")
    print("environment classes: "
          + (", ".join(f"{e.name} ({e.n_low:g}-{e.n_high:g})" for e in envs) or "none"))
    return EXIT_OK


def cmd_report(args) -> int:
    campaign = load_campaign(args.campaign, args.config)
    if args.mode == "discrete" and args.exponent is None and not args.exponents:
        raise UsageError("discrete mode needs at least one candidate in --exponents")
    bundle = build_report(campaign, exponents=args.exponents, mode=args.mode,
                          exponent=args.exponent, threshold=args.threshold)
    try:
        written = write_report(bundle, args.out, figures=not args.no_figures)
    except OSError as exc:
        raise UsageError(f"cannot write to output directory {args.out}: {exc}") from None
    print(f"wrote {len(written)} files to {args.out}")
    if bundle.regression is None:
        print(f"regression skipped: {bundle.regression_skipped}")
    return EXIT_OK


def cmd_coverage(args) -> int:
    radio = load_radio_config(args.config)
    d = coverage_distance(LogDistance(args.exponent), radio, args.min_rssi)
    print(f"{d:.2f} m")
    return EXIT_OK


def cmd_validate(args) -> int:
    campaign = load_campaign(args.campaign, args.config)
    print(f"ok: {campaign.name}: {len(campaign)} points x {campaign.run_count} runs, "
          f"{min(campaign.distances):g}-{max(campaign.distances):g} m")
    return EXIT_OK


COMMANDS = {
    "predict": cmd_predict,
    "fit": cmd_fit,
    "report": cmd_report,
    "coverage": cmd_coverage,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"pathcal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"pathcal: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DegenerateError as exc:
        print(f"pathcal: error: {exc}", file=sys.stderr)
        if "geometry" in str(exc):
            print("pathcal: hint: measure at least two distinct distances beyond the "
                  "reference distance, or use --mode discrete", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValidationError as exc:
        print(f"pathcal: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
