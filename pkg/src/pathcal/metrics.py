"""Relative-error tables between measured, regressed and predicted RSSI."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping

from pathcal.errors import ValidationError
from pathcal.survey import SurveyCampaign


def relative_error(reference: float, estimate: float) -> float:
    """``|reference - estimate| / |reference|`` as a fraction."""
    if reference == 0:
        raise ValidationError("relative error is undefined for a zero reference")
    return abs(reference - estimate) / abs(reference)


def percent(fraction: float) -> int:
    """Integer percentage, rounding halves away from zero."""
    return int(Decimal(repr(fraction * 100.0)).quantize(Decimal(1), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class ErrorRow:
    label: str
    reference: float
    estimate: float
    relative_error: float

    @property
    def percent(self) -> int:
        return percent(self.relative_error)


@dataclass(frozen=True)
class ErrorTable:
    rows: tuple[ErrorRow, ...]

    @property
    def mean_relative_error(self) -> float:
        if not self.rows:
            return 0.0
        return math.fsum(r.relative_error for r in self.rows) / len(self.rows)

    @property
    def max_relative_error(self) -> float:
        return max((r.relative_error for r in self.rows), default=0.0)

    def count_below(self, threshold: float) -> int:
        return sum(1 for r in self.rows if r.relative_error < threshold)

    def __len__(self):
        return len(self.rows)


def _as_mapping(values: Mapping[str, float] | Iterable[tuple[str, float]]) -> dict[str, float]:
    return dict(values.items() if isinstance(values, Mapping) else values)


def compare(references: Iterable[tuple[str, float]],
            estimates: Mapping[str, float] | Iterable[tuple[str, float]]) -> ErrorTable:
    """Row per reference label, in reference order, against the matching estimate."""
    est = _as_mapping(estimates)
    rows = []
    for label, ref in references:
        if label not in est:
            raise ValidationError(f"no estimate for point {label}")
        rows.append(ErrorRow(label, ref, est[label], relative_error(ref, est[label])))
    return ErrorTable(tuple(rows))


def error_table(campaign: SurveyCampaign,
                estimates: Mapping[str, float] | Iterable[tuple[str, float]]) -> ErrorTable:
    """Relative error of ``estimates`` against each point's measured mean."""
    return compare(((p.label, p.mean) for p in campaign.points), estimates)


def threshold_report(table: ErrorTable, threshold: float) -> tuple[int, list[str]]:
    """Count and labels of rows whose relative error exceeds ``threshold``."""
    if not 0 < threshold < 1:
        raise ValidationError(f"threshold must be in (0, 1), got {threshold}")
    over = [r.label for r in table.rows if r.relative_error > threshold]
    return len(over), over
