"""Radio configuration, survey campaigns and their on-disk formats.

Campaign data is comma-separated with one row per (point, run) sample::

    point,distance_m,run,rssi_db
    P1,7,1,-45

Radio configuration is a JSON object with the keys listed in ``CONFIG_KEYS``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from pathcal.errors import ValidationError

CAMPAIGN_HEADER = ("point", "distance_m", "run", "rssi_db")

# config key -> (RadioConfig field, default or None when required)
CONFIG_KEYS = {
    "erp_db": ("erp", None),
    "ref_loss_db": ("ref_loss", None),
    "ref_distance_m": ("ref_distance", 1.0),
    "frequency_ghz": ("frequency", 2.4),
    "tx_gain_dbi": ("tx_gain", 0.0),
    "rx_gain_dbi": ("rx_gain", 0.0),
}


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class RadioConfig:
    """Transmitter-side parameters.

    ``erp`` and ``ref_loss`` are in dB on the same relative scale as the
    campaign's RSSI readings; ``ref_distance`` in meters, ``frequency`` in GHz,
    antenna gains in dBi.
    """

    erp: float = 20.0
    ref_loss: float = 20.0
    ref_distance: float = 1.0
    frequency: float = 2.4
    tx_gain: float = 0.0
    rx_gain: float = 0.0

    def __post_init__(self):
        for name in ("erp", "ref_loss", "ref_distance", "frequency", "tx_gain", "rx_gain"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        if self.ref_distance <= 0:
            raise ValidationError(f"ref_distance must be > 0, got {self.ref_distance}")
        if self.frequency <= 0:
            raise ValidationError(f"frequency must be > 0, got {self.frequency}")

    @property
    def ref_rssi(self) -> float:
        """Predicted received strength at the reference distance."""
        return self.erp - self.ref_loss


# 20 dB AP, 20 dB loss at 1 m, 2.4 GHz, no antenna gain terms
PAPER_RADIO = RadioConfig()


@dataclass(frozen=True)
class MeasurementPoint:
    label: str
    distance: float
    samples: tuple[float, ...]

    def __post_init__(self):
        if not self.label:
            raise ValidationError("point label must be non-empty")
        distance = float(self.distance)
        if not math.isfinite(distance) or distance <= 0:
            raise ValidationError(f"{self.label}: distance must be > 0, got {self.distance}")
        object.__setattr__(self, "distance", distance)
        samples = tuple(float(s) for s in self.samples)
        if not samples:
            raise ValidationError(f"{self.label}: no samples")
        for s in samples:
            if not math.isfinite(s):
                raise ValidationError(f"{self.label}: non-finite RSSI {s!r}")
            if s > 0:
                raise ValidationError(f"{self.label}: RSSI {s} is above the 0 dB reference")
        object.__setattr__(self, "samples", samples)

    @property
    def mean(self) -> float:
        return point_mean(self)


def point_mean(point: MeasurementPoint) -> float:
    """Arithmetic mean of the point's RSSI samples, in dB."""
    return math.fsum(point.samples) / len(point.samples)


@dataclass(frozen=True)
class SurveyCampaign:
    """A validated measurement campaign; points are kept sorted by distance."""

    name: str
    radio: RadioConfig
    points: tuple[MeasurementPoint, ...] = field(default_factory=tuple)

    def __post_init__(self):
        points = tuple(self.points)
        labels = [p.label for p in points]
        dupes = sorted({lbl for lbl in labels if labels.count(lbl) > 1})
        if dupes:
            raise ValidationError(f"duplicate point labels: {', '.join(dupes)}")
        runs = {len(p.samples) for p in points}
        if len(runs) > 1:
            detail = ", ".join(f"{p.label}={len(p.samples)}" for p in points)
            raise ValidationError(f"non-uniform run count across points ({detail})")
        # stable sort keeps input order among equal distances
        object.__setattr__(self, "points", tuple(sorted(points, key=lambda p: p.distance)))

    def __len__(self):
        return len(self.points)

    @property
    def labels(self) -> list[str]:
        return [p.label for p in self.points]

    @property
    def distances(self) -> list[float]:
        return [p.distance for p in self.points]

    @property
    def means(self) -> list[float]:
        return [point_mean(p) for p in self.points]

    @property
    def run_count(self) -> int:
        return len(self.points[0].samples) if self.points else 0

    def point(self, label: str) -> MeasurementPoint:
        for p in self.points:
            if p.label == label:
                return p
        raise KeyError(label)


@dataclass(frozen=True)
class FreeSpace:
    """Free-space (Friis) path loss."""

    @property
    def name(self) -> str:
        return "fspl"


@dataclass(frozen=True)
class LogDistance:
    """Log-distance path loss with propagation exponent ``exponent``."""

    exponent: float

    def __post_init__(self):
        n = float(self.exponent)
        if not math.isfinite(n) or n <= 0:
            raise ValidationError(f"propagation exponent must be finite and > 0, got {self.exponent}")
        object.__setattr__(self, "exponent", n)

    @property
    def name(self) -> str:
        return f"ldpl{format_exponent(self.exponent)}"


PathLossModel = FreeSpace | LogDistance


def format_exponent(n: float) -> str:
    """Compact exponent text: ``4`` for 4.0, ``3.899`` for 3.8987..."""
    return f"{n:.3f}".rstrip("0").rstrip(".")


# --------------------------------------------------------------------------
# Parsing and serialization
# --------------------------------------------------------------------------

def parse_radio_config(text: str) -> RadioConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"radio config is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ValidationError("radio config must be a JSON object")
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise ValidationError(f"unknown radio config keys: {', '.join(unknown)}")
    kwargs = {}
    for key, (attr, default) in CONFIG_KEYS.items():
        if key in raw:
            value = raw[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f"radio config key {key!r} must be a number, got {value!r}")
            kwargs[attr] = value
        elif default is None:
            raise ValidationError(f"radio config missing required key {key!r}")
        else:
            kwargs[attr] = default
    return RadioConfig(**kwargs)


def dump_radio_config(radio: RadioConfig) -> str:
    data = {key: getattr(radio, attr) for key, (attr, _) in CONFIG_KEYS.items()}
    return json.dumps(data, indent=2) + "\n"


def _parse_rows(data_text: str) -> list[tuple[str, float, int, float]]:
    reader = csv.reader(io.StringIO(data_text))
    header = next(reader, None)
    if header is None:
        raise ValidationError("no measurement points (empty data file)")
    header = tuple(h.strip() for h in header)
    if header != CAMPAIGN_HEADER:
        raise ValidationError(
            f"bad header {','.join(header)!r}, expected {','.join(CAMPAIGN_HEADER)!r}")

    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise ValidationError(f"row {lineno}: expected 4 fields, got {len(row)}")
        label, dist, run, rssi = (c.strip() for c in row)
        if not label:
            raise ValidationError(f"row {lineno}: empty point label")
        try:
            distance = float(dist)
            run_index = int(run)
            value = float(rssi)
        except ValueError:
            raise ValidationError(f"row {lineno}: malformed row {','.join(row)!r}") from None
        if not math.isfinite(distance) or distance <= 0:
            raise ValidationError(f"row {lineno}: distance must be > 0, got {dist}")
        if not math.isfinite(value):
            raise ValidationError(f"row {lineno}: non-finite RSSI {rssi}")
        if value > 0:
            raise ValidationError(f"row {lineno}: RSSI {rssi} is above the 0 dB reference")
        rows.append((label, distance, run_index, value))
    return rows


def ingest_campaign(config_text: str, data_text: str, name: str = "campaign") -> SurveyCampaign:
    """Parse a radio config and campaign CSV into a validated campaign."""
    radio = parse_radio_config(config_text)
    rows = _parse_rows(data_text)
    if not rows:
        raise ValidationError("no measurement points")

    distances: dict[str, float] = {}
    runs: dict[str, dict[int, float]] = {}
    for label, distance, run, value in rows:
        if label in distances and distances[label] != distance:
            raise ValidationError(
                f"point {label} has conflicting distances {distances[label]:g} and {distance:g}")
        distances[label] = distance
        per_point = runs.setdefault(label, {})
        if run in per_point:
            raise ValidationError(f"duplicate (point, run) pair ({label}, {run})")
        per_point[run] = value

    points = [
        MeasurementPoint(label, distances[label], tuple(v for _, v in sorted(runs[label].items())))
        for label in distances
    ]
    return SurveyCampaign(name=name, radio=radio, points=tuple(points))


def format_number(value: float) -> str:
    # shortest repr that parses back to the same float; integers without ".0"
    return str(int(value)) if value.is_integer() and abs(value) < 1e15 else repr(value)


def dump_campaign_csv(campaign: SurveyCampaign) -> str:
    """Serialize campaign samples; the inverse of the data half of ``ingest_campaign``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CAMPAIGN_HEADER)
    for p in campaign.points:
        for run, value in enumerate(p.samples, start=1):
            writer.writerow([p.label, format_number(p.distance), run, format_number(value)])
    return buf.getvalue()


def load_campaign(campaign_path: str | Path, config_path: str | Path) -> SurveyCampaign:
    campaign_path, config_path = Path(campaign_path), Path(config_path)
    for path in (campaign_path, config_path):
        if not path.is_file():
            raise FileNotFoundError(f"file not found: {path}")
    return ingest_campaign(config_path.read_text(), campaign_path.read_text(), name=campaign_path.stem)


def load_radio_config(config_path: str | Path) -> RadioConfig:
    path = Path(config_path)
    if not path.is_file():
        raise FileNotFoundError(f"file not found: {path}")
    return parse_radio_config(path.read_text())

