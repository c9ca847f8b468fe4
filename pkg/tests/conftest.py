from pathlib import Path

import numpy as np
import pytest

from pathcal.survey import MeasurementPoint, RadioConfig, SurveyCampaign, load_campaign

ROOT = Path(__file__).resolve().parent.parent
FIXTURE_CSV = ROOT / "fixtures" / "engine_room.csv"
FIXTURE_CONFIG = ROOT / "fixtures" / "engine_room.json"

# a radio whose predictions stay well below 0 dB for every test geometry
SYNTH_RADIO = RadioConfig(erp=0.0, ref_loss=40.0, ref_distance=1.0, frequency=2.4)

_acceptance_results = []


def synthetic_campaign(n, distances=None, radio=SYNTH_RADIO, sigma=0.0, runs=5, rng=None):
    """Campaign drawn from the log-distance model, optionally with Gaussian shadowing."""
    if distances is None:
        distances = [7, 13, 19, 25, 31, 42, 48, 54, 60, 66, 78, 84, 90, 96, 102, 113, 119,
                     125, 131, 137]
    d = np.asarray(distances, dtype=float)
    clean = radio.erp - radio.ref_loss - 10.0 * n * np.log10(d / radio.ref_distance)
    points = []
    for i, (di, ci) in enumerate(zip(d, clean)):
        noise = rng.normal(0.0, sigma, runs) if sigma else np.zeros(runs)
        points.append(MeasurementPoint(f"S{i + 1}", di, tuple(ci + noise)))
    return SurveyCampaign("synthetic", radio, tuple(points))


@pytest.fixture(scope="session")
def fixture_campaign():
    return load_campaign(FIXTURE_CSV, FIXTURE_CONFIG)


@pytest.fixture(scope="session")
def paper_radio(fixture_campaign):
    return fixture_campaign.radio


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        _acceptance_results.append((marker.args[0], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in _acceptance_results:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}")
