import csv
import io
import json

import pytest

from _paper import LDPL, MEANS
from conftest import FIXTURE_CONFIG, FIXTURE_CSV, synthetic_campaign
from pathcal.cli import main
from pathcal.survey import PAPER_RADIO, dump_campaign_csv, dump_radio_config

DATA = ["--campaign", str(FIXTURE_CSV), "--config", str(FIXTURE_CONFIG)]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_predict_reproduces_table(capsys):
    code, out, _ = run(capsys, "predict", *DATA, "--exponents", "3,4,5,6")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 20
    for row in rows:
        assert float(row["mean_db"]) == pytest.approx(MEANS[row["point"]], abs=0.005)
        for n in (3, 4, 5, 6):
            assert float(row[f"ldpl{n}_db"]) == pytest.approx(LDPL[n][row["point"]], abs=0.011)
    assert rows[0]["ldpl3_db"] == "-25.35"
    assert rows[-1]["ldpl6_db"] == "-128.20"


def test_predict_means_only(capsys, tmp_path):
    code, out, _ = run(capsys, "predict", *DATA, "--exponents", "", "--out", str(tmp_path))
    assert code == 0
    assert out.splitlines()[0] == "point,distance_m,mean_db"
    assert (tmp_path / "prediction_table.csv").read_text() == out


def test_predict_fspl_column(capsys):
    _, out, _ = run(capsys, "predict", *DATA, "--exponents", "4", "--fspl")
    assert out.splitlines()[1] == "P1,7,-45.20,-33.80,-36.95"


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "predict", "--campaign", str(tmp_path / "x.csv"),
                       "--config", str(FIXTURE_CONFIG))
    assert code == 2
    assert "file not found" in err


def test_bad_data_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("point,distance_m,run,rssi_db\nP1,7,1,-45\nP1,7,2,-44\nP2,9,1,-50\n")
    code, _, err = run(capsys, "validate", "--campaign", str(bad), "--config", str(FIXTURE_CONFIG))
    assert code == 2
    assert "non-uniform run count" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fit", *DATA, "--mode", "bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", *DATA)
    assert code == 0
    assert out == "ok: engine_room: 20 points x 5 runs, 7-137 m\n"


def test_fit_discrete(capsys):
    code, out, _ = run(capsys, "fit", *DATA, "--mode", "discrete", "--exponents", "3,4,5,6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n = 4"
    assert "Building with obstacles (4-6)" in out
    assert "rmse = 5.01 dB" in out


@pytest.mark.parametrize("mode", ["continuous", "grid"])
def test_fit_continuous_fixture(capsys, mode):
    code, out, _ = run(capsys, "fit", *DATA, "--mode", mode)
    assert code == 0
    assert out.splitlines()[0] == "n = 3.899"


def test_fit_synthetic_continuous(capsys, tmp_path):
    c = synthetic_campaign(5, radio=PAPER_RADIO)
    (tmp_path / "s.csv").write_text(dump_campaign_csv(c))
    (tmp_path / "s.json").write_text(dump_radio_config(c.radio))
    code, out, _ = run(capsys, "fit", "--campaign", str(tmp_path / "s.csv"),
                       "--config", str(tmp_path / "s.json"), "--mode", "continuous")
    assert code == 0
    assert out.splitlines()[0] == "n = 5.000"


def test_fit_degenerate(capsys, tmp_path):
    (tmp_path / "one.csv").write_text("point,distance_m,run,rssi_db\nA,10,1,-40\n")
    code, _, err = run(capsys, "fit", "--campaign", str(tmp_path / "one.csv"),
                       "--config", str(FIXTURE_CONFIG), "--mode", "continuous")
    assert code == 3
    assert "degenerate geometry" in err and "hint" in err


def test_fit_grid_bad_range(capsys):
    code, _, err = run(capsys, "fit", *DATA, "--mode", "grid", "--lo", "5", "--hi", "4")
    assert code == 1


@pytest.mark.parametrize("n, min_rssi, expected", [
    ("3", "-60", "100.00 m"),
    ("4", "0", "1.00 m"),
    # the published -85.47 is 10*4*log10(137) rounded to 2 decimals
    ("4", "-85.4688", "137.00 m"),
])
def test_coverage(capsys, n, min_rssi, expected):
    code, out, _ = run(capsys, "coverage", "--config", str(FIXTURE_CONFIG),
                       "--exponent", n, "--min-rssi", min_rssi)
    assert code == 0
    assert out.strip() == expected


def test_coverage_published_threshold(capsys):
    _, out, _ = run(capsys, "coverage", "--config", str(FIXTURE_CONFIG),
                    "--exponent", "4", "--min-rssi", "-85.47")
    assert float(out.split()[0]) == pytest.approx(137.0, abs=0.04)


def test_coverage_unreachable(capsys):
    code, _, err = run(capsys, "coverage", "--config", str(FIXTURE_CONFIG),
                       "--exponent", "4", "--min-rssi", "3")
    assert code == 3
    assert "unreachable" in err


def test_report_command(capsys, tmp_path):
    code, out, _ = run(capsys, "report", *DATA, "--out", str(tmp_path / "r"))
    assert code == 0
    summary = json.loads((tmp_path / "r" / "summary.json").read_text())
    assert summary["threshold"]["exceeding"] == ["P1", "P2"]
    assert summary["regression"]["r_squared"] == pytest.approx(0.91, abs=0.01)


def test_report_forced_exponent(capsys, tmp_path):
    code, _, _ = run(capsys, "report", *DATA, "--out", str(tmp_path), "--exponent", "6",
                     "--no-figures")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO((tmp_path / "errors_real_vs_ldpl6.csv").read_text())))
    assert rows[-1]["estimate_db"] == "-128.20"
    assert not (tmp_path / "figures").exists()


def test_report_single_point(capsys, tmp_path):
    (tmp_path / "one.csv").write_text("point,distance_m,run,rssi_db\nA,10,1,-40\n")
    code, out, _ = run(capsys, "report", "--campaign", str(tmp_path / "one.csv"),
                       "--config", str(FIXTURE_CONFIG), "--out", str(tmp_path / "r"))
    assert code == 0
    assert "regression skipped" in out


def test_report_unwritable_out(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, err = run(capsys, "report", *DATA, "--out", str(blocker / "sub"))
    assert code == 1
    assert "cannot write" in err
