"""End-to-end CLI runs through main(argv)."""
import json
import math

import pytest

from src.cli import compare_curves, main
from src.observability.metrics import metrics_collector
from src.pairing.curve_io import read_table
from src.spectrum import dump_spectrum, lorentzian_spectrum


def _envelope(capsys):
    lines = [line for line in capsys.readouterr().err.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


def test_predict_reference_media(tmp_path):
    out = tmp_path / "out"
    code = main(["predict", "--reference", "water", "acetonitrile", "--grid", "1000:3600:200",
                 "--rank-at", "2600", "--out", str(out)])
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == ["acetonitrile.csv", "ranking.csv", "water.csv"]

    first_line = (out / "water.csv").read_text().splitlines()[0]
    assert first_line.startswith("# ")
    header = json.loads(first_line[2:])
    assert header["command"] == "predict"
    assert "out" not in header["config"] and "workers" not in header["config"]

    _, ranking = read_table(out / "ranking.csv")
    assert [row["medium"] for row in ranking] == ["water", "acetonitrile"]


def test_predict_is_deterministic(tmp_path, spectrum_file):
    args = ["predict", "--spectrum", str(spectrum_file), "--grid", "900:1100:50", "--band-width", "20"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b"), "--workers", "2"]) == 0
    assert main(args + ["--out", str(tmp_path / "c"), "--format", "json"]) == 0
    a = (tmp_path / "a" / "line.csv").read_bytes()
    assert a == (tmp_path / "b" / "line.csv").read_bytes()

    payload = json.loads((tmp_path / "c" / "line.json").read_text())
    points = payload["curves"][0]["points"]
    assert [p["shift_cm1"] for p in points] == [900.0, 950.0, 1000.0, 1050.0, 1100.0]


def test_predict_without_inputs(tmp_path, capsys):
    assert main(["predict", "--grid", "1000:2000:100", "--out", str(tmp_path)]) == 2
    envelope = _envelope(capsys)
    assert envelope["command"] == "predict"
    assert envelope["error"] == "ConfigError"
    assert metrics_collector.get_aggregated_stats()["failed_runs"] == 1


def test_bad_file_is_skipped(tmp_path, spectrum_file):
    bad = tmp_path / "broken.csv"
    bad.write_text("shift,intensity\n100,1\nabc,2\n")
    code = main(["predict", "--spectrum", str(bad), str(spectrum_file),
                 "--grid", "900:1100:100", "--band-width", "20", "--out", str(tmp_path / "out")])
    assert code == 0
    assert (tmp_path / "out" / "line.csv").is_file()
    assert not (tmp_path / "out" / "broken.csv").exists()


def test_bad_grid(tmp_path, capsys):
    assert main(["predict", "--reference", "water", "--grid", "2000:1000:10", "--out", str(tmp_path)]) == 2
    assert _envelope(capsys)["error"] == "ConfigError"
    assert main(["predict", "--reference", "water", "--grid", "abc", "--out", str(tmp_path)]) == 2


def test_simulate_rejects_small_truncation(tmp_path, capsys):
    code = main(["simulate", "--grid", "1630:1650:10", "--t1", "0.5", "--n-max", "1", "--out", str(tmp_path)])
    assert code == 2
    assert "n_max" in _envelope(capsys)["detail"]


def test_simulate_without_coupling(tmp_path):
    code = main(["simulate", "--grid", "1630:1650:10", "--t1", "0.5", "--g-s", "0", "--g-as", "0",
                 "--n-max", "2", "--pulse-duration", "1", "--out", str(tmp_path)])
    assert code == 0
    _, rows = read_table(tmp_path / "scan.csv")
    assert len(rows) == 3
    assert all(row["flags"] == ["no_pair_generation"] for row in rows)
    assert all(row["g2_raw"] == 1.0 for row in rows)


def test_cs_check_nonclassical(tmp_path):
    assert main(["cs-check", "--g2", "100", "2", "2", "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "cs_check.json").read_text())
    assert report["cauchy_schwarz"]["nonclassical"] is True
    assert report["g2"] == {"asas": 2.0, "s_as": 100.0, "ss": 2.0}


def test_counts_mixture_is_seeded(tmp_path):
    args = ["counts", "--windows", "200000", "--seed", "7"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    a = (tmp_path / "a" / "counts.json").read_text()
    assert a == (tmp_path / "b" / "counts.json").read_text()
    report = json.loads(a)
    assert report["source"] == "classical_mixture"
    verdict = report["cauchy_schwarz"]
    assert verdict["violation_ratio"] <= 1.0 + 4 * verdict["ratio_stderr"]


def test_counts_needs_a_source(tmp_path):
    assert main(["counts", "--out", str(tmp_path)]) == 2


def test_compare_disjoint_grids(tmp_path, capsys, spectrum_file):
    assert main(["predict", "--spectrum", str(spectrum_file), "--grid", "900:1000:50",
                 "--band-width", "20", "--out", str(tmp_path)]) == 0
    assert main(["simulate", "--grid", "1640:1660:10", "--t1", "0.5", "--n-max", "2",
                 "--pulse-duration", "1", "--out", str(tmp_path)]) == 0
    code = main(["compare", "--predict", str(tmp_path / "line.csv"), "--simulate", str(tmp_path / "scan.csv"),
                 "--out", str(tmp_path)])
    assert code == 2
    assert _envelope(capsys)["error"] == "GridMismatchError"


def _row(g2, regime="virtual", flags=()):
    return {"g2_raw": g2, "regime": regime, "flags": list(flags)}


def test_compare_curves_normalizes_at_reference():
    predicted = {1650.0: _row(5.0), 1660.0: _row(10.0), 1670.0: _row(20.0), 1640.0: _row(1.5)}
    simulated = {
        1640.0: _row(300.0, regime="near_resonance"),
        1650.0: _row(50.0),
        1660.0: _row(101.0),
        1670.0: _row(200.0),
    }
    report = compare_curves(predicted, simulated, None, 0.05)
    assert report["reference_shift"] == 1650.0
    assert report["n_included"] == 3
    assert report["passed"]
    assert report["max_rel_diff"] == pytest.approx(1 / 101)

    resonance = report["points"][0]
    assert resonance["shift_cm1"] == 1640.0 and not resonance["included"]


def test_compare_curves_reports_failures():
    predicted = {1650.0: _row(5.0), 1660.0: _row(20.0), 1670.0: _row(math.nan, flags=("undefined",))}
    simulated = {1650.0: _row(5.0), 1660.0: _row(10.0), 1670.0: _row(3.0)}
    report = compare_curves(predicted, simulated, 1650.0, 0.05)
    assert not report["passed"]
    assert report["max_rel_diff"] == pytest.approx(1.0)
    assert report["n_included"] == 2
    assert not report["points"][-1]["included"]


@pytest.mark.slow
def test_compare_single_line_against_scan(tmp_path):
    spectrum = dump_spectrum(lorentzian_spectrum(1640.0, 2.0, step=0.25), tmp_path / "mode.csv")
    grid = "1652:1670:6"
    assert main(["predict", "--spectrum", str(spectrum), "--grid", grid, "--band-width", "1",
                 "--temp", "0", "--out", str(tmp_path)]) == 0
    assert main(["simulate", "--nu", "1640", "--grid", grid, "--t1", "0.5", "--temp", "0",
                 "--n-max", "2", "--out", str(tmp_path)]) == 0
    assert main(["compare", "--predict", str(tmp_path / "mode.csv"), "--simulate", str(tmp_path / "scan.csv"),
                 "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "compare.json").read_text())
    assert report["passed"] is True
    assert report["comparisons"][0]["n_included"] == 4


def test_malformed_files_are_skipped(tmp_path, spectrum_file, caplog):
    not_a_list = tmp_path / "points.json"
    not_a_list.write_text(json.dumps({"medium": "points", "points": 5}))
    warm = tmp_path / "warm.json"
    warm.write_text(json.dumps({"temperature_K": "warm", "points": [[900 + i, 1.0] for i in range(12)]}))
    binary = tmp_path / "binary.csv"
    binary.write_bytes(b"shift,intensity\n100,1\n\xff\xfe,2\n")

    code = main(["predict", "--spectrum", str(not_a_list), str(warm), str(binary), str(spectrum_file),
                 "--grid", "900:1100:100", "--band-width", "20", "--out", str(tmp_path / "out")])
    assert code == 0
    assert sorted(p.name for p in (tmp_path / "out").iterdir()) == ["line.csv"]
    skipped = [r.getMessage() for r in caplog.records if r.getMessage().startswith("[WARN] Skipping")]
    assert len(skipped) == 3
    assert any("not valid UTF-8" in message for message in skipped)


def test_predict_incoherent(tmp_path, spectrum_file):
    args = ["predict", "--spectrum", str(spectrum_file), "--grid", "900:1100:50", "--band-width", "40"]
    assert main(args + ["--out", str(tmp_path / "coherent")]) == 0
    assert main(args + ["--incoherent", "--out", str(tmp_path / "incoherent")]) == 0

    text = (tmp_path / "incoherent" / "line.csv").read_text()
    header = json.loads(text.splitlines()[0][2:])
    assert header["config"]["incoherent"] is True
    _, rows = read_table(tmp_path / "incoherent" / "line.csv")
    assert len(rows) == 5
    assert text != (tmp_path / "coherent" / "line.csv").read_text()


def test_simulate_step_too_large_exits_numerical(tmp_path, capsys):
    code = main(["simulate", "--grid", "1630:1650:10", "--t1", "0.5", "--n-max", "2",
                 "--pulse-duration", "1", "--dt", "100", "--out", str(tmp_path)])
    assert code == 3
    envelope = _envelope(capsys)
    assert envelope["error"] == "StepSizeError"
    assert envelope["command"] == "simulate"
    assert not (tmp_path / "scan.csv").exists()
