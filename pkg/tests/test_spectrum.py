"""Spectrum ingestion, validation, resampling and mode discretization."""
import json

import numpy as np
import pytest

from src.exceptions import (
    BandOutsideSupportError,
    ConfigError,
    EmptyModeSetError,
    SpectrumParseError,
    SpectrumValidationError,
)
from src.pairing.models import FilterBand
from src.spectrum import (
    RamanSpectrum,
    UniformGrid,
    available_media,
    band_integral,
    discretize_modes,
    dump_spectrum,
    load_spectrum,
    resample,
)


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def _flat(n=20, step=5.0, start=100.0, value=1.0, name="flat"):
    shifts = start + step * np.arange(n)
    return RamanSpectrum(name, shifts, np.full(n, value))


def test_load_csv_with_header_and_comments(tmp_path):
    rows = "\n".join(f"{100 + 10 * i},{i + 1}" for i in range(10))
    path = _write(tmp_path / "ethanol.csv", "# exported\nshift_cm1,intensity\n" + rows + "\n")
    spectrum = load_spectrum(path)
    assert spectrum.medium_name == "ethanol"
    assert len(spectrum.shifts) == 10
    assert spectrum.peak == 1.0
    assert spectrum.intensities[0] == pytest.approx(0.1)


def test_load_csv_crlf(tmp_path):
    rows = "\r\n".join(f"{100 + 10 * i},{i + 1}" for i in range(10))
    path = tmp_path / "crlf.csv"
    path.write_bytes(("shift,intensity\r\n" + rows + "\r\n").encode("utf-8"))
    assert len(load_spectrum(path).shifts) == 10


def test_load_json_metadata(tmp_path):
    payload = {
        "medium": "benzene",
        "temperature_K": 77,
        "excitation_power_mW": 12.5,
        "points": [[200 + 5 * i, float(i % 4)] for i in range(12)],
    }
    path = _write(tmp_path / "b.json", json.dumps(payload))
    spectrum = load_spectrum(path)
    assert spectrum.medium_name == "benzene"
    assert spectrum.temperature_k == 77
    assert spectrum.excitation_power_mw == 12.5


def test_parse_error_reports_row(tmp_path):
    rows = [f"{100 + i},{1.0}" for i in range(10)]
    rows[3] = "103,abc"
    path = _write(tmp_path / "bad.csv", "\n".join(rows))
    with pytest.raises(SpectrumParseError) as info:
        load_spectrum(path)
    assert info.value.row == 4
    assert "row 4" in str(info.value)


def test_validation_errors():
    shifts = np.arange(10, dtype=float) + 100
    with pytest.raises(SpectrumValidationError) as info:
        RamanSpectrum("x", np.r_[shifts[:5], shifts[3], shifts[6:]], np.ones(10))
    assert info.value.row == 6

    intensities = np.ones(10)
    intensities[2] = -0.5
    with pytest.raises(SpectrumValidationError) as info:
        RamanSpectrum("x", shifts, intensities)
    assert info.value.row == 3

    with pytest.raises(SpectrumValidationError):
        RamanSpectrum("x", shifts[:5], np.ones(5))


def test_zero_spectrum_loads_but_has_no_modes(tmp_path):
    rows = "\n".join(f"{100 + i},0" for i in range(10))
    spectrum = load_spectrum(_write(tmp_path / "dark.csv", rows))
    assert spectrum.peak == 0
    with pytest.raises(EmptyModeSetError):
        discretize_modes(spectrum)


def test_dump_then_load_keeps_floats(tmp_path, single_line):
    for fmt in ("csv", "json"):
        path = dump_spectrum(single_line, tmp_path / f"line.{fmt}")
        loaded = load_spectrum(path, normalize=False)
        np.testing.assert_array_equal(loaded.shifts, single_line.shifts)
        np.testing.assert_array_equal(loaded.intensities, single_line.intensities)


def test_unknown_format(tmp_path):
    with pytest.raises(ConfigError):
        load_spectrum(_write(tmp_path / "s.txt", "1,2"))


def test_uniform_grid():
    grid = UniformGrid.parse("1000:1100:25")
    np.testing.assert_allclose(grid.values(), [1000, 1025, 1050, 1075, 1100])
    with pytest.raises(ConfigError):
        UniformGrid.parse("1100:1000:25")
    with pytest.raises(ConfigError):
        UniformGrid.parse("1000:1100:0")
    with pytest.raises(ConfigError):
        UniformGrid.parse("1000-1100")


def test_resample_normalizes_and_checks_support(single_line):
    resampled = resample(single_line, UniformGrid(start=800, stop=1200, step=2.5))
    assert resampled.shifts[0] == 800 and resampled.shifts[-1] == 1200
    assert resampled.peak == pytest.approx(1.0)
    assert resampled.intensity_at(1000.0) == pytest.approx(1.0)
    with pytest.raises(BandOutsideSupportError):
        resample(single_line, UniformGrid(start=600, stop=1000, step=5))


def test_discretize_linewidths(single_line):
    modes = discretize_modes(single_line, threshold=0.02)
    assert np.all(modes.weight >= 0.02)
    assert modes.weight.max() == pytest.approx(1.0)

    center = int(np.argmin(np.abs(modes.nu - 1000.0)))
    assert modes.gamma[center] == pytest.approx(20.0, abs=0.5)
    # Outside the half-maximum interval bins fall back to 2 x spacing
    wing = int(np.argmin(np.abs(modes.nu - 1050.0)))
    assert modes.gamma[wing] == pytest.approx(2.0)


def test_discretize_unresolved_spike():
    intensities = np.full(20, 0.01)
    intensities[10] = 1.0
    spike = RamanSpectrum("spike", 500 + 5.0 * np.arange(20), intensities)
    modes = discretize_modes(spike, threshold=0.5)
    assert len(modes) == 1
    assert modes.gamma[0] == pytest.approx(10.0)
    assert discretize_modes(spike, threshold=0.5, default_gamma=3.0).gamma[0] == 3.0


def test_discretize_threshold_bounds(single_line):
    for threshold in (0.0, 1.0, -0.1):
        with pytest.raises(ConfigError):
            discretize_modes(single_line, threshold=threshold)


def test_band_integral_flat():
    spectrum = _flat(n=40, step=5.0)
    band = FilterBand(center=200.0, width=50.0)
    assert band_integral(spectrum, band) == pytest.approx(50.0)
    with pytest.raises(BandOutsideSupportError):
        band_integral(spectrum, FilterBand(center=110.0, width=50.0))


def test_reference_media_peaks(reference_media):
    assert available_media() == ["acetonitrile", "toluene", "water"]
    for name, spectrum in reference_media.items():
        assert spectrum.peak == pytest.approx(1.0)
        assert spectrum.medium_name == name
    water = reference_media["water"]
    assert 3200 <= water.shifts[np.argmax(water.intensities)] <= 3300


def test_json_points_must_be_a_list(tmp_path):
    path = _write(tmp_path / "s.json", json.dumps({"medium": "x", "points": 5}))
    with pytest.raises(SpectrumParseError, match="'points' must be a list"):
        load_spectrum(path)

    path = _write(tmp_path / "t.json", json.dumps({"points": [[100, 1], 7]}))
    with pytest.raises(SpectrumParseError) as info:
        load_spectrum(path)
    assert info.value.row == 2


def test_json_non_numeric_temperature(tmp_path):
    points = [[100 + 10 * i, 1.0] for i in range(12)]
    path = _write(tmp_path / "s.json", json.dumps({"temperature_K": "warm", "points": points}))
    with pytest.raises(SpectrumParseError, match="temperature_K"):
        load_spectrum(path)

    path = _write(tmp_path / "p.json", json.dumps({"excitation_power_mW": [1], "points": points}))
    with pytest.raises(SpectrumParseError, match="excitation_power_mW"):
        load_spectrum(path)


def test_invalid_utf8_is_a_parse_error(tmp_path):
    path = tmp_path / "s.csv"
    path.write_bytes(b"shift,intensity\n100,1\n\xff\xfe,2\n")
    with pytest.raises(SpectrumParseError) as info:
        load_spectrum(path)
    assert info.value.row == 3


def test_header_after_comment_and_blank_line(tmp_path):
    rows = "\n".join(f"{100 + 10 * i},{i + 1}" for i in range(10))
    path = _write(tmp_path / "s.csv", "# exported\n\n# units cm^-1\nshift_cm1,intensity\n" + rows + "\n")
    spectrum = load_spectrum(path, normalize=False)
    assert len(spectrum.shifts) == 10
    assert spectrum.shifts[0] == 100.0


def test_resample_onto_own_grid_is_identity():
    intensities = np.linspace(0.05, 1.0, 20)[::-1].copy()
    spectrum = RamanSpectrum("ramp", 100 + 5.0 * np.arange(20), intensities)
    resampled = resample(spectrum, UniformGrid(start=100, stop=195, step=5))
    np.testing.assert_array_equal(resampled.shifts, spectrum.shifts)
    np.testing.assert_array_equal(resampled.intensities, spectrum.intensities)


def test_mode_count_non_increasing_in_threshold(water):
    counts = [len(discretize_modes(water, threshold=t)) for t in (0.01, 0.05, 0.1, 0.3, 0.6, 0.9)]
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert counts[-1] >= 1


def test_discretize_is_scale_invariant(single_line):
    reference = discretize_modes(single_line, threshold=0.05)
    for factor in (1e-3, 1e3):
        modes = discretize_modes(single_line.scaled(factor), threshold=0.05)
        np.testing.assert_array_equal(modes.nu, reference.nu)
        np.testing.assert_allclose(modes.weight, reference.weight, rtol=1e-12)
        np.testing.assert_allclose(modes.gamma, reference.gamma, rtol=1e-9)


def test_two_equal_peaks_give_two_full_weight_modes():
    shifts = 500 + np.arange(1001, dtype=float)
    lines = 1 / (1 + ((shifts - 800) / 5) ** 2) + 1 / (1 + ((shifts - 1200) / 5) ** 2)
    modes = discretize_modes(RamanSpectrum("pair", shifts, lines), threshold=0.99)
    assert len(modes) == 2
    np.testing.assert_array_equal(modes.nu, [800.0, 1200.0])
    np.testing.assert_array_equal(modes.weight, [1.0, 1.0])
