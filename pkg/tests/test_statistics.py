"""Thermal factors, accidental background, count estimators and the Cauchy-Schwarz test."""
import json
import math

import numpy as np
import pytest

from src.exceptions import ConfigError, SpectrumParseError, ZeroOccupationError
from src.master_equation import DensityOperator, basis_index, g2_cross, photon_number_distribution
from src.pairing.models import FilterBand
from src.statistics import (
    AUTOS_UNMEASURABLE,
    CLASSICAL,
    NONCLASSICAL,
    BackgroundModel,
    CountRecord,
    accidental_model,
    anti_stokes_background,
    bose_einstein,
    cauchy_schwarz_check,
    cauchy_schwarz_from_estimate,
    dump_counts,
    g2_from_counts,
    is_low_signal,
    load_counts,
    sample_counts,
    simulate_classical_counts,
    thermal_ratio,
)


def test_bose_einstein_water_bend():
    value = bose_einstein(1640.0, 295.0)
    closed_form = 1.0 / (math.exp(1.4388 * 1640.0 / 295.0) - 1.0)
    assert value == pytest.approx(closed_form, rel=1e-12)
    assert value == pytest.approx(3.36e-4, rel=0.01)


def test_bose_einstein_edges():
    assert bose_einstein(1640.0, 0.0) == 0.0
    np.testing.assert_allclose(bose_einstein(np.array([100.0, 200.0]), 295.0),
                               [bose_einstein(100.0, 295.0), bose_einstein(200.0, 295.0)])
    with pytest.raises(ConfigError):
        bose_einstein(0.0, 295.0)
    with pytest.raises(ConfigError):
        bose_einstein(1000.0, -1.0)


def test_thermal_ratio_is_n_over_n_plus_one():
    n = bose_einstein(800.0, 295.0)
    assert thermal_ratio(800.0, 295.0) == pytest.approx(n / (n + 1.0))
    assert thermal_ratio(800.0, 295.0, prefactor_power=4) > thermal_ratio(800.0, 295.0)
    assert thermal_ratio(800.0, 0.0) == 0.0


def test_anti_stokes_background_uses_spectrum_temperature(single_line):
    band = FilterBand(center=1000.0, width=20.0)
    warm = anti_stokes_background(single_line, band)
    cold = anti_stokes_background(single_line, band, temperature=0.0)
    hot = anti_stokes_background(single_line, band, temperature=600.0)
    assert cold == 0.0
    assert 0 < warm < hot


def test_accidental_model_scaling():
    background = BackgroundModel(stokes_rate=2.0, thermal_as_rate=0.5, sas_as_rate=0.1)
    assert accidental_model(background) == pytest.approx(2.0 * 0.6)
    assert accidental_model(background, laser_scale=2.0) == pytest.approx(4.0 * (1.0 + 0.4))
    with pytest.raises(ConfigError):
        accidental_model(background, laser_scale=0.0)
    with pytest.raises(ConfigError):
        BackgroundModel(stokes_rate=-1.0, thermal_as_rate=0.0)


def test_low_signal():
    assert is_low_signal(1e-12, 100.0)
    assert not is_low_signal(1e-3, 100.0)
    assert is_low_signal(1.0, 0.0)


def test_deterministic_pair_stream():
    windows = [[0, 0]] * 99 + [[1, 1]]
    estimate = g2_from_counts(CountRecord.from_windows(windows))
    assert estimate.g2_s_as == 100.0
    assert estimate.g2_ss == 0.0
    assert estimate.g2_asas == 0.0
    assert cauchy_schwarz_from_estimate(estimate).status == AUTOS_UNMEASURABLE


def test_independent_poisson_is_uncorrelated(rng):
    record = CountRecord(rng.poisson(0.3, 200_000), rng.poisson(0.2, 200_000))
    estimate = g2_from_counts(record, chunk_size=30_000)
    assert abs(estimate.g2_s_as - 1.0) < 5 * estimate.se_s_as
    assert abs(estimate.g2_ss - 1.0) < 5 * estimate.se_ss
    assert abs(estimate.g2_asas - 1.0) < 5 * estimate.se_asas


def test_chunking_does_not_change_estimates(rng):
    record = CountRecord(rng.poisson(0.5, 10_001), rng.poisson(0.5, 10_001))
    whole = g2_from_counts(record)
    chunked = g2_from_counts(record, chunk_size=977)
    assert chunked.g2_s_as == whole.g2_s_as
    assert chunked.se_s_as == pytest.approx(whole.se_s_as, rel=1e-12)


def test_estimator_matches_state_prediction(rng):
    n_max = 2
    psi = np.zeros((n_max + 1) ** 3, dtype=complex)
    psi[basis_index(0, 0, 0, n_max)] = 1.0
    psi[basis_index(1, 1, 0, n_max)] = 0.5
    rho = DensityOperator.from_state_vector(psi, n_max)
    expected = g2_cross(rho)
    assert expected == pytest.approx(5.0)

    record = sample_counts(photon_number_distribution(rho), 1_000_000, rng)
    estimate = g2_from_counts(record)
    assert abs(estimate.g2_s_as - expected) < 3 * estimate.se_s_as


def test_classical_mixtures_respect_cauchy_schwarz():
    rng = np.random.default_rng(99)
    for _ in range(20):
        k = int(rng.integers(2, 6))
        record = simulate_classical_counts(
            rng.uniform(0.05, 1.0, k), rng.uniform(0.05, 1.0, k), rng.uniform(0.2, 1.0, k), 100_000, rng,
        )
        estimate = g2_from_counts(record)
        assert estimate.cs_ratio <= 1.0 + 3 * estimate.cs_ratio_se


def test_zero_channel_raises():
    with pytest.raises(ZeroOccupationError):
        g2_from_counts(CountRecord.from_windows([[1, 0], [2, 0], [0, 0]]))


def test_count_record_validation():
    with pytest.raises(ConfigError):
        CountRecord(np.array([1, -1]), np.array([0, 0]))
    with pytest.raises(ConfigError):
        CountRecord(np.array([1.5, 1.0]), np.array([0, 0]))
    with pytest.raises(ConfigError):
        CountRecord(np.array([], dtype=int), np.array([], dtype=int))


def test_counts_file(tmp_path):
    record = CountRecord.from_windows([[0, 1], [2, 0], [1, 1]], window_length_s=1e-9)
    loaded = load_counts(dump_counts(record, tmp_path / "counts.json"))
    np.testing.assert_array_equal(loaded.n_s, record.n_s)
    assert loaded.window_length_s == 1e-9

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"windows": [[0, 1], [1, "x"]]}), encoding="utf-8")
    with pytest.raises(SpectrumParseError) as info:
        load_counts(bad)
    assert info.value.row == 2


def test_cauchy_schwarz_verdicts():
    strong = cauchy_schwarz_check(100.0, 2.0, 2.0)
    assert strong.status == NONCLASSICAL and strong.nonclassical
    assert strong.violation_ratio == pytest.approx(2500.0)

    boundary = cauchy_schwarz_check(1.0, 1.0, 1.0)
    assert boundary.status == CLASSICAL and boundary.violation_ratio == 1.0

    assert cauchy_schwarz_check(3.0, 0.0, 2.0).status == AUTOS_UNMEASURABLE
    for bad in (-1.0, math.nan, math.inf):
        with pytest.raises(ConfigError):
            cauchy_schwarz_check(bad, 2.0, 2.0)
