"""Resonance scans of the single-mode model and agreement with the perturbative engine."""
import math

import numpy as np
import pytest

from src.exceptions import ConfigError
from src.master_equation import ModelConfig, scan_resonance
from src.pairing import FLAG_NO_PAIR_GENERATION, PredictionOptions, Regime, predict_g2_curve
from src.spectrum import lorentzian_spectrum

NU = 1640.0


def test_decoupled_model_flags_every_point():
    template = ModelConfig(nu=NU, shift=NU, g_s=0.0, g_as=0.0, t1=0.5, n_max=2, pulse_duration=1.0)
    result = scan_resonance(template, [1650.0, 1630.0, 1640.0], [0.5], temperature=0.0)
    curve = result.curve(0.5)
    assert curve.shifts == [1630.0, 1640.0, 1650.0]
    for point in curve.points:
        assert point.flags == (FLAG_NO_PAIR_GENERATION,)
        assert point.g2 == 1.0
    assert result.evolutions == 3
    assert result.rk4_steps > 0


def test_scan_rejects_bad_grids():
    template = ModelConfig(nu=NU, shift=NU, n_max=2)
    with pytest.raises(ConfigError):
        scan_resonance(template, [], [0.5])
    with pytest.raises(ConfigError):
        scan_resonance(template, [1640.0], [])
    with pytest.raises(ConfigError):
        scan_resonance(template, [1640.0], [0.0])


def test_scan_rows_carry_model_columns():
    template = ModelConfig(nu=NU, shift=NU, g_s=0.1, g_as=0.1, t1=0.5, n_max=2, pulse_duration=1.0)
    result = scan_resonance(template, [1640.0, 1660.0], [0.5], temperature=0.0)
    rows = result.curves[0].to_rows()
    assert [row["shift_cm1"] for row in rows] == [1640.0, 1660.0]
    assert all(row["t1"] == 0.5 and row["n_max"] == 2 for row in rows)
    assert rows[0]["regime"] == Regime.NEAR_RESONANCE.value
    assert rows[1]["regime"] == Regime.VIRTUAL.value
    assert max(row["g2_norm"] for row in rows) == pytest.approx(1.0)


@pytest.mark.slow
def test_engines_agree_off_resonance():
    offsets = [-30.0, -25.0, -20.0, -16.0, -12.0, 0.0, 12.0, 16.0, 20.0, 25.0, 30.0]
    shifts = [NU + d for d in offsets]
    reference = NU + 30.0

    template = ModelConfig(nu=NU, shift=NU, g_s=0.1, g_as=0.1, t1=0.5, n_max=2, pulse_duration=8.0)
    simulated = scan_resonance(template, shifts, [0.5], temperature=0.0).curve(0.5)

    spectrum = lorentzian_spectrum(NU, fwhm=2.0, step=0.25)
    predicted = predict_g2_curve(
        spectrum, 1.0, "tophat", shifts,
        options=PredictionOptions(temperature_k=0.0),
    )
    by_shift = {p.shift: p for p in predicted.points}

    sim_ref = simulated.point_at(reference).g2
    pred_ref = by_shift[reference].g2_raw
    for shift in shifts:
        if shift == NU:
            continue
        sim = simulated.point_at(shift).g2 / sim_ref
        pred = by_shift[shift].g2_raw / pred_ref
        assert sim == pytest.approx(pred, rel=0.05), shift

    on_resonance = simulated.point_at(NU)
    assert math.isfinite(on_resonance.g2)
    assert on_resonance.regime == Regime.NEAR_RESONANCE.value


@pytest.mark.slow
def test_longer_lifetime_keeps_shift_ordering():
    offsets = [-9.0, -6.0, -3.0, 0.0, 2.0, 5.0, 8.0]
    shifts = [NU + d for d in offsets]
    template = ModelConfig(nu=NU, shift=NU, g_s=0.05, g_as=0.05, n_max=2, pulse_duration=10.0)
    result = scan_resonance(template, shifts, [1.0, 0.25], temperature=0.0)
    long_lived = np.argsort(result.curve(1.0).g2)
    short_lived = np.argsort(result.curve(0.25).g2)
    np.testing.assert_array_equal(long_lived, short_lived)
