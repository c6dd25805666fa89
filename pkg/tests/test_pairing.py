"""Gap, pair amplitude and filter overlap."""
import numpy as np
import pytest
from scipy.integrate import quad, trapezoid

from src.exceptions import ConfigError, EmptyModeSetError
from src.pairing import (
    FilterBand,
    FilterShape,
    GapParameters,
    band_overlap,
    correlated_rate,
    gap_delta,
    pair_amplitude,
    pair_rate_density,
)
from src.spectrum.models import VibrationalMode, VibrationalModeSet


def test_gap_sign_law():
    rng = np.random.default_rng(2024)
    shifts = rng.uniform(10.0, 4000.0, 10_000)
    nus = rng.uniform(10.0, 4000.0, 10_000)
    failures = 0
    for shift, nu in zip(shifts, nus):
        delta = gap_delta(shift, VibrationalMode(nu, 1.0, 1e-6 * nu))
        if (delta.real < 0) != (shift < nu):
            failures += 1
    assert failures == 0


def test_gap_on_resonance_is_imaginary_and_finite():
    delta = gap_delta(1640.0, (1640.0, 0.5, 10.0))
    assert delta.real == 0.0
    assert delta.imag == pytest.approx(-0.5 / 10.0)


def test_gap_scales_with_laser_intensity():
    mode = VibrationalMode(1000.0, 1.0, 5.0)
    one = gap_delta(900.0, mode)
    three = gap_delta(900.0, mode, GapParameters(laser_intensity=3.0))
    assert three == pytest.approx(3.0 * one)


def test_gap_rejects_bad_input():
    with pytest.raises(ConfigError):
        gap_delta(0.0, (1000.0, 1.0, 5.0))
    with pytest.raises(ConfigError):
        gap_delta(100.0, (1000.0, 1.0, 0.0))
    empty = VibrationalModeSet(np.array([]), np.array([]), np.array([]))
    with pytest.raises(EmptyModeSetError):
        pair_amplitude(500.0, empty)


def test_coherent_and_incoherent_sums():
    modes = VibrationalModeSet(
        nu=np.array([1000.0, 1200.0]),
        weight=np.array([1.0, 0.5]),
        gamma=np.array([10.0, 10.0]),
    )
    shift = 1100.0
    parts = [gap_delta(shift, mode) for mode in modes]
    assert pair_amplitude(shift, modes) == pytest.approx(sum(parts))
    assert pair_rate_density(shift, modes) == pytest.approx(abs(sum(parts)) ** 2)
    assert pair_rate_density(shift, modes, coherent=False) == pytest.approx(sum(abs(p) ** 2 for p in parts))
    # Between the modes the two gaps have opposite signs and partly cancel
    assert pair_rate_density(shift, modes) < pair_rate_density(shift, modes, coherent=False)


def _first_order_pair_probability(shift, nu, weight, gamma, laser, dt):
    """|<1_S 1_aS| (1 - i H dt) |0_S 0_aS>|^2 with H = D a_S^+ a_aS^+ + h.c."""
    coupling = weight * laser * nu / (shift ** 2 - nu ** 2 + 1j * nu * gamma)
    a = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    pair = np.kron(a.conj().T, a.conj().T)
    hamiltonian = coupling * pair + np.conj(coupling) * pair.conj().T
    vacuum = np.zeros(4, dtype=complex)
    vacuum[0] = 1.0
    state = (np.kron(eye, eye) - 1j * dt * hamiltonian) @ vacuum
    return abs(state[3]) ** 2


def test_correlated_rate_matches_first_order_oracle():
    rng = np.random.default_rng(7)
    dt = 1e-3
    ratios = []
    for _ in range(20):
        nu = rng.uniform(500.0, 3500.0)
        gamma = rng.uniform(2.0, 40.0)
        weight = rng.uniform(0.1, 1.0)
        laser = rng.uniform(0.5, 2.0)
        center = nu + rng.uniform(-300.0, 300.0)
        width = rng.uniform(20.0, 120.0)
        band = FilterBand(center=center, width=width)
        modes = VibrationalModeSet(np.array([nu]), np.array([weight]), np.array([gamma]))

        rate = correlated_rate(modes, band, band, GapParameters(laser_intensity=laser), n_points=65)
        nodes = np.linspace(*band.support(), 65)
        oracle = trapezoid([_first_order_pair_probability(s, nu, weight, gamma, laser, dt) for s in nodes], nodes)
        ratios.append(rate / oracle)

    # One-point calibration: the first instance fixes the constant
    calibrated = np.array(ratios) / ratios[0]
    np.testing.assert_allclose(calibrated, 1.0, rtol=1e-8)


def test_tophat_overlap():
    band = FilterBand(center=2000.0, width=100.0)
    assert band_overlap(band, band) == pytest.approx(100.0)
    shifted = FilterBand(center=2060.0, width=100.0)
    assert band_overlap(band, shifted) == pytest.approx(40.0)
    far = FilterBand(center=2300.0, width=100.0)
    assert band_overlap(band, far) == 0.0


def test_gaussian_overlap_matches_quadrature():
    a = FilterBand(center=2000.0, width=80.0, shape=FilterShape.GAUSSIAN)
    b = FilterBand(center=2030.0, width=60.0, shape=FilterShape.GAUSSIAN)
    lo = max(a.support()[0], b.support()[0])
    hi = min(a.support()[1], b.support()[1])
    expected, _ = quad(lambda x: float(a.transmission(x) * b.transmission(x)), lo, hi, epsrel=1e-12)
    assert band_overlap(a, b) == pytest.approx(expected, rel=1e-9)


def test_mixed_shape_overlap_bounded():
    tophat = FilterBand(center=2000.0, width=100.0)
    gaussian = FilterBand(center=2000.0, width=100.0, shape=FilterShape.GAUSSIAN)
    value = band_overlap(tophat, gaussian)
    assert 0 < value < band_overlap(tophat, tophat)


def test_disjoint_bands_have_no_pairs():
    modes = VibrationalModeSet(np.array([1500.0]), np.array([1.0]), np.array([10.0]))
    stokes = FilterBand(center=1400.0, width=50.0)
    antistokes = FilterBand(center=1600.0, width=50.0)
    assert correlated_rate(modes, stokes, antistokes, GapParameters()) == 0.0


def test_filter_band_excludes_laser_line():
    with pytest.raises(ValueError):
        FilterBand(center=40.0, width=100.0)
