"""
Spectrum Processing - Resampling, per-bin mode discretization and band integrals.
"""
import logging
from typing import Callable, Optional

import numpy as np
from scipy.integrate import trapezoid
from scipy.signal import find_peaks, peak_widths

from src.config import DEFAULT_GAMMA_SPACINGS, DEFAULT_QUADRATURE_POINTS, DEFAULT_THRESHOLD
from src.exceptions import BandOutsideSupportError, ConfigError, EmptyModeSetError
from .models import RamanSpectrum, UniformGrid, VibrationalModeSet

logger = logging.getLogger(__name__)

# Peaks narrower than this many grid steps count as unresolved
MIN_RESOLVED_STEPS = 2.0


def resample(spectrum: RamanSpectrum, grid: UniformGrid) -> RamanSpectrum:
    """Linearly interpolate onto a uniform grid and renormalize to max 1."""
    shifts = grid.values()
    if not spectrum.covers(shifts[0], shifts[-1]):
        raise BandOutsideSupportError(
            f"grid [{shifts[0]:g}, {shifts[-1]:g}] outside spectrum support "
            f"[{spectrum.shifts[0]:g}, {spectrum.shifts[-1]:g}]"
        )
    resampled = RamanSpectrum(
        medium_name=spectrum.medium_name,
        shifts=shifts,
        intensities=np.interp(shifts, spectrum.shifts, spectrum.intensities),
        temperature_k=spectrum.temperature_k,
        excitation_power_mw=spectrum.excitation_power_mw,
    )
    return resampled.normalized()


def _peak_fwhm_per_bin(spectrum: RamanSpectrum, default_gamma: float) -> np.ndarray:
    """FWHM of the resolved peak each bin belongs to, default_gamma elsewhere."""
    intensities = np.asarray(spectrum.intensities)
    gamma = np.full(len(intensities), default_gamma)
    peaks, _ = find_peaks(intensities)
    if len(peaks) == 0:
        return gamma

    widths, _, left_ips, right_ips = peak_widths(intensities, peaks, rel_height=0.5)
    index_axis = np.arange(len(intensities), dtype=float)
    left = np.interp(left_ips, index_axis, spectrum.shifts)
    right = np.interp(right_ips, index_axis, spectrum.shifts)

    # Lower peaks first so the tallest peak wins where half-maximum intervals overlap
    for k in np.argsort(intensities[peaks], kind="stable"):
        if widths[k] < MIN_RESOLVED_STEPS:
            continue
        inside = (spectrum.shifts >= left[k]) & (spectrum.shifts <= right[k])
        gamma[inside] = right[k] - left[k]
    return gamma


def discretize_modes(
    spectrum: RamanSpectrum,
    threshold: float = DEFAULT_THRESHOLD,
    default_gamma: Optional[float] = None,
) -> VibrationalModeSet:
    """
    Turn every spectral bin at or above threshold into a vibrational mode.

    Weights are the normalized intensities. Linewidths come from the
    half-maximum width of the peak a bin sits under, or default_gamma
    (2 x median spacing unless given) when that peak is unresolved.

    Raises:
        ConfigError: threshold outside (0, 1) or non-positive default_gamma
        EmptyModeSetError: no bin reaches the threshold
    """
    if not 0 < threshold < 1:
        raise ConfigError(f"threshold must lie in (0, 1), got {threshold}")
    if spectrum.peak <= 0:
        raise EmptyModeSetError(f"empty mode set: spectrum {spectrum.medium_name!r} is identically zero")

    if default_gamma is None:
        default_gamma = DEFAULT_GAMMA_SPACINGS * spectrum.spacing
    if default_gamma <= 0:
        raise ConfigError("default_gamma must be positive")

    normalized = spectrum.normalized()
    keep = normalized.intensities >= threshold
    if not np.any(keep):
        raise EmptyModeSetError(f"empty mode set: no bin of {spectrum.medium_name!r} reaches {threshold}")

    gamma = _peak_fwhm_per_bin(normalized, default_gamma)
    modes = VibrationalModeSet(
        nu=normalized.shifts[keep],
        weight=normalized.intensities[keep],
        gamma=gamma[keep],
        medium_name=spectrum.medium_name,
        source_spacing=spectrum.spacing,
    )
    logger.debug("Discretized %s into %d modes (threshold %.3g)", spectrum.medium_name, len(modes), threshold)
    return modes


def band_integral(
    spectrum: RamanSpectrum,
    band,
    weight: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    n_points: int = DEFAULT_QUADRATURE_POINTS,
) -> float:
    """
    Integrate I(shift) * weight(shift) * T(shift) over the band support.

    Args:
        spectrum: the Stokes spectrum, linearly interpolated
        band: a FilterBand (anything with support() and transmission())
        weight: optional extra factor evaluated on the quadrature nodes
        n_points: trapezoid nodes across the support

    Raises:
        BandOutsideSupportError: the band reaches outside the spectrum
    """
    lo, hi = band.support()
    if not spectrum.covers(lo, hi):
        raise BandOutsideSupportError(
            f"band [{lo:g}, {hi:g}] outside spectrum support "
            f"[{spectrum.shifts[0]:g}, {spectrum.shifts[-1]:g}]"
        )
    nodes = np.linspace(lo, hi, n_points)
    integrand = spectrum.intensity_at(nodes) * band.transmission(nodes)
    if weight is not None:
        integrand = integrand * weight(nodes)
    return float(trapezoid(integrand, nodes))
