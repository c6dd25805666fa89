"""
Thermal Factors - Bose-Einstein occupation and the thermal anti-Stokes background.
"""
import logging
from typing import Optional

import numpy as np

from src.config import (
    ANTI_STOKES_PREFACTOR_POWER,
    DEFAULT_QUADRATURE_POINTS,
    LASER_WAVENUMBER,
    LOW_SIGNAL_RATIO,
    SECOND_RADIATION_CONSTANT,
)
from src.exceptions import ConfigError
from src.spectrum.models import RamanSpectrum
from src.spectrum.processing import band_integral

logger = logging.getLogger(__name__)


def _check_inputs(nu, temperature: float) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    if np.any(nu <= 0):
        raise ConfigError("vibrational frequency must be positive")
    if temperature < 0:
        raise ConfigError("temperature must be >= 0 K")
    return nu


def bose_einstein(nu, temperature: float):
    """
    Mean thermal occupation 1/(exp(c2*nu/T) - 1).

    Args:
        nu: frequency in cm^-1 (scalar or array)
        temperature: kelvin; T = 0 gives 0

    Returns:
        float for scalar input, array otherwise
    """
    nu = _check_inputs(nu, temperature)
    if temperature == 0:
        occupation = np.zeros_like(nu)
    else:
        with np.errstate(over="ignore"):
            occupation = 1.0 / np.expm1(SECOND_RADIATION_CONSTANT * nu / temperature)
    return float(occupation) if occupation.ndim == 0 else occupation


def thermal_ratio(
    nu,
    temperature: float,
    prefactor_power: int = ANTI_STOKES_PREFACTOR_POWER,
    laser_wavenumber: float = LASER_WAVENUMBER,
):
    """
    Anti-Stokes / Stokes intensity ratio n/(n+1) = exp(-c2*nu/T).

    With prefactor_power k > 0 the ratio is multiplied by
    ((w_L + nu)/(w_L - nu))^k.
    """
    nu = _check_inputs(nu, temperature)
    if temperature == 0:
        ratio = np.zeros_like(nu)
    else:
        ratio = np.exp(-SECOND_RADIATION_CONSTANT * nu / temperature)
    if prefactor_power:
        if np.any(nu >= laser_wavenumber):
            raise ConfigError("shift must stay below the laser wavenumber")
        ratio = ratio * ((laser_wavenumber + nu) / (laser_wavenumber - nu)) ** prefactor_power
    return float(ratio) if ratio.ndim == 0 else ratio


def anti_stokes_background(
    spectrum: RamanSpectrum,
    band,
    temperature: Optional[float] = None,
    prefactor_power: int = ANTI_STOKES_PREFACTOR_POWER,
    n_points: int = DEFAULT_QUADRATURE_POINTS,
) -> float:
    """
    Thermal anti-Stokes rate through a band: integral of I_S * n/(n+1) * T_aS.

    Temperature defaults to the spectrum's own.
    """
    temperature = spectrum.temperature_k if temperature is None else temperature
    if temperature < 0:
        raise ConfigError("temperature must be >= 0 K")
    return band_integral(
        spectrum,
        band,
        weight=lambda nodes: thermal_ratio(nodes, temperature, prefactor_power),
        n_points=n_points,
    )


def is_low_signal(
    thermal_rate: float,
    band_width: float,
    reference_intensity: float = 1.0,
    ratio: float = LOW_SIGNAL_RATIO,
) -> bool:
    """
    True when the thermal anti-Stokes rate per cm^-1 of band falls below
    ratio times the reference (peak) Stokes intensity.
    """
    if band_width <= 0 or reference_intensity <= 0:
        return True
    return thermal_rate / (band_width * reference_intensity) < ratio
