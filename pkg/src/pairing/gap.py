"""
Bosonic BCS gap and the first-order Stokes/anti-Stokes pair amplitude.

All frequencies are wavenumbers (cm^-1). The pole at shift = nu_q is
regularized by the mode linewidth: denominator shift^2 - nu_q^2 + i*nu_q*gamma_q.
"""
from typing import Optional, Union

import numpy as np

from src.exceptions import ConfigError, EmptyModeSetError
from src.spectrum.models import VibrationalMode, VibrationalModeSet
from .models import GapParameters

_DEFAULT_PARAMS = GapParameters()


def _as_shift_array(shift) -> np.ndarray:
    shift = np.asarray(shift, dtype=float)
    if np.any(shift <= 0):
        raise ConfigError("shift must be positive")
    return shift


def _gap_terms(shift: np.ndarray, nu, weight, gamma, laser_intensity: float) -> np.ndarray:
    # (s - nu)(s + nu) keeps the sign of the real part exact
    real = (shift - nu) * (shift + nu)
    imag = nu * gamma
    scale = weight * laser_intensity * nu / (real * real + imag * imag)
    return scale * real - 1j * (scale * imag)


def gap_delta(
    shift,
    mode: Union[VibrationalMode, tuple],
    params: Optional[GapParameters] = None,
):
    """
    Gap of one mode: weight*L*nu / (shift^2 - nu^2 + i*nu*gamma).

    A negative real part means attraction (shift below the mode).

    Args:
        shift: cm^-1, scalar or array, > 0
        mode: VibrationalMode or (nu_q, weight, gamma_q)
        params: pump scale; defaults to unit laser intensity

    Returns:
        complex scalar or array shaped like shift
    """
    params = params or _DEFAULT_PARAMS
    if not isinstance(mode, VibrationalMode):
        mode = VibrationalMode(*mode)
    values = _gap_terms(_as_shift_array(shift), mode.nu_q, mode.weight, mode.gamma_q, params.laser_intensity)
    return complex(values) if values.ndim == 0 else values


def _mode_matrix(shift, modes: VibrationalModeSet, params: GapParameters) -> np.ndarray:
    if len(modes) == 0:
        raise EmptyModeSetError("empty mode set")
    shift = _as_shift_array(shift)
    return _gap_terms(
        np.atleast_1d(shift)[:, None],
        modes.nu[None, :],
        modes.weight[None, :],
        modes.gamma[None, :],
        params.laser_intensity,
    )


def pair_amplitude(shift, modes: VibrationalModeSet, params: Optional[GapParameters] = None):
    """Coherent sum of the gap over all modes, in mode order."""
    params = params or _DEFAULT_PARAMS
    amplitude = _mode_matrix(shift, modes, params).sum(axis=1)
    return complex(amplitude[0]) if np.ndim(shift) == 0 else amplitude


def pair_rate_density(
    shift,
    modes: VibrationalModeSet,
    params: Optional[GapParameters] = None,
    coherent: bool = True,
):
    """|sum of gaps|^2, or the sum of |gap|^2 when coherent is False."""
    params = params or _DEFAULT_PARAMS
    terms = _mode_matrix(shift, modes, params)
    if coherent:
        density = np.abs(terms.sum(axis=1)) ** 2
    else:
        density = (np.abs(terms) ** 2).sum(axis=1)
    return float(density[0]) if np.ndim(shift) == 0 else density
