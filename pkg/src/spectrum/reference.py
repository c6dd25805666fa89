"""
Reference Media - Synthetic Raman spectra built from Lorentzian lines.

Line positions follow the commonly tabulated bands of each liquid; relative
heights are chosen to reproduce the qualitative shape of femtosecond-excited
spectra (broad lines, weak combination bands). Used by tests, by the
reference-spectra script and as demo input for the CLI.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.config import DEFAULT_TEMPERATURE_K
from src.exceptions import ConfigError
from .models import RamanSpectrum

# Flat floor left by imperfect background subtraction
BASELINE_FLOOR = 0.002


@dataclass(frozen=True)
class RamanLine:
    """Lorentzian line: center and half width at half maximum in cm^-1."""
    center: float
    amplitude: float
    hwhm: float

    def profile(self, shifts: np.ndarray) -> np.ndarray:
        return self.amplitude / (1.0 + ((shifts - self.center) / self.hwhm) ** 2)


REFERENCE_MEDIA: Dict[str, List[RamanLine]] = {
    "water": [
        RamanLine(600.0, 0.5, 200.0),    # librations
        RamanLine(1640.0, 0.3, 70.0),    # bending
        RamanLine(2110.0, 0.05, 150.0),  # bending + libration combination
        RamanLine(3050.0, 0.3, 70.0),    # O-H stretch shoulder
        RamanLine(3250.0, 1.0, 70.0),    # O-H stretch
        RamanLine(3420.0, 0.7, 70.0),    # O-H stretch
    ],
    "acetonitrile": [
        RamanLine(918.0, 0.3, 50.0),     # C-C stretch
        RamanLine(1375.0, 0.2, 60.0),    # CH3 deformation
        RamanLine(2250.0, 0.45, 90.0),   # C#N stretch
        RamanLine(2940.0, 1.0, 50.0),    # C-H stretch
    ],
    "toluene": [
        RamanLine(786.0, 0.4, 50.0),     # ring breathing
        RamanLine(1003.0, 1.0, 60.0),    # ring trigonal
        RamanLine(1210.0, 0.2, 50.0),    # C-CH3 stretch
        RamanLine(1605.0, 0.15, 40.0),   # ring C=C stretch
        RamanLine(2920.0, 0.5, 100.0),   # CH3 stretch
        RamanLine(3057.0, 0.6, 100.0),   # aromatic C-H stretch
    ],
}


def available_media() -> List[str]:
    return sorted(REFERENCE_MEDIA)


def _axis(start: float, stop: float, step: float) -> np.ndarray:
    if not (step > 0 and start < stop):
        raise ConfigError("reference axis needs start < stop and step > 0")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def lines_spectrum(
    medium_name: str,
    lines: List[RamanLine],
    start: float = 100.0,
    stop: float = 4000.0,
    step: float = 5.0,
    floor: float = BASELINE_FLOOR,
    temperature_k: float = DEFAULT_TEMPERATURE_K,
) -> RamanSpectrum:
    """Sum of Lorentzian lines plus a flat floor, normalized to max 1."""
    shifts = _axis(start, stop, step)
    intensities = np.full(len(shifts), floor)
    for line in lines:
        intensities += line.profile(shifts)
    spectrum = RamanSpectrum(
        medium_name=medium_name,
        shifts=shifts,
        intensities=intensities,
        temperature_k=temperature_k,
    )
    return spectrum.normalized()


def synthesize_spectrum(
    medium: str,
    start: float = 100.0,
    stop: float = 4000.0,
    step: float = 5.0,
    temperature_k: float = DEFAULT_TEMPERATURE_K,
) -> RamanSpectrum:
    """Reference spectrum of a named medium (see available_media())."""
    try:
        lines = REFERENCE_MEDIA[medium]
    except KeyError:
        raise ConfigError(f"unknown reference medium {medium!r}; choose from {available_media()}")
    return lines_spectrum(medium, lines, start, stop, step, temperature_k=temperature_k)


def lorentzian_spectrum(
    center: float,
    fwhm: float,
    window: Optional[Tuple[float, float]] = None,
    step: float = 0.25,
    floor: float = 0.0,
    temperature_k: float = DEFAULT_TEMPERATURE_K,
    medium_name: str = "single-mode",
) -> RamanSpectrum:
    """
    Single Lorentzian line, used to match a one-mode master-equation model.

    Args:
        center: line center in cm^-1
        fwhm: full width at half maximum in cm^-1
        window: (start, stop) of the shift axis; defaults to center +/- 60 fwhm
        step: axis spacing
    """
    if fwhm <= 0:
        raise ConfigError("fwhm must be positive")
    if window is None:
        window = (max(step, center - 60 * fwhm), center + 60 * fwhm)
    return lines_spectrum(
        medium_name,
        [RamanLine(center, 1.0, fwhm / 2.0)],
        start=window[0],
        stop=window[1],
        step=step,
        floor=floor,
        temperature_k=temperature_k,
    )
