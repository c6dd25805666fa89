"""
Spectrum Models - Raman spectra and the vibrational modes extracted from them.
"""
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.config import DEFAULT_TEMPERATURE_K, MIN_SPECTRUM_POINTS
from src.exceptions import ConfigError, SpectrumValidationError


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=float)
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class RamanSpectrum:
    """
    Sampled Stokes intensity versus Raman shift for one medium.

    Shifts are in cm^-1, intensities in arbitrary units. Rows reported in
    validation errors are 1-based point indices.
    """
    medium_name: str
    shifts: np.ndarray
    intensities: np.ndarray
    temperature_k: float = DEFAULT_TEMPERATURE_K
    excitation_power_mw: Optional[float] = None

    def __post_init__(self):
        shifts = _frozen(self.shifts)
        intensities = _frozen(self.intensities)
        object.__setattr__(self, "shifts", shifts)
        object.__setattr__(self, "intensities", intensities)

        if shifts.ndim != 1 or shifts.shape != intensities.shape:
            raise SpectrumValidationError("shifts and intensities must be 1-D arrays of equal length")
        if len(shifts) < MIN_SPECTRUM_POINTS:
            raise SpectrumValidationError(
                f"spectrum needs at least {MIN_SPECTRUM_POINTS} points, got {len(shifts)}"
            )
        for idx in range(len(shifts)):
            if not (np.isfinite(shifts[idx]) and np.isfinite(intensities[idx])):
                raise SpectrumValidationError("non-finite value", row=idx + 1)
            if intensities[idx] < 0:
                raise SpectrumValidationError("negative intensity", row=idx + 1)
            if idx > 0 and shifts[idx] <= shifts[idx - 1]:
                raise SpectrumValidationError("non-increasing shift", row=idx + 1)
        if self.temperature_k < 0:
            raise SpectrumValidationError("temperature must be >= 0 K")

    @property
    def points(self) -> List[Tuple[float, float]]:
        return list(zip(self.shifts.tolist(), self.intensities.tolist()))

    @property
    def spacing(self) -> float:
        """Median grid spacing in cm^-1."""
        return float(np.median(np.diff(self.shifts)))

    @property
    def peak(self) -> float:
        return float(self.intensities.max())

    def covers(self, lo: float, hi: float) -> bool:
        return bool(self.shifts[0] <= lo and hi <= self.shifts[-1])

    def with_intensities(self, intensities: np.ndarray) -> "RamanSpectrum":
        return RamanSpectrum(
            medium_name=self.medium_name,
            shifts=self.shifts,
            intensities=intensities,
            temperature_k=self.temperature_k,
            excitation_power_mw=self.excitation_power_mw,
        )

    def normalized(self) -> "RamanSpectrum":
        """Rescale so the highest bin is 1. An all-zero spectrum is returned as is."""
        peak = self.peak
        if peak <= 0:
            return self
        return self.with_intensities(self.intensities / peak)

    def scaled(self, factor: float) -> "RamanSpectrum":
        return self.with_intensities(self.intensities * factor)

    def intensity_at(self, shift) -> np.ndarray:
        """Linear interpolation of the intensity."""
        return np.interp(shift, self.shifts, self.intensities)


@dataclass(frozen=True)
class VibrationalMode:
    """One discretized mode: frequency, relative M_q^2 and FWHM linewidth."""
    nu_q: float
    weight: float
    gamma_q: float

    def __post_init__(self):
        if self.gamma_q <= 0:
            raise ConfigError(f"mode at {self.nu_q} cm^-1 needs gamma_q > 0")
        if self.nu_q <= 0:
            raise ConfigError("mode frequency must be positive")


@dataclass(frozen=True)
class VibrationalModeSet:
    """Modes as parallel arrays, peak weight normalized to 1."""
    nu: np.ndarray
    weight: np.ndarray
    gamma: np.ndarray
    medium_name: str = ""
    source_spacing: float = field(default=0.0)

    def __post_init__(self):
        for name in ("nu", "weight", "gamma"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if not (self.nu.shape == self.weight.shape == self.gamma.shape):
            raise ConfigError("mode arrays must have equal length")
        if len(self.nu) and np.any(self.gamma <= 0):
            raise ConfigError("every mode needs gamma_q > 0")
        if len(self.nu) and (np.any(self.weight < 0) or np.any(self.weight > 1)):
            raise ConfigError("mode weights must lie in [0, 1]")

    @classmethod
    def from_modes(cls, modes: List[VibrationalMode], medium_name: str = "") -> "VibrationalModeSet":
        return cls(
            nu=np.array([m.nu_q for m in modes], dtype=float),
            weight=np.array([m.weight for m in modes], dtype=float),
            gamma=np.array([m.gamma_q for m in modes], dtype=float),
            medium_name=medium_name,
        )

    def __len__(self) -> int:
        return len(self.nu)

    def __iter__(self) -> Iterator[VibrationalMode]:
        for nu, weight, gamma in zip(self.nu, self.weight, self.gamma):
            yield VibrationalMode(float(nu), float(weight), float(gamma))


class UniformGrid(BaseModel):
    """Uniform shift grid; stop is included when it falls on the lattice."""
    start: float
    stop: float
    step: float = Field(..., gt=0)

    @model_validator(mode="after")
    def _check_order(self):
        if not self.start < self.stop:
            raise ValueError("grid start must be below stop")
        return self

    @classmethod
    def parse(cls, text: str) -> "UniformGrid":
        """Parse the START:STOP:STEP form used on the command line."""
        try:
            start, stop, step = (float(part) for part in text.split(":"))
        except ValueError as e:
            raise ConfigError(f"grid must be START:STOP:STEP, got {text!r}") from e
        try:
            return cls(start=start, stop=stop, step=step)
        except ValueError as e:
            raise ConfigError(f"invalid grid {text!r}: {e}") from e

    def values(self) -> np.ndarray:
        count = int(np.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return np.minimum(self.start + self.step * np.arange(count), self.stop)
