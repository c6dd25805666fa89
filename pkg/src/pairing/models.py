"""
Pairing Models - Gap parameters, filter bands and correlation curves.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config import (
    ANTI_STOKES_PREFACTOR_POWER,
    DEFAULT_LASER_INTENSITY,
    DEFAULT_QUADRATURE_POINTS,
    DEFAULT_THRESHOLD,
    GAUSSIAN_SUPPORT_WIDTHS,
    SAS_SELF_COEFFICIENT,
)

# FWHM -> Gaussian sigma
FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))


class GapParameters(BaseModel):
    """Pump scale (alpha_L^2) of the gap. Frequencies are in cm^-1 with hbar = 1."""
    model_config = ConfigDict(frozen=True)

    laser_intensity: float = Field(DEFAULT_LASER_INTENSITY, gt=0)
    hbar_units: Literal["wavenumber"] = "wavenumber"


class FilterShape(str, Enum):
    TOPHAT = "tophat"
    GAUSSIAN = "gaussian"


class FilterBand(BaseModel):
    """
    Bandpass window on the shift-magnitude axis.

    Stokes bands are described by their mirrored (positive) shift, so a
    symmetric filter pair is two bands with the same center.
    """
    model_config = ConfigDict(frozen=True)

    center: float
    width: float = Field(..., gt=0)
    shape: FilterShape = FilterShape.TOPHAT

    @model_validator(mode="after")
    def _exclude_laser_line(self):
        if not self.center > self.width / 2:
            raise ValueError(f"band at {self.center} with width {self.width} includes the laser line")
        return self

    @property
    def sigma(self) -> float:
        return self.width * FWHM_TO_SIGMA

    def support(self) -> Tuple[float, float]:
        """Interval outside which the transmission is exactly zero."""
        if self.shape == FilterShape.TOPHAT:
            half = self.width / 2
        else:
            half = GAUSSIAN_SUPPORT_WIDTHS * self.width
        return max(self.center - half, 1e-6), self.center + half

    def transmission(self, shift) -> np.ndarray:
        shift = np.asarray(shift, dtype=float)
        lo, hi = self.support()
        inside = (shift >= lo) & (shift <= hi)
        if self.shape == FilterShape.TOPHAT:
            return inside.astype(float)
        profile = np.exp(-0.5 * ((shift - self.center) / self.sigma) ** 2)
        return np.where(inside, profile, 0.0)


class Regime(str, Enum):
    VIRTUAL = "virtual"
    NEAR_RESONANCE = "near_resonance"
    MIXED = "mixed"


# Point flags
FLAG_UNDEFINED = "undefined"
FLAG_LOW_SIGNAL = "low_signal"
FLAG_NO_PAIR_GENERATION = "no_pair_generation"


class PredictionOptions(BaseModel):
    """Engine options for the perturbative predictor."""
    model_config = ConfigDict(frozen=True)

    threshold: float = Field(DEFAULT_THRESHOLD, gt=0, lt=1)
    default_gamma: Optional[float] = Field(None, gt=0)
    temperature_k: Optional[float] = Field(None, ge=0)
    coherent: bool = True
    include_sas_background: bool = True
    sas_coefficient: float = Field(SAS_SELF_COEFFICIENT, ge=0)
    quadrature_points: int = Field(DEFAULT_QUADRATURE_POINTS, ge=3)
    prefactor_power: int = Field(ANTI_STOKES_PREFACTOR_POWER, ge=0)


@dataclass(frozen=True)
class CorrelationPoint:
    shift: float
    g2_normalized: float
    g2_raw: float
    overlap_factor: float
    correlated_rate: float
    accidental_rate: float
    regime: str
    flags: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shift_cm1": self.shift,
            "g2_norm": _json_float(self.g2_normalized),
            "g2_raw": _json_float(self.g2_raw),
            "overlap": self.overlap_factor,
            "correlated_rate": self.correlated_rate,
            "accidental_rate": self.accidental_rate,
            "regime": self.regime,
            "flags": list(self.flags),
        }


def _json_float(value: float) -> Optional[float]:
    return None if value is None or not math.isfinite(value) else value


@dataclass(frozen=True)
class CorrelationCurve:
    """
    Predicted g2(0) versus band center for one medium.

    g2_normalized is g2_raw divided by the maximum over defined points, so
    the maximum (or every tied maximum) sits at exactly 1.
    """
    medium_name: str
    points: List[CorrelationPoint]
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def shifts(self) -> np.ndarray:
        return np.array([p.shift for p in self.points])

    @property
    def g2_normalized(self) -> np.ndarray:
        return np.array([p.g2_normalized for p in self.points])

    @property
    def g2_raw(self) -> np.ndarray:
        return np.array([p.g2_raw for p in self.points])

    def point_at(self, shift: float, tol: float = 1e-9) -> CorrelationPoint:
        for point in self.points:
            if abs(point.shift - shift) <= tol * max(1.0, abs(shift)):
                return point
        raise KeyError(f"no point at shift {shift}")

    def peak_shift(self) -> float:
        values = self.g2_normalized
        return float(self.shifts[int(np.nanargmax(values))])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "medium": self.medium_name,
            "metadata": self.metadata,
            "points": [p.to_dict() for p in self.points],
        }


def normalize_points(raw_points: List[CorrelationPoint]) -> List[CorrelationPoint]:
    """Fill g2_normalized from g2_raw, ignoring undefined points for the maximum."""
    defined = [p.g2_raw for p in raw_points if math.isfinite(p.g2_raw)]
    peak = max(defined) if defined else math.nan
    out = []
    for p in raw_points:
        norm = p.g2_raw / peak if math.isfinite(p.g2_raw) and math.isfinite(peak) else math.nan
        out.append(CorrelationPoint(
            shift=p.shift,
            g2_normalized=norm,
            g2_raw=p.g2_raw,
            overlap_factor=p.overlap_factor,
            correlated_rate=p.correlated_rate,
            accidental_rate=p.accidental_rate,
            regime=p.regime,
            flags=p.flags,
        ))
    return out
