"""
Spectrum Module - Raman spectrum ingestion, validation and mode discretization.
"""
from .models import RamanSpectrum, VibrationalMode, VibrationalModeSet, UniformGrid
from .loader import load_spectrum, dump_spectrum, infer_format
from .processing import resample, discretize_modes, band_integral
from .reference import (
    RamanLine, REFERENCE_MEDIA, available_media, synthesize_spectrum,
    lines_spectrum, lorentzian_spectrum,
)

__all__ = [
    "RamanSpectrum", "VibrationalMode", "VibrationalModeSet", "UniformGrid",
    "load_spectrum", "dump_spectrum", "infer_format",
    "resample", "discretize_modes", "band_integral",
    "RamanLine", "REFERENCE_MEDIA", "available_media", "synthesize_spectrum",
    "lines_spectrum", "lorentzian_spectrum",
]
