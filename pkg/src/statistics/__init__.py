"""
Statistics Module - Thermal factors, accidental background, count estimators
and the Cauchy-Schwarz classicality bound.
"""
from .thermal import bose_einstein, thermal_ratio, anti_stokes_background, is_low_signal
from .background import BackgroundModel, accidental_model
from .counts import (
    CountRecord, G2Estimate, g2_from_counts, load_counts, dump_counts,
    sample_counts, simulate_classical_counts,
)
from .classicality import (
    AUTOS_UNMEASURABLE, CLASSICAL, NONCLASSICAL,
    CauchySchwarzResult, cauchy_schwarz_check, cauchy_schwarz_from_estimate,
)

__all__ = [
    "bose_einstein", "thermal_ratio", "anti_stokes_background", "is_low_signal",
    "BackgroundModel", "accidental_model",
    "CountRecord", "G2Estimate", "g2_from_counts", "load_counts", "dump_counts",
    "sample_counts", "simulate_classical_counts",
    "AUTOS_UNMEASURABLE", "CLASSICAL", "NONCLASSICAL",
    "CauchySchwarzResult", "cauchy_schwarz_check", "cauchy_schwarz_from_estimate",
]
