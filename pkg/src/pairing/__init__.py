"""
Pairing Module - Bosonic BCS gap, filter overlap and the perturbative g2 predictor.
"""
from .models import (
    GapParameters, FilterBand, FilterShape, Regime, PredictionOptions,
    CorrelationPoint, CorrelationCurve,
    FLAG_UNDEFINED, FLAG_LOW_SIGNAL, FLAG_NO_PAIR_GENERATION,
)
from .gap import gap_delta, pair_amplitude, pair_rate_density
from .filters import band_overlap
from .predictor import correlated_rate, classify_regime, predict_point, predict_g2_curve, rank_media

__all__ = [
    "GapParameters", "FilterBand", "FilterShape", "Regime", "PredictionOptions",
    "CorrelationPoint", "CorrelationCurve",
    "FLAG_UNDEFINED", "FLAG_LOW_SIGNAL", "FLAG_NO_PAIR_GENERATION",
    "gap_delta", "pair_amplitude", "pair_rate_density", "band_overlap",
    "correlated_rate", "classify_regime", "predict_point", "predict_g2_curve", "rank_media",
]
