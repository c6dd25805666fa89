"""
Perturbative g2(0) Predictor - correlated pairs against accidental coincidences.

For each symmetric filter pair centered at shift d0:
    C  = integral of |A(d)|^2 * T_S(d) * T_aS(d)
    S  = integral of I(d) * T_S(d)
    Th = integral of I(d) * n/(n+1) * T_aS(d)
    U  = S*L * (Th*L + kappa*C1*L^2),  C1 = C / L^2
    g2 = 1 + C / U
"""
import logging
import math
from functools import partial
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
from scipy.integrate import trapezoid

from src.exceptions import BandOutsideSupportError, ConfigError
from src.parallel import ordered_map
from src.spectrum.models import RamanSpectrum, VibrationalModeSet
from src.spectrum.processing import band_integral, discretize_modes
from src.statistics.background import BackgroundModel, accidental_model
from src.statistics.thermal import anti_stokes_background, is_low_signal
from .filters import band_overlap
from .gap import pair_rate_density
from .models import (
    FLAG_LOW_SIGNAL,
    FLAG_UNDEFINED,
    CorrelationCurve,
    CorrelationPoint,
    FilterBand,
    FilterShape,
    GapParameters,
    PredictionOptions,
    Regime,
    normalize_points,
)

logger = logging.getLogger(__name__)


def correlated_rate(
    modes: VibrationalModeSet,
    stokes: FilterBand,
    antistokes: FilterBand,
    params: GapParameters,
    coherent: bool = True,
    n_points: int = 65,
) -> float:
    """Band-weighted pair rate; exactly 0 when the bands do not overlap."""
    lo = max(stokes.support()[0], antistokes.support()[0])
    hi = min(stokes.support()[1], antistokes.support()[1])
    if lo >= hi:
        return 0.0
    nodes = np.linspace(lo, hi, n_points)
    integrand = (
        pair_rate_density(nodes, modes, params, coherent)
        * stokes.transmission(nodes)
        * antistokes.transmission(nodes)
    )
    return float(trapezoid(integrand, nodes))


def classify_regime(center: float, band_width: float, modes: VibrationalModeSet) -> Regime:
    """
    near_resonance: the band widened by each mode's gamma holds that mode.
    mixed: a mode lies within one further band width.

    Modes are the above-threshold spectral bins, not fitted lines, so any
    band over a broad feature (the water OH stretch, for instance) holds
    some bin and is labelled near_resonance. The label says a bin sits
    inside the band; it does not mean the perturbative value is unusable
    there. The single-mode comparison uses the master-equation regime.
    """
    lo, hi = center - band_width / 2, center + band_width / 2
    nu, gamma = modes.nu, modes.gamma
    if np.any((nu >= lo - gamma) & (nu <= hi + gamma)):
        return Regime.NEAR_RESONANCE
    if np.any((nu >= lo - gamma - band_width) & (nu <= hi + gamma + band_width)):
        return Regime.MIXED
    return Regime.VIRTUAL


def predict_point(
    spectrum: RamanSpectrum,
    modes: VibrationalModeSet,
    center: float,
    band_width: float,
    shape: FilterShape,
    params: GapParameters,
    options: PredictionOptions,
) -> CorrelationPoint:
    """Raw g2 at one band center; g2_normalized is left as NaN."""
    band = FilterBand(center=center, width=band_width, shape=shape)
    laser = params.laser_intensity
    n_points = options.quadrature_points

    overlap = band_overlap(band, band)
    correlated = correlated_rate(modes, band, band, params, options.coherent, n_points)
    stokes_rate = band_integral(spectrum, band, n_points=n_points)
    thermal = anti_stokes_background(
        spectrum, band, options.temperature_k, options.prefactor_power, n_points
    )
    sas = options.sas_coefficient * correlated / laser ** 2 if options.include_sas_background else 0.0
    accidental = accidental_model(BackgroundModel(stokes_rate, thermal, sas), laser)

    flags = []
    if accidental > 0:
        g2_raw = 1.0 + correlated / accidental
    else:
        g2_raw = math.nan
        flags.append(FLAG_UNDEFINED)
    if is_low_signal(thermal, band_width, spectrum.peak):
        flags.append(FLAG_LOW_SIGNAL)

    return CorrelationPoint(
        shift=float(center),
        g2_normalized=math.nan,
        g2_raw=g2_raw,
        overlap_factor=overlap,
        correlated_rate=correlated,
        accidental_rate=accidental,
        regime=classify_regime(center, band_width, modes).value,
        flags=tuple(flags),
    )


def predict_g2_curve(
    spectrum: RamanSpectrum,
    band_width: float,
    shape="tophat",
    grid: Iterable[float] = (),
    params: Optional[GapParameters] = None,
    options: Optional[PredictionOptions] = None,
    workers: int = 1,
) -> CorrelationCurve:
    """
    Normalized g2(0) curve over band centers for one medium.

    The spectrum is normalized to peak 1 before use, so the curve does not
    depend on the intensity scale. Points are returned sorted by shift.

    Raises:
        ConfigError: non-positive band width or empty grid, or a band reaching the laser line
        BandOutsideSupportError: a band reaches outside the spectrum
        EmptyModeSetError: no spectral bin reaches the threshold
    """
    params = params or GapParameters()
    options = options or PredictionOptions()
    shape = FilterShape(shape)
    if band_width <= 0:
        raise ConfigError(f"band width must be positive, got {band_width}")
    centers = sorted(float(c) for c in grid)
    if not centers:
        raise ConfigError("prediction grid is empty")
    if centers[0] <= band_width / 2:
        raise ConfigError(f"band at {centers[0]:g} with width {band_width:g} includes the laser line")

    normalized = spectrum.normalized()
    for center in centers:
        lo, hi = FilterBand(center=center, width=band_width, shape=shape).support()
        if not normalized.covers(lo, hi):
            raise BandOutsideSupportError(
                f"band centered at {center:g} spans [{lo:g}, {hi:g}], outside spectrum "
                f"[{normalized.shifts[0]:g}, {normalized.shifts[-1]:g}]"
            )
    modes = discretize_modes(normalized, options.threshold, options.default_gamma)

    task = partial(
        predict_point, normalized, modes,
        band_width=band_width, shape=shape, params=params, options=options,
    )
    points = normalize_points(ordered_map(task, centers, workers))

    undefined = sum(1 for p in points if FLAG_UNDEFINED in p.flags)
    if undefined:
        logger.warning("[WARN] %s: %d point(s) with zero accidental rate flagged undefined",
                       spectrum.medium_name, undefined)

    temperature = spectrum.temperature_k if options.temperature_k is None else options.temperature_k
    return CorrelationCurve(
        medium_name=spectrum.medium_name,
        points=points,
        metadata={
            "band_width_cm1": band_width,
            "shape": shape.value,
            "laser_intensity": params.laser_intensity,
            "temperature_K": temperature,
            "n_modes": len(modes),
            "options": options.model_dump(),
        },
    )


def rank_media(curves: Sequence[CorrelationCurve], center: float) -> List[Dict]:
    """
    Ranking table of media at one band center, highest raw g2 first.

    Undefined points rank last; ties are ordered by medium name.
    """
    entries = []
    for curve in curves:
        point = curve.point_at(center)
        entries.append({
            "medium": curve.medium_name,
            "shift_cm1": point.shift,
            "g2_raw": point.g2_raw,
            "g2_norm": point.g2_normalized,
            "regime": point.regime,
            "flags": list(point.flags),
        })

    def sort_key(entry):
        defined = math.isfinite(entry["g2_raw"])
        return (not defined, -entry["g2_raw"] if defined else 0.0, entry["medium"])

    entries.sort(key=sort_key)
    for rank, entry in enumerate(entries, start=1):
        entry["rank"] = rank
    return entries
