"""
CLI Commands - one function per subcommand, each returning the files written.
"""
import logging
import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.config import DEFAULT_TEMPERATURE_K
from src.exceptions import ConfigError, GridMismatchError, InputError
from src.master_equation.models import ModelConfig
from src.master_equation.scan import scan_resonance
from src.observability.metrics import MetricsContext
from src.pairing.curve_io import group_rows, read_table
from src.pairing.models import (
    FLAG_NO_PAIR_GENERATION,
    FLAG_UNDEFINED,
    CorrelationCurve,
    GapParameters,
    PredictionOptions,
    Regime,
)
from src.pairing.predictor import predict_g2_curve, rank_media
from src.spectrum.loader import load_spectrum
from src.spectrum.models import RamanSpectrum
from src.spectrum.reference import synthesize_spectrum
from src.statistics.classicality import cauchy_schwarz_check, cauchy_schwarz_from_estimate
from src.statistics.counts import CountRecord, g2_from_counts, load_counts, simulate_classical_counts
from .models import RunConfig
from .output import write_curve, write_ranking, write_report, write_scan

logger = logging.getLogger(__name__)

_SHIFT_DIGITS = 9


def _require_grid(config: RunConfig):
    if config.grid is None:
        raise ConfigError(f"{config.command} needs --grid START:STOP:STEP")
    return config.grid


def _load_inputs(config: RunConfig, ctx: MetricsContext) -> List[Tuple[str, Optional[RamanSpectrum]]]:
    """(label, spectrum) per input; spectrum is None when ingestion failed."""
    inputs: List[Tuple[str, Optional[RamanSpectrum]]] = []
    for path in config.spectra:
        try:
            inputs.append((str(path), load_spectrum(path, temperature_k=config.temperature_k)))
        except InputError as e:
            logger.warning("[WARN] Skipping %s: %s", path, e)
            ctx.add_medium(ok=False)
            inputs.append((str(path), None))
    for medium in config.reference_media:
        try:
            spectrum = synthesize_spectrum(
                medium, temperature_k=config.temperature_k if config.temperature_k is not None else DEFAULT_TEMPERATURE_K,
            )
            inputs.append((medium, spectrum))
        except InputError as e:
            logger.warning("[WARN] Skipping reference medium %s: %s", medium, e)
            ctx.add_medium(ok=False)
            inputs.append((medium, None))
    return inputs


def run_predict(config: RunConfig, ctx: MetricsContext) -> List[str]:
    """Curve file per medium plus a ranking table when several media succeed."""
    if not config.spectra and not config.reference_media:
        raise ConfigError("predict needs at least one --spectrum or --reference input")
    grid = _require_grid(config)
    centers = sorted(set(float(c) for c in grid.values()) | set(config.rank_at))

    params = GapParameters(laser_intensity=config.laser_scale)
    options = PredictionOptions(
        threshold=config.threshold,
        default_gamma=config.default_gamma,
        temperature_k=config.temperature_k,
        coherent=not config.incoherent,
        include_sas_background=config.sas_background,
        sas_coefficient=config.sas_coefficient,
    )

    with ctx.phase("load"):
        inputs = _load_inputs(config, ctx)

    curves: List[CorrelationCurve] = []
    with ctx.phase("predict"):
        for label, spectrum in inputs:
            if spectrum is None:
                continue
            try:
                curve = predict_g2_curve(
                    spectrum, config.band_width, config.shape, centers,
                    params=params, options=options, workers=config.workers,
                )
            except InputError as e:
                logger.warning("[WARN] Skipping %s: %s", label, e)
                ctx.add_medium(ok=False)
                continue
            curves.append(curve)
            ctx.add_medium()
            ctx.add_points(len(curve.points))

    if not curves:
        raise InputError("no input spectrum could be processed")
    names = [curve.medium_name for curve in curves]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise ConfigError(f"duplicate medium names: {', '.join(duplicates)}")
    curves.sort(key=lambda c: c.medium_name)

    written = []
    with ctx.phase("write"):
        for curve in curves:
            written.append(str(write_curve(curve, config.out, config)))
            logger.info("[OK] %s: peak normalized g2 at %g cm^-1", curve.medium_name, curve.peak_shift())
        if len(curves) > 1:
            rank_centers = sorted(set(config.rank_at)) if config.rank_at else centers
            tables = [{"center_cm1": c, "entries": rank_media(curves, c)} for c in rank_centers]
            written.append(str(write_ranking(tables, config.out, config)))
    return written


def run_simulate(config: RunConfig, ctx: MetricsContext) -> List[str]:
    """Single-mode master-equation scan over the grid for each --t1 value."""
    grid = _require_grid(config)
    if not config.t1:
        raise ConfigError("simulate needs at least one --t1 value")
    template = ModelConfig(
        nu=config.nu,
        shift=config.nu,
        g_s=config.g_s,
        g_as=config.g_as,
        t1=config.t1[0],
        n_max=config.n_max,
        pulse_duration=config.pulse_duration,
    )
    temperature = DEFAULT_TEMPERATURE_K if config.temperature_k is None else config.temperature_k

    with ctx.phase("evolve"):
        result = scan_resonance(
            template, grid.values(), config.t1,
            temperature=temperature, dt=config.dt, workers=config.workers,
        )
    if config.workers > 1:
        ctx.add_worker_integrations(result.evolutions, result.rk4_steps)
    ctx.add_points(sum(len(curve.points) for curve in result.curves))

    with ctx.phase("write"):
        path = write_scan(result, config.out, config)
    logger.info("[OK] Scan of %d curve(s) written to %s", len(result.curves), path)
    return [str(path)]


def _mixture_record(config: RunConfig) -> CountRecord:
    rng = np.random.default_rng(config.seed)
    k = config.mixture_components
    stokes = rng.uniform(0.05, 0.5, size=k)
    anti_stokes = rng.uniform(0.05, 0.5, size=k)
    weights = rng.uniform(0.5, 1.5, size=k)
    return simulate_classical_counts(stokes, anti_stokes, weights, config.windows, rng)


def run_counts(config: RunConfig, ctx: MetricsContext) -> List[str]:
    """g2 estimates from a counts file (or a seeded classical mixture)."""
    with ctx.phase("load"):
        if config.counts is not None:
            record = load_counts(config.counts)
            source = str(config.counts)
        elif config.windows is not None:
            record = _mixture_record(config)
            source = "classical_mixture"
        else:
            raise ConfigError("counts needs --counts PATH or --windows N")

    with ctx.phase("estimate"):
        estimate = g2_from_counts(record)
        verdict = cauchy_schwarz_from_estimate(estimate)
    ctx.add_points(len(record))

    path = write_report(
        {"source": source, "estimate": estimate.to_dict(), "cauchy_schwarz": verdict.to_dict()},
        config.out / "counts.json", config,
    )
    logger.info("[OK] g2_SaS=%.4g (%s)", estimate.g2_s_as, verdict.status)
    return [str(path)]


def run_cs_check(config: RunConfig, ctx: MetricsContext) -> List[str]:
    if config.g2 is not None:
        g2_s_as, g2_ss, g2_asas = config.g2
        verdict = cauchy_schwarz_check(g2_s_as, g2_ss, g2_asas)
        payload: Dict[str, Any] = {"g2": {"s_as": g2_s_as, "ss": g2_ss, "asas": g2_asas}}
    elif config.counts is not None:
        estimate = g2_from_counts(load_counts(config.counts))
        verdict = cauchy_schwarz_from_estimate(estimate)
        payload = {"g2": {"s_as": estimate.g2_s_as, "ss": estimate.g2_ss, "asas": estimate.g2_asas}}
    else:
        raise ConfigError("cs-check needs --g2 SAS SS ASAS or --counts PATH")

    payload["cauchy_schwarz"] = verdict.to_dict()
    path = write_report(payload, config.out / "cs_check.json", config)
    logger.info("[OK] Cauchy-Schwarz verdict: %s", verdict.status)
    return [str(path)]


def _by_shift(rows: List[Dict[str, Any]]) -> Dict[float, Dict[str, Any]]:
    return {round(float(row["shift_cm1"]), _SHIFT_DIGITS): row for row in rows}


def _usable(row: Dict[str, Any]) -> bool:
    value = row.get("g2_raw")
    flags = row.get("flags") or []
    return (
        value is not None and math.isfinite(value) and value > 0
        and FLAG_UNDEFINED not in flags and FLAG_NO_PAIR_GENERATION not in flags
    )


def compare_curves(
    predicted: Dict[float, Dict[str, Any]],
    simulated: Dict[float, Dict[str, Any]],
    reference_shift: Optional[float],
    tolerance: float,
) -> Dict[str, Any]:
    """
    Relative differences after scaling both curves to 1 at the reference shift.

    Near-resonance points (by the simulated regime) are reported but do not
    count toward pass/fail.
    """
    shared = sorted(set(predicted) & set(simulated))
    if not shared:
        raise GridMismatchError("no shared support between predict and simulate grids")

    if reference_shift is None:
        candidates = [
            s for s in shared
            if simulated[s].get("regime") != Regime.NEAR_RESONANCE.value
            and _usable(predicted[s]) and _usable(simulated[s])
        ]
        if not candidates:
            raise GridMismatchError("no shared far-from-resonance shift to normalize at")
        reference = candidates[0]
    else:
        reference = round(float(reference_shift), _SHIFT_DIGITS)
        if reference not in shared:
            raise GridMismatchError(f"reference shift {reference_shift:g} is not on both grids")
        if not (_usable(predicted[reference]) and _usable(simulated[reference])):
            raise GridMismatchError(f"g2 undefined at reference shift {reference_shift:g}")

    p_ref = predicted[reference]["g2_raw"]
    s_ref = simulated[reference]["g2_raw"]
    points = []
    for shift in shared:
        p_row, s_row = predicted[shift], simulated[shift]
        regime = s_row.get("regime", "")
        usable = _usable(p_row) and _usable(s_row)
        p_norm = p_row["g2_raw"] / p_ref if usable else math.nan
        s_norm = s_row["g2_raw"] / s_ref if usable else math.nan
        rel = abs(p_norm - s_norm) / abs(s_norm) if usable else math.nan
        points.append({
            "shift_cm1": shift,
            "predicted": p_norm,
            "simulated": s_norm,
            "rel_diff": rel,
            "regime": regime,
            "included": usable and regime != Regime.NEAR_RESONANCE.value,
        })

    included = [p["rel_diff"] for p in points if p["included"]]
    max_rel = max(included) if included else math.nan
    return {
        "reference_shift": reference,
        "tolerance": tolerance,
        "max_rel_diff": max_rel,
        "n_included": len(included),
        "passed": bool(included) and max_rel <= tolerance,
        "points": points,
    }


def run_compare(config: RunConfig, ctx: MetricsContext) -> List[str]:
    """Cross-engine report: one comparison per simulated t1 curve."""
    if config.predict is None or config.simulate is None:
        raise ConfigError("compare needs --predict PATH and --simulate PATH")

    with ctx.phase("load"):
        _, predict_rows = read_table(config.predict)
        _, scan_rows = read_table(config.simulate)
    media = group_rows(predict_rows, "medium")
    if len(media) != 1:
        raise ConfigError(f"--predict must hold exactly one medium, found {len(media)}")
    (medium, medium_rows), = media.items()
    predicted = _by_shift(medium_rows)

    comparisons = []
    for t1, rows in group_rows(scan_rows, "t1").items():
        report = compare_curves(predicted, _by_shift(rows), config.reference_shift, config.tolerance)
        comparisons.append({"t1": t1, **report})
        ctx.add_points(len(report["points"]))
        level = logging.INFO if report["passed"] else logging.WARNING
        logger.log(level, "[%s] t1=%g: max relative difference %.3g (tolerance %g)",
                   "OK" if report["passed"] else "WARN", t1, report["max_rel_diff"], config.tolerance)

    passed = all(c["passed"] for c in comparisons)
    path = write_report(
        {"medium": medium, "passed": passed, "comparisons": comparisons},
        config.out / "compare.json", config,
    )
    return [str(path)]


COMMANDS = {
    "predict": run_predict,
    "simulate": run_simulate,
    "counts": run_counts,
    "cs-check": run_cs_check,
    "compare": run_compare,
}
