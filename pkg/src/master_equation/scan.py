"""
Resonance Scan - g2 versus filter shift for one or more phonon lifetimes.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.config import NEAR_RESONANCE_FACTOR
from src.exceptions import ConfigError, NumericalError
from src.parallel import ordered_map
from src.pairing.models import FLAG_NO_PAIR_GENERATION, Regime
from src.statistics.thermal import bose_einstein
from .lindblad import auto_time_step, evolve
from .models import DensityOperator, ModelConfig
from .observables import OCCUPATION_FLOOR, g2_cross, mean_occupations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScanPoint:
    shift: float
    g2: float
    g2_normalized: float
    mean_s: float
    mean_as: float
    coincidence: float
    regime: str
    flags: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ScanCurve:
    """g2 at the end of the pulse versus shift, for one t1."""
    t1: float
    nu: float
    g_s: float
    g_as: float
    n_max: int
    points: List[ScanPoint]

    @property
    def shifts(self) -> List[float]:
        return [p.shift for p in self.points]

    @property
    def g2(self) -> List[float]:
        return [p.g2 for p in self.points]

    def point_at(self, shift: float) -> ScanPoint:
        for point in self.points:
            if math.isclose(point.shift, shift, rel_tol=1e-12, abs_tol=1e-9):
                return point
        raise KeyError(f"no point at shift {shift}")

    def to_rows(self) -> List[Dict[str, Any]]:
        rows = []
        for p in self.points:
            rows.append({
                "shift_cm1": p.shift,
                "g2_norm": p.g2_normalized,
                "overlap": None,
                "regime": p.regime,
                "g2_raw": p.g2,
                "correlated_rate": p.coincidence - p.mean_s * p.mean_as,
                "accidental_rate": p.mean_s * p.mean_as,
                "flags": list(p.flags),
                "medium": "single-mode",
                "t1": self.t1,
                "nu": self.nu,
                "g_s": self.g_s,
                "g_as": self.g_as,
                "n_max": self.n_max,
            })
        return rows


@dataclass(frozen=True)
class ScanResult:
    curves: List[ScanCurve]
    config: Dict[str, Any] = field(default_factory=dict)
    evolutions: int = 0
    rk4_steps: int = 0

    def curve(self, t1: float) -> ScanCurve:
        for curve in self.curves:
            if math.isclose(curve.t1, t1):
                return curve
        raise KeyError(f"no curve for t1={t1}")


def resonance_regime(config: ModelConfig) -> Regime:
    width = NEAR_RESONANCE_FACTOR * max(config.g_s, config.g_as, config.gamma_1)
    return Regime.NEAR_RESONANCE if abs(config.detuning) <= width else Regime.VIRTUAL


def _scan_point(job: Tuple[float, float], template: ModelConfig, dt: Optional[float]) -> Tuple[int, float, float, float, float]:
    shift, t1 = job
    config = template.model_copy(update={"shift": shift, "t1": t1})
    rho0 = DensityOperator.thermal_phonon(config.n_thermal, config.n_max)
    step = dt if dt is not None else auto_time_step(config, t_end=config.pulse_duration)
    try:
        # Only the initial and final states are kept and validated
        trajectory = evolve(rho0, config, dt=step, t_end=config.pulse_duration, store_every=10 ** 9)
    except NumericalError as e:
        raise e.with_context(shift=shift, t1=t1)

    final = trajectory.final
    mean_s, mean_as, _ = mean_occupations(final)
    if mean_s <= OCCUPATION_FLOOR or mean_as <= OCCUPATION_FLOOR:
        return trajectory.steps, mean_s, mean_as, 0.0, math.nan
    coincidence = g2_cross(final) * mean_s * mean_as
    return trajectory.steps, mean_s, mean_as, coincidence, coincidence / (mean_s * mean_as)


def scan_resonance(
    template: ModelConfig,
    shifts: Sequence[float],
    t1_values: Sequence[float],
    temperature: Optional[float] = None,
    dt: Optional[float] = None,
    workers: int = 1,
) -> ScanResult:
    """
    Evolve photon vacuum x thermal phonon over one pulse at every (shift, t1).

    Args:
        template: model; its shift and t1 are replaced per point
        shifts: filter shifts in cm^-1 (sorted in the output)
        t1_values: one output curve per value, in the given order
        temperature: sets n_thermal through Bose-Einstein when given
        dt: fixed time step; chosen per point when omitted
        workers: process pool size; results do not depend on it

    A point where either photon mode stays empty gets g2 = 1 and the flag
    no_pair_generation.
    """
    shifts = sorted(float(s) for s in shifts)
    if not shifts:
        raise ConfigError("scan grid is empty")
    if not t1_values:
        raise ConfigError("at least one t1 value is required")
    if any(s <= 0 for s in shifts):
        raise ConfigError("scan shifts must be positive")
    if any(not t1 > 0 for t1 in t1_values):
        raise ConfigError("t1 values must be positive")
    if not (shifts[0] <= template.nu <= shifts[-1]):
        logger.warning("[WARN] Scan grid [%g, %g] does not span nu=%g", shifts[0], shifts[-1], template.nu)

    if temperature is not None:
        template = template.model_copy(update={"n_thermal": bose_einstein(template.nu, temperature)})

    jobs = [(shift, float(t1)) for t1 in t1_values for shift in shifts]
    outcomes = ordered_map(partial(_scan_point, template=template, dt=dt), jobs, workers)

    curves = []
    for i, t1 in enumerate(t1_values):
        block = outcomes[i * len(shifts):(i + 1) * len(shifts)]
        defined = [g2 for *_, g2 in block if math.isfinite(g2)]
        peak = max(defined) if defined else 1.0
        points = []
        for shift, (_, mean_s, mean_as, coincidence, g2) in zip(shifts, block):
            config = template.model_copy(update={"shift": shift, "t1": float(t1)})
            flags: Tuple[str, ...] = ()
            if not math.isfinite(g2):
                g2, flags = 1.0, (FLAG_NO_PAIR_GENERATION,)
                norm = 1.0 / peak
            else:
                norm = g2 / peak
            points.append(ScanPoint(
                shift=shift,
                g2=g2,
                g2_normalized=norm,
                mean_s=mean_s,
                mean_as=mean_as,
                coincidence=coincidence,
                regime=resonance_regime(config).value,
                flags=flags,
            ))
        curves.append(ScanCurve(
            t1=float(t1),
            nu=template.nu,
            g_s=template.g_s,
            g_as=template.g_as,
            n_max=template.n_max,
            points=points,
        ))
        flagged = sum(1 for p in points if p.flags)
        if flagged:
            logger.warning("[WARN] t1=%g: %d point(s) without pair generation", t1, flagged)

    return ScanResult(
        curves=curves,
        config={**template.model_dump(exclude={"shift", "t1"}), "dt": dt, "temperature_K": temperature},
        evolutions=len(outcomes),
        rk4_steps=sum(outcome[0] for outcome in outcomes),
    )
