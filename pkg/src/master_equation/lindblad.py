"""
Lindblad Integrator - Fixed-step RK4 on the phonon-damped master equation.

    d rho/dt = -i[H, rho] + g1(n_th+1) D[b] rho + g1 n_th D[b^+] rho

written as -i(H_eff rho - rho H_eff^+) + sum_k r_k L_k rho L_k^+ with
H_eff = H - (i/2) sum_k r_k L_k^+ L_k.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.config import AUTO_STEP_SAFETY, STEP_SIZE_LIMIT
from src.exceptions import ConfigError, StepSizeError
from src.observability.metrics import metrics_collector
from .hamiltonian import build_hamiltonian
from .models import DensityOperator, ModelConfig
from .operators import mode_operators

logger = logging.getLogger(__name__)

# Smallest step count auto_time_step allows over a pulse
MIN_STEPS_PER_PULSE = 100


@dataclass(frozen=True)
class Trajectory:
    times: List[float]
    states: List[DensityOperator]
    steps: int

    @property
    def final(self) -> DensityOperator:
        return self.states[-1]


def _jump_operators(config: ModelConfig) -> List[Tuple[float, np.ndarray]]:
    ops = mode_operators(config.n_max)
    gamma = config.gamma_1
    jumps = [(gamma * (config.n_thermal + 1.0), ops.b), (gamma * config.n_thermal, ops.b.conj().T)]
    return [(rate, op) for rate, op in jumps if rate > 0]


def step_norm(config: ModelConfig) -> float:
    """||H||_2 + gamma_1, the rate scale bounding the time step."""
    return float(np.linalg.norm(build_hamiltonian(config), 2)) + config.gamma_1


def auto_time_step(
    config: ModelConfig,
    safety: float = AUTO_STEP_SAFETY,
    t_end: Optional[float] = None,
) -> float:
    """Largest step satisfying dt*(||H|| + gamma_1) < limit, scaled by safety."""
    if not 0 < safety < 1:
        raise ConfigError("safety factor must lie in (0, 1)")
    scale = step_norm(config)
    dt = safety * STEP_SIZE_LIMIT / scale if scale > 0 else math.inf
    if t_end is not None:
        dt = min(dt, t_end / MIN_STEPS_PER_PULSE)
    if not math.isfinite(dt):
        dt = safety * STEP_SIZE_LIMIT
    return dt


class _Propagator:
    """RK4 stepper with the effective Hamiltonian and jump terms precomputed."""

    def __init__(self, config: ModelConfig):
        hamiltonian = build_hamiltonian(config)
        self.jumps = _jump_operators(config)
        decay = sum(rate * op.conj().T @ op for rate, op in self.jumps)
        self.h_eff = hamiltonian - 0.5j * decay if self.jumps else hamiltonian
        self.h_eff_dag = self.h_eff.conj().T
        self.jumps_dag = [(rate, op, op.conj().T) for rate, op in self.jumps]

    def rhs(self, rho: np.ndarray) -> np.ndarray:
        drho = -1j * (self.h_eff @ rho - rho @ self.h_eff_dag)
        for rate, op, op_dag in self.jumps_dag:
            drho += rate * (op @ rho @ op_dag)
        return drho

    def step(self, rho: np.ndarray, dt: float) -> np.ndarray:
        k1 = self.rhs(rho)
        k2 = self.rhs(rho + 0.5 * dt * k1)
        k3 = self.rhs(rho + 0.5 * dt * k2)
        k4 = self.rhs(rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        return 0.5 * (rho + rho.conj().T)


def evolve(
    rho0: DensityOperator,
    config: ModelConfig,
    dt: Optional[float] = None,
    t_end: Optional[float] = None,
    store_every: int = 1,
    validate: bool = True,
) -> Trajectory:
    """
    Integrate the master equation from rho0 up to t_end.

    Args:
        rho0: initial state, validated before the first step
        config: model; its n_max must match rho0
        dt: time step, chosen by auto_time_step when omitted
        t_end: end time, defaults to config.pulse_duration; a remainder
            shorter than dt is covered by one shortened step
        store_every: keep every k-th step (the initial and final states
            are always kept)
        validate: check density-operator invariants on every stored state

    Raises:
        StepSizeError: dt*(||H||_2 + gamma_1) >= STEP_SIZE_LIMIT
        InvariantBreachError: a stored state left the physical set
    """
    if rho0.n_max != config.n_max:
        raise ConfigError(f"state n_max {rho0.n_max} differs from config n_max {config.n_max}")
    if store_every < 1:
        raise ConfigError("store_every must be >= 1")
    t_end = config.pulse_duration if t_end is None else t_end
    if t_end < 0:
        raise ConfigError("t_end must be >= 0")
    if dt is None:
        dt = auto_time_step(config, t_end=t_end or None)
    if dt <= 0:
        raise StepSizeError(f"time step must be positive, got {dt}")
    scale = step_norm(config)
    if dt * scale >= STEP_SIZE_LIMIT:
        raise StepSizeError(
            f"dt*(||H|| + gamma_1) = {dt * scale:.3g} >= {STEP_SIZE_LIMIT}; reduce dt below {STEP_SIZE_LIMIT / scale:.3g}"
        )

    if validate:
        rho0.validate(0.0)
    propagator = _Propagator(config)

    full_steps = int(math.floor(t_end / dt + 1e-9))
    remainder = t_end - full_steps * dt
    step_sizes = [dt] * full_steps
    if remainder > 1e-12 * max(1.0, t_end):
        step_sizes.append(remainder)

    rho = np.array(rho0.matrix)
    times, states = [0.0], [rho0]
    t = 0.0
    for idx, h in enumerate(step_sizes, start=1):
        rho = propagator.step(rho, h)
        t = t + h if idx < len(step_sizes) else t_end
        if idx % store_every == 0 or idx == len(step_sizes):
            state = DensityOperator(rho, config.n_max)
            if validate:
                state.validate(t)
            times.append(t)
            states.append(state)

    metrics_collector.add_integration(len(step_sizes))
    logger.debug("Evolved %d RK4 steps to t=%.4g (shift %.4g)", len(step_sizes), t_end, config.shift)
    return Trajectory(times=times, states=states, steps=len(step_sizes))
