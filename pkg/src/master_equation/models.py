"""
Master Equation Models - Single-mode model configuration and density operators.
"""
import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import (
    DEFAULT_G_AS,
    DEFAULT_G_S,
    DEFAULT_N_MAX,
    DEFAULT_PULSE_DURATION,
    DEFAULT_T1,
    HERMITICITY_TOL,
    POSITIVITY_FLOOR,
    TRACE_TOL,
    WEAK_COUPLING_RATIO,
)
from src.exceptions import ConfigError, InvariantBreachError
from .operators import basis_index

logger = logging.getLogger(__name__)


class ModelConfig(BaseModel):
    """
    One vibrational mode coupled to a Stokes and an anti-Stokes photon mode.

    All frequencies and couplings are in cm^-1; t1 and pulse_duration are in
    units of 1/cm^-1. t1 = inf switches relaxation off.
    """
    model_config = ConfigDict(frozen=True)

    nu: float = Field(..., gt=0)
    shift: float = Field(..., gt=0)
    g_s: float = Field(DEFAULT_G_S, ge=0)
    g_as: float = Field(DEFAULT_G_AS, ge=0)
    t1: float = Field(DEFAULT_T1, gt=0)
    n_thermal: float = Field(0.0, ge=0)
    n_max: int = DEFAULT_N_MAX
    pulse_duration: float = Field(DEFAULT_PULSE_DURATION, gt=0)

    @field_validator("n_max")
    @classmethod
    def _check_truncation(cls, value: int) -> int:
        if value < 2:
            raise ConfigError(f"truncation too small: n_max must be >= 2, got {value}")
        return value

    @model_validator(mode="after")
    def _warn_strong_coupling(self):
        if max(self.g_s, self.g_as) > WEAK_COUPLING_RATIO * self.nu:
            logger.warning(
                "[WARN] Coupling %.3g exceeds %.0f%% of nu=%.4g; weak-coupling model may not apply",
                max(self.g_s, self.g_as), 100 * WEAK_COUPLING_RATIO, self.nu,
            )
        return self

    @property
    def detuning(self) -> float:
        """Stokes two-photon detuning d_S = shift - nu."""
        return self.shift - self.nu

    @property
    def gamma_1(self) -> float:
        return 0.0 if math.isinf(self.t1) else 1.0 / self.t1

    @property
    def dims(self) -> Tuple[int, int, int]:
        return (self.n_max + 1,) * 3


@dataclass(frozen=True)
class DensityOperator:
    """Density matrix on Stokes x anti-Stokes x phonon, each truncated at n_max."""
    matrix: np.ndarray
    n_max: int

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        dim = (self.n_max + 1) ** 3
        if matrix.shape != (dim, dim):
            raise ConfigError(f"density matrix must be {dim}x{dim} for n_max={self.n_max}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dims(self) -> Tuple[int, int, int]:
        return (self.n_max + 1,) * 3

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def expect(self, op: np.ndarray) -> float:
        return float(np.real(np.trace(op @ self.matrix)))

    def validate(self, time: float = 0.0) -> "DensityOperator":
        """
        Raises:
            InvariantBreachError: Hermiticity, unit trace or positivity violated
        """
        rho = self.matrix
        hermiticity = float(np.max(np.abs(rho - rho.conj().T)))
        if hermiticity > HERMITICITY_TOL:
            raise InvariantBreachError(f"hermiticity defect {hermiticity:.3g}", time)
        trace_error = abs(self.trace - 1.0)
        if trace_error > TRACE_TOL:
            raise InvariantBreachError(f"trace defect {trace_error:.3g}", time)
        lowest = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
        if lowest < POSITIVITY_FLOOR:
            raise InvariantBreachError(f"negative eigenvalue {lowest:.3g}", time)
        return self

    def photon_reduced(self) -> np.ndarray:
        """Partial trace over the phonon: matrix on Stokes x anti-Stokes."""
        d = self.n_max + 1
        tensor = self.matrix.reshape(d, d, d, d, d, d)
        return np.einsum("ijkabk->ijab", tensor).reshape(d * d, d * d)

    # Constructors

    @classmethod
    def from_state_vector(cls, psi: Sequence[complex], n_max: int) -> "DensityOperator":
        psi = np.asarray(psi, dtype=complex)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ConfigError("state vector is zero")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()), n_max)

    @classmethod
    def fock(cls, n_s: int, n_as: int, n_b: int, n_max: int) -> "DensityOperator":
        psi = np.zeros((n_max + 1) ** 3, dtype=complex)
        psi[basis_index(n_s, n_as, n_b, n_max)] = 1.0
        return cls.from_state_vector(psi, n_max)

    @classmethod
    def vacuum(cls, n_max: int) -> "DensityOperator":
        return cls.fock(0, 0, 0, n_max)

    @classmethod
    def product(cls, rho_s: np.ndarray, rho_as: np.ndarray, rho_b: np.ndarray) -> "DensityOperator":
        n_max = np.asarray(rho_s).shape[0] - 1
        return cls(np.kron(np.kron(rho_s, rho_as), rho_b), n_max)

    @classmethod
    def thermal_phonon(cls, n_thermal: float, n_max: int) -> "DensityOperator":
        """Photon vacuum times a thermal phonon state renormalized inside the truncation."""
        vacuum = np.zeros((n_max + 1, n_max + 1), dtype=complex)
        vacuum[0, 0] = 1.0
        return cls.product(vacuum, vacuum, thermal_populations(n_thermal, n_max))


def thermal_populations(n_thermal: float, n_max: int) -> np.ndarray:
    """Diagonal thermal state with mean n_thermal, truncated at n_max and renormalized."""
    if n_thermal < 0:
        raise ConfigError("thermal occupation must be >= 0")
    if n_thermal == 0:
        populations = np.zeros(n_max + 1)
        populations[0] = 1.0
    else:
        ratio = n_thermal / (n_thermal + 1.0)
        populations = ratio ** np.arange(n_max + 1)
        populations = populations / populations.sum()
    return np.diag(populations).astype(complex)


def coherent_state(alpha: complex, n_max: int) -> np.ndarray:
    """Single-mode coherent state |alpha><alpha| truncated at n_max and renormalized."""
    n = np.arange(n_max + 1)
    log_fact = np.array([math.lgamma(k + 1) for k in n])
    amplitudes = np.exp(-0.5 * abs(alpha) ** 2 - 0.5 * log_fact) * np.power(complex(alpha), n)
    amplitudes = amplitudes / np.linalg.norm(amplitudes)
    return np.outer(amplitudes, amplitudes.conj())
