"""
Truncated ladder operators on the Stokes x anti-Stokes x phonon product space.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from src.exceptions import ConfigError

# Mode order in every product-space operator
STOKES, ANTI_STOKES, PHONON = 0, 1, 2


def annihilation(n_max: int) -> np.ndarray:
    """a|n> = sqrt(n)|n-1> on Fock states 0..n_max."""
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1).astype(complex)


def creation(n_max: int) -> np.ndarray:
    return annihilation(n_max).conj().T


def number(n_max: int) -> np.ndarray:
    return np.diag(np.arange(n_max + 1, dtype=float)).astype(complex)


def embed(op: np.ndarray, position: int, n_modes: int = 3) -> np.ndarray:
    """Place a single-mode operator at one position of the product space."""
    identity = np.eye(op.shape[0], dtype=complex)
    result = np.ones((1, 1), dtype=complex)
    for idx in range(n_modes):
        result = np.kron(result, op if idx == position else identity)
    return result


@dataclass(frozen=True)
class ModeOperators:
    """Ladder and number operators of the three modes, embedded."""
    n_max: int
    a_s: np.ndarray
    a_as: np.ndarray
    b: np.ndarray
    n_s: np.ndarray
    n_as: np.ndarray
    n_b: np.ndarray
    identity: np.ndarray

    @property
    def dims(self) -> Tuple[int, int, int]:
        return (self.n_max + 1,) * 3

    @property
    def dim(self) -> int:
        return (self.n_max + 1) ** 3


@lru_cache(maxsize=8)
def mode_operators(n_max: int) -> ModeOperators:
    a = annihilation(n_max)
    n = number(n_max)
    ops = ModeOperators(
        n_max=n_max,
        a_s=embed(a, STOKES),
        a_as=embed(a, ANTI_STOKES),
        b=embed(a, PHONON),
        n_s=embed(n, STOKES),
        n_as=embed(n, ANTI_STOKES),
        n_b=embed(n, PHONON),
        identity=np.eye((n_max + 1) ** 3, dtype=complex),
    )
    for matrix in (ops.a_s, ops.a_as, ops.b, ops.n_s, ops.n_as, ops.n_b, ops.identity):
        matrix.setflags(write=False)
    return ops


def basis_index(n_s: int, n_as: int, n_b: int, n_max: int) -> int:
    """Flat index of |n_s, n_as, n_b> in the product basis."""
    dim = n_max + 1
    for value in (n_s, n_as, n_b):
        if not 0 <= value <= n_max:
            raise ConfigError(f"occupation {value} outside 0..{n_max}")
    return (n_s * dim + n_as) * dim + n_b
