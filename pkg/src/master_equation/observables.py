"""
Observables of the three-mode state: occupations, correlations, photon statistics.
"""
from typing import Tuple

import numpy as np

from src.exceptions import ConfigError, ZeroOccupationError
from .models import DensityOperator
from .operators import mode_operators

# Mean occupations at or below this are treated as empty
OCCUPATION_FLOOR = 1e-14


def mean_occupations(rho: DensityOperator) -> Tuple[float, float, float]:
    """(<n_S>, <n_aS>, <n_b>)."""
    ops = mode_operators(rho.n_max)
    return rho.expect(ops.n_s), rho.expect(ops.n_as), rho.expect(ops.n_b)


def g2_cross(rho: DensityOperator) -> float:
    """
    <a_S^+ a_aS^+ a_aS a_S> / (<n_S><n_aS>).

    Raises:
        ZeroOccupationError: either photon mode is empty
    """
    ops = mode_operators(rho.n_max)
    n_s, n_as = rho.expect(ops.n_s), rho.expect(ops.n_as)
    if n_s <= OCCUPATION_FLOOR or n_as <= OCCUPATION_FLOOR:
        raise ZeroOccupationError(f"zero mean occupation (<n_S>={n_s:.3g}, <n_aS>={n_as:.3g})")
    return rho.expect(ops.n_s @ ops.n_as) / (n_s * n_as)


def g2_auto(rho: DensityOperator, mode: str = "stokes") -> float:
    """Same-mode <a^+ a^+ a a>/<n>^2 for "stokes" or "anti_stokes"."""
    if mode not in ("stokes", "anti_stokes"):
        raise ConfigError(f"mode must be stokes or anti_stokes, got {mode!r}")
    ops = mode_operators(rho.n_max)
    number = ops.n_s if mode == "stokes" else ops.n_as
    mean = rho.expect(number)
    if mean <= OCCUPATION_FLOOR:
        raise ZeroOccupationError(f"zero mean occupation in {mode} mode")
    return rho.expect(number @ number - number) / mean ** 2


def photon_number_distribution(rho: DensityOperator) -> np.ndarray:
    """Joint P(n_S, n_aS) with the phonon traced out."""
    d = rho.n_max + 1
    diagonal = np.real(np.diagonal(rho.matrix)).reshape(d, d, d)
    return np.clip(diagonal.sum(axis=2), 0.0, None)
