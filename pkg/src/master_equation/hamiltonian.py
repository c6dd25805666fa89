"""
Rotating-frame Hamiltonian of one vibrational mode driven by a classical pump.
"""
import numpy as np

from src.exceptions import ConfigError
from .models import ModelConfig
from .operators import mode_operators


def build_hamiltonian(config: ModelConfig) -> np.ndarray:
    """
    H = d*n_S - d*n_aS + g_s*(a_S^+ b^+ + a_S b) + g_as*(a_aS^+ b + a_aS b^+)

    with d = shift - nu. Stokes scattering creates a photon-phonon pair,
    anti-Stokes scattering converts a phonon into a photon.
    """
    if config.n_max < 2:
        raise ConfigError(f"truncation too small: n_max must be >= 2, got {config.n_max}")
    ops = mode_operators(config.n_max)
    d = config.detuning
    stokes_pair = ops.a_s.conj().T @ ops.b.conj().T
    anti_stokes_swap = ops.a_as.conj().T @ ops.b
    hamiltonian = (
        d * ops.n_s
        - d * ops.n_as
        + config.g_s * (stokes_pair + stokes_pair.conj().T)
        + config.g_as * (anti_stokes_swap + anti_stokes_swap.conj().T)
    )
    # Hermitian up to rounding in the products above
    return 0.5 * (hamiltonian + hamiltonian.conj().T)


def excitation_number(n_max: int) -> np.ndarray:
    """N = n_S - n_aS - n_b, which commutes with the Hamiltonian as built."""
    ops = mode_operators(n_max)
    return ops.n_s - ops.n_as - ops.n_b
