"""
Master Equation Module - Non-perturbative single-mode Stokes/anti-Stokes dynamics.
"""
from .operators import annihilation, creation, number, embed, mode_operators, basis_index
from .models import ModelConfig, DensityOperator, thermal_populations, coherent_state
from .hamiltonian import build_hamiltonian, excitation_number
from .lindblad import Trajectory, evolve, auto_time_step, step_norm
from .observables import mean_occupations, g2_cross, g2_auto, photon_number_distribution
from .scan import ScanPoint, ScanCurve, ScanResult, scan_resonance, resonance_regime

__all__ = [
    "annihilation", "creation", "number", "embed", "mode_operators", "basis_index",
    "ModelConfig", "DensityOperator", "thermal_populations", "coherent_state",
    "build_hamiltonian", "excitation_number",
    "Trajectory", "evolve", "auto_time_step", "step_norm",
    "mean_occupations", "g2_cross", "g2_auto", "photon_number_distribution",
    "ScanPoint", "ScanCurve", "ScanResult", "scan_resonance", "resonance_regime",
]
