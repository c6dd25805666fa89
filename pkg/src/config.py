"""
Raman Pair Correlator - Configuration Module
Centralized defaults table for all engines. Every value may be overridden
through the environment (or a .env file); none is required.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Paths
BASE_DIR = Path(__file__).parent.parent
DATA_DIR = BASE_DIR / "data"
SPECTRA_DIR = DATA_DIR / "spectra"
OUTPUT_DIR = Path(os.getenv("RAMANPAIR_OUTPUT_DIR", str(BASE_DIR / "out")))

# Artifact version embedded in every output file
ARTIFACT_VERSION = "1.0.0"

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# Physical constants
SECOND_RADIATION_CONSTANT = 1.4388  # cm·K

# Spectrum ingestion / discretization
DEFAULT_THRESHOLD = float(os.getenv("DEFAULT_THRESHOLD", "0.02"))
DEFAULT_TEMPERATURE_K = float(os.getenv("DEFAULT_TEMPERATURE_K", "295"))
MIN_SPECTRUM_POINTS = 8
DEFAULT_GAMMA_SPACINGS = 2.0  # default_gamma = 2 x grid spacing

# Filters and perturbative prediction
DEFAULT_BAND_WIDTH = float(os.getenv("DEFAULT_BAND_WIDTH", "100"))
DEFAULT_FILTER_SHAPE = os.getenv("DEFAULT_FILTER_SHAPE", "tophat")
GAUSSIAN_SUPPORT_WIDTHS = 1.5
DEFAULT_QUADRATURE_POINTS = int(os.getenv("DEFAULT_QUADRATURE_POINTS", "65"))
DEFAULT_LASER_INTENSITY = 1.0
SAS_SELF_COEFFICIENT = float(os.getenv("SAS_SELF_COEFFICIENT", "0.1"))
LOW_SIGNAL_RATIO = float(os.getenv("LOW_SIGNAL_RATIO", "1e-8"))  # thermal aS per cm^-1 vs peak Stokes

# Anti-Stokes / Stokes frequency prefactor (off by default)
ANTI_STOKES_PREFACTOR_POWER = int(os.getenv("ANTI_STOKES_PREFACTOR_POWER", "0"))
LASER_WAVENUMBER = float(os.getenv("LASER_WAVENUMBER", "12500"))  # 800 nm

# Master equation
DEFAULT_N_MAX = int(os.getenv("DEFAULT_N_MAX", "3"))
DEFAULT_G_S = float(os.getenv("DEFAULT_G_S", "0.1"))
DEFAULT_G_AS = float(os.getenv("DEFAULT_G_AS", "0.1"))
DEFAULT_T1 = float(os.getenv("DEFAULT_T1", "0.5"))
DEFAULT_PULSE_DURATION = float(os.getenv("DEFAULT_PULSE_DURATION", "8.0"))
STEP_SIZE_LIMIT = 0.1  # dt * (|H| + gamma_1) must stay below this
AUTO_STEP_SAFETY = float(os.getenv("AUTO_STEP_SAFETY", "0.5"))
WEAK_COUPLING_RATIO = 0.1
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-9
POSITIVITY_FLOOR = -1e-9

# Cross-engine comparison
NEAR_RESONANCE_FACTOR = 5.0
COMPARE_TOLERANCE = float(os.getenv("COMPARE_TOLERANCE", "0.05"))

# Execution
DEFAULT_WORKERS = int(os.getenv("DEFAULT_WORKERS", "1"))
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "0"))

# Documented defaults table, embedded in every output file
PHYSICS_DEFAULTS = {
    "threshold": DEFAULT_THRESHOLD,
    "temperature_K": DEFAULT_TEMPERATURE_K,
    "second_radiation_constant_cmK": SECOND_RADIATION_CONSTANT,
    "default_gamma_spacings": DEFAULT_GAMMA_SPACINGS,
    "band_width_cm1": DEFAULT_BAND_WIDTH,
    "filter_shape": DEFAULT_FILTER_SHAPE,
    "quadrature_points": DEFAULT_QUADRATURE_POINTS,
    "sas_self_coefficient": SAS_SELF_COEFFICIENT,
    "low_signal_ratio": LOW_SIGNAL_RATIO,
    "anti_stokes_prefactor_power": ANTI_STOKES_PREFACTOR_POWER,
    "laser_wavenumber_cm1": LASER_WAVENUMBER,
    "n_max": DEFAULT_N_MAX,
    "g_s_cm1": DEFAULT_G_S,
    "g_as_cm1": DEFAULT_G_AS,
    "t1": DEFAULT_T1,
    "pulse_duration": DEFAULT_PULSE_DURATION,
    "near_resonance_factor": NEAR_RESONANCE_FACTOR,
    "compare_tolerance": COMPARE_TOLERANCE,
}
