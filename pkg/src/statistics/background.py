"""
Accidental coincidence background.
"""
from dataclasses import asdict, dataclass
from typing import Dict

from src.exceptions import ConfigError


@dataclass(frozen=True)
class BackgroundModel:
    """Per-window mean rates at unit laser scale."""
    stokes_rate: float
    thermal_as_rate: float
    sas_as_rate: float = 0.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value >= 0:
                raise ConfigError(f"{name} must be >= 0, got {value}")

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def accidental_model(background: BackgroundModel, laser_scale: float = 1.0) -> float:
    """
    Uncorrelated coincidence rate U = <n_S> * <n_aS>.

    The Stokes and thermal anti-Stokes rates grow linearly with the laser
    scale, the SaS self-contribution quadratically.
    """
    if laser_scale <= 0:
        raise ConfigError(f"laser_scale must be > 0, got {laser_scale}")
    stokes = background.stokes_rate * laser_scale
    anti_stokes = background.thermal_as_rate * laser_scale + background.sas_as_rate * laser_scale ** 2
    return stokes * anti_stokes
