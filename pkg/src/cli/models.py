"""
Run configuration shared by every CLI command.
"""
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.config import (
    COMPARE_TOLERANCE,
    DEFAULT_BAND_WIDTH,
    DEFAULT_FILTER_SHAPE,
    DEFAULT_G_AS,
    DEFAULT_G_S,
    DEFAULT_LASER_INTENSITY,
    DEFAULT_N_MAX,
    DEFAULT_PULSE_DURATION,
    DEFAULT_SEED,
    DEFAULT_THRESHOLD,
    DEFAULT_WORKERS,
    SAS_SELF_COEFFICIENT,
)
from src.pairing.models import FilterShape
from src.spectrum.models import UniformGrid

Command = Literal["predict", "simulate", "counts", "cs-check", "compare"]

# Fields that never change results and stay out of output files
NON_RESULT_FIELDS = {"out", "workers", "log_level"}


class RunConfig(BaseModel):
    """Fully resolved options of one CLI invocation."""
    model_config = ConfigDict(frozen=True)

    command: Command
    out: Path
    fmt: Literal["csv", "json"] = "csv"
    seed: int = DEFAULT_SEED
    workers: int = Field(DEFAULT_WORKERS, ge=1)
    log_level: str = "INFO"

    # Inputs
    spectra: List[Path] = Field(default_factory=list)
    reference_media: List[str] = Field(default_factory=list)
    grid: Optional[UniformGrid] = None

    # Perturbative engine
    band_width: float = Field(DEFAULT_BAND_WIDTH, gt=0)
    shape: FilterShape = FilterShape(DEFAULT_FILTER_SHAPE)
    temperature_k: Optional[float] = Field(None, ge=0)
    laser_scale: float = Field(DEFAULT_LASER_INTENSITY, gt=0)
    threshold: float = Field(DEFAULT_THRESHOLD, gt=0, lt=1)
    default_gamma: Optional[float] = Field(None, gt=0)
    incoherent: bool = False
    sas_background: bool = True
    sas_coefficient: float = Field(SAS_SELF_COEFFICIENT, ge=0)
    rank_at: List[float] = Field(default_factory=list)

    # Master-equation engine
    nu: float = Field(1640.0, gt=0)
    g_s: float = Field(DEFAULT_G_S, ge=0)
    g_as: float = Field(DEFAULT_G_AS, ge=0)
    n_max: int = DEFAULT_N_MAX
    t1: List[float] = Field(default_factory=list)
    dt: Optional[float] = Field(None, gt=0)
    pulse_duration: float = Field(DEFAULT_PULSE_DURATION, gt=0)

    # Statistics and comparison
    counts: Optional[Path] = None
    windows: Optional[int] = Field(None, gt=0)
    mixture_components: int = Field(3, ge=1)
    g2: Optional[List[float]] = None
    predict: Optional[Path] = None
    simulate: Optional[Path] = None
    reference_shift: Optional[float] = None
    tolerance: float = Field(COMPARE_TOLERANCE, gt=0)

    @field_validator("t1")
    @classmethod
    def _finite_lifetimes(cls, values: List[float]) -> List[float]:
        for value in values:
            if not 0 < value < float("inf"):
                raise ValueError(f"t1 values must be finite and positive, got {value}")
        return values

    @field_validator("g2")
    @classmethod
    def _g2_triple(cls, values: Optional[List[float]]) -> Optional[List[float]]:
        if values is not None and len(values) != 3:
            raise ValueError("--g2 takes exactly three values: SAS SS ASAS")
        return values

    def resolved(self) -> Dict[str, Any]:
        """JSON-ready config embedded in every output file."""
        return self.model_dump(mode="json", exclude=NON_RESULT_FIELDS)
