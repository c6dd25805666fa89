"""
Pydantic Models for API request/response schemas.
"""
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from src import __version__
from src.config import DEFAULT_BAND_WIDTH, DEFAULT_LASER_INTENSITY, DEFAULT_TEMPERATURE_K, DEFAULT_THRESHOLD
from src.pairing.models import FilterShape


# Request Models
class SpectrumPayload(BaseModel):
    """Inline Raman spectrum."""
    medium: str = Field("sample", min_length=1, description="Medium name")
    temperature_K: float = Field(DEFAULT_TEMPERATURE_K, ge=0)
    points: List[Tuple[float, float]] = Field(..., min_length=8, description="(shift_cm1, intensity) pairs")


class PredictRequest(BaseModel):
    """g2(0) curve request for one medium."""
    spectrum: SpectrumPayload
    centers: List[float] = Field(..., min_length=1, description="Band centers in cm^-1")
    band_width: float = Field(DEFAULT_BAND_WIDTH, gt=0)
    shape: FilterShape = FilterShape.TOPHAT
    laser_scale: float = Field(DEFAULT_LASER_INTENSITY, gt=0)
    threshold: float = Field(DEFAULT_THRESHOLD, gt=0, lt=1)
    temperature_K: Optional[float] = Field(None, ge=0, description="Overrides the spectrum temperature")
    coherent: bool = True
    include_sas_background: bool = True


class CauchySchwarzRequest(BaseModel):
    g2_s_as: float
    g2_ss: float
    g2_asas: float


class CountsRequest(BaseModel):
    """Per-window photon counts [n_s, n_as]."""
    windows: List[Tuple[int, int]] = Field(..., min_length=1)
    window_length_s: Optional[float] = Field(None, gt=0)


# Response Models
class CorrelationPointResponse(BaseModel):
    shift_cm1: float
    g2_norm: Optional[float] = None
    g2_raw: Optional[float] = None
    overlap: float
    correlated_rate: float
    accidental_rate: float
    regime: str
    flags: List[str] = Field(default_factory=list)


class PredictResponse(BaseModel):
    medium: str
    metadata: Dict[str, Any] = Field(default_factory=dict)
    points: List[CorrelationPointResponse]
    latency_ms: float = 0.0


class CauchySchwarzResponse(BaseModel):
    status: str
    classical: bool
    nonclassical: bool
    violation_ratio: Optional[float] = None
    ratio_stderr: Optional[float] = None
    significance: Optional[float] = None


class CountsResponse(BaseModel):
    estimate: Dict[str, Any]
    cauchy_schwarz: CauchySchwarzResponse


class MetricsResponse(BaseModel):
    """Aggregated metrics response."""
    total_runs: int = 0
    failed_runs: int = 0
    avg_latency_ms: float = 0.0
    p95_latency_ms: float = 0.0
    total_points: int = 0
    evolutions: int = 0
    rk4_steps: int = 0
    runs_per_command: Dict[str, int] = Field(default_factory=dict)


class HealthResponse(BaseModel):
    """Health check response."""
    status: str = "healthy"
    version: str = __version__
    timestamp: str = Field(default_factory=lambda: datetime.now().isoformat())
    components: Dict[str, str] = Field(default_factory=dict)
