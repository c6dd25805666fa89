"""
API Routes - Endpoint definitions for the pair correlator API.
"""
import uuid

from fastapi import APIRouter

from src.api.models import (
    CauchySchwarzRequest, CauchySchwarzResponse,
    CountsRequest, CountsResponse,
    HealthResponse, MetricsResponse,
    PredictRequest, PredictResponse,
)
from src.observability.metrics import MetricsContext, metrics_collector
from src.pairing.curve_io import json_safe
from src.pairing.models import GapParameters, PredictionOptions
from src.pairing.predictor import predict_g2_curve
from src.spectrum.models import RamanSpectrum
from src.spectrum.reference import available_media
from src.statistics.classicality import cauchy_schwarz_check, cauchy_schwarz_from_estimate
from src.statistics.counts import CountRecord, g2_from_counts

router = APIRouter()


def _run_id() -> str:
    return uuid.uuid4().hex[:8]


@router.post("/predict", response_model=PredictResponse)
def predict(request: PredictRequest) -> PredictResponse:
    """
    Perturbative g2(0) curve for one inline spectrum.

    Library errors (bad spectrum, band outside support, no modes) are
    turned into 422 responses by the application's exception handler.
    """
    with MetricsContext(run_id=_run_id(), command="api.predict") as ctx:
        spectrum = RamanSpectrum(
            medium_name=request.spectrum.medium,
            shifts=[p[0] for p in request.spectrum.points],
            intensities=[p[1] for p in request.spectrum.points],
            temperature_k=request.spectrum.temperature_K,
        )
        options = PredictionOptions(
            threshold=request.threshold,
            temperature_k=request.temperature_K,
            coherent=request.coherent,
            include_sas_background=request.include_sas_background,
        )
        with ctx.phase("predict"):
            curve = predict_g2_curve(
                spectrum, request.band_width, request.shape, request.centers,
                params=GapParameters(laser_intensity=request.laser_scale),
                options=options,
            )
        ctx.add_points(len(curve.points))
        ctx.add_medium()

    payload = json_safe(curve.to_dict())
    return PredictResponse(**payload, latency_ms=ctx.metrics.total_latency_ms)


@router.post("/cs-check", response_model=CauchySchwarzResponse)
async def cs_check(request: CauchySchwarzRequest) -> CauchySchwarzResponse:
    """Classicality verdict for a (cross, Stokes auto, anti-Stokes auto) triple."""
    result = cauchy_schwarz_check(request.g2_s_as, request.g2_ss, request.g2_asas)
    return CauchySchwarzResponse(**result.to_dict())


@router.post("/counts", response_model=CountsResponse)
async def counts(request: CountsRequest) -> CountsResponse:
    """g2 estimates with standard errors from per-window counts."""
    with MetricsContext(run_id=_run_id(), command="api.counts") as ctx:
        record = CountRecord.from_windows(request.windows, request.window_length_s)
        estimate = g2_from_counts(record)
        ctx.add_points(len(record))
    verdict = cauchy_schwarz_from_estimate(estimate)
    return CountsResponse(
        estimate=json_safe(estimate.to_dict()),
        cauchy_schwarz=CauchySchwarzResponse(**verdict.to_dict()),
    )


@router.get("/metrics", response_model=MetricsResponse)
async def get_metrics() -> MetricsResponse:
    """Get aggregated run metrics."""
    stats = metrics_collector.get_aggregated_stats()
    return MetricsResponse(**stats)


@router.get("/metrics/recent")
async def get_recent_metrics(count: int = 10):
    """Get recent run metrics."""
    return metrics_collector.get_recent(count)


@router.get("/health", response_model=HealthResponse)
async def health_check() -> HealthResponse:
    """Health check endpoint."""
    components = {
        "api": "healthy",
        "reference_media": "healthy" if available_media() else "unavailable",
        "metrics": "healthy" if metrics_collector else "unavailable",
    }
    all_healthy = all(v == "healthy" for v in components.values())

    return HealthResponse(
        status="healthy" if all_healthy else "degraded",
        components=components,
    )
