"""
API Layer - FastAPI application and routes.
"""
from .main import app
from .routes import router
from .models import PredictRequest, PredictResponse, MetricsResponse

__all__ = ["app", "router", "PredictRequest", "PredictResponse", "MetricsResponse"]
