"""
Observability Module - Run metrics collection.
"""
from .metrics import MetricsCollector, MetricsContext, RunMetrics, metrics_collector

__all__ = ["MetricsCollector", "MetricsContext", "RunMetrics", "metrics_collector"]
