"""
Metrics Collector - Track run latency, phases, points and integrator work.
Provides in-memory aggregated statistics for the CLI summary and /metrics.
Nothing recorded here is written to output files.
"""
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional


@dataclass
class RunMetrics:
    """Metrics for a single CLI run or API request."""
    run_id: str
    command: str
    timestamp: str

    # Timing
    total_latency_ms: float = 0.0
    phase_latency_ms: Dict[str, float] = field(default_factory=dict)

    # Work
    points_evaluated: int = 0
    media_processed: int = 0
    media_failed: int = 0
    evolutions: int = 0
    rk4_steps: int = 0

    # Outcome
    exit_code: int = 0
    error: str = ""


class MetricsContext:
    """Context manager for tracking one run."""

    def __init__(self, run_id: str, command: str):
        self.metrics = RunMetrics(
            run_id=run_id,
            command=command,
            timestamp=datetime.now().isoformat(),
        )
        self._start_time: Optional[float] = None
        self._start_counters: Dict[str, int] = {}

    def __enter__(self):
        self._start_time = time.time()
        self._start_counters = metrics_collector.integration_counters()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._start_time:
            self.metrics.total_latency_ms = (time.time() - self._start_time) * 1000
        counters = metrics_collector.integration_counters()
        self.metrics.evolutions += counters["evolutions"] - self._start_counters.get("evolutions", 0)
        self.metrics.rk4_steps += counters["rk4_steps"] - self._start_counters.get("rk4_steps", 0)
        if exc_val is not None:
            self.metrics.exit_code = getattr(exc_val, "exit_code", 1)
            self.metrics.error = type(exc_val).__name__
        metrics_collector.record(self.metrics)

    @contextmanager
    def phase(self, name: str):
        """Track a named phase (load, discretize, predict, evolve, write)."""
        start = time.time()
        try:
            yield
        finally:
            duration_ms = (time.time() - start) * 1000
            self.metrics.phase_latency_ms[name] = self.metrics.phase_latency_ms.get(name, 0.0) + duration_ms

    def add_points(self, count: int):
        self.metrics.points_evaluated += count

    def add_medium(self, ok: bool = True):
        if ok:
            self.metrics.media_processed += 1
        else:
            self.metrics.media_failed += 1

    def add_worker_integrations(self, evolutions: int, steps: int):
        """Work done in worker processes, which never reach this collector."""
        self.metrics.evolutions += evolutions
        self.metrics.rk4_steps += steps

    def summary(self) -> Dict[str, Any]:
        m = self.metrics
        return {
            "command": m.command,
            "latency_ms": round(m.total_latency_ms, 1),
            "phases_ms": {k: round(v, 1) for k, v in m.phase_latency_ms.items()},
            "points": m.points_evaluated,
            "media": m.media_processed,
            "media_failed": m.media_failed,
            "evolutions": m.evolutions,
            "rk4_steps": m.rk4_steps,
        }


class MetricsCollector:
    """
    Collects and aggregates run metrics.
    Thread-safe implementation for concurrent access.
    """

    def __init__(self, max_history: int = 1000):
        self.max_history = max_history
        self._history: List[RunMetrics] = []
        self._lock = threading.Lock()

        # Aggregated counters
        self._total_runs = 0
        self._failed_runs = 0
        self._total_points = 0
        self._evolutions = 0
        self._rk4_steps = 0

    def record(self, metrics: RunMetrics) -> None:
        """Record run metrics."""
        with self._lock:
            self._history.append(metrics)
            if len(self._history) > self.max_history:
                self._history.pop(0)

            self._total_runs += 1
            self._total_points += metrics.points_evaluated
            if metrics.exit_code != 0:
                self._failed_runs += 1

    def add_integration(self, steps: int) -> None:
        """Count one master-equation evolution of the given number of steps."""
        with self._lock:
            self._evolutions += 1
            self._rk4_steps += steps

    def integration_counters(self) -> Dict[str, int]:
        with self._lock:
            return {"evolutions": self._evolutions, "rk4_steps": self._rk4_steps}

    def get_recent(self, count: int = 10) -> List[Dict[str, Any]]:
        """Get recent run metrics."""
        with self._lock:
            recent = self._history[-count:]
            return [
                {
                    "run_id": m.run_id,
                    "command": m.command,
                    "timestamp": m.timestamp,
                    "latency_ms": m.total_latency_ms,
                    "points": m.points_evaluated,
                    "exit_code": m.exit_code,
                }
                for m in recent
            ]

    def get_aggregated_stats(self) -> Dict[str, Any]:
        """Get aggregated statistics."""
        with self._lock:
            if not self._history:
                return {
                    "total_runs": 0,
                    "failed_runs": 0,
                    "avg_latency_ms": 0.0,
                    "p95_latency_ms": 0.0,
                    "total_points": 0,
                    "evolutions": self._evolutions,
                    "rk4_steps": self._rk4_steps,
                    "runs_per_command": {},
                }

            latencies = sorted(m.total_latency_ms for m in self._history)
            return {
                "total_runs": self._total_runs,
                "failed_runs": self._failed_runs,
                "avg_latency_ms": sum(latencies) / len(latencies),
                "p95_latency_ms": latencies[int(len(latencies) * 0.95)] if len(latencies) >= 20 else latencies[-1],
                "total_points": self._total_points,
                "evolutions": self._evolutions,
                "rk4_steps": self._rk4_steps,
                "runs_per_command": self._get_command_breakdown(),
            }

    def _get_command_breakdown(self) -> Dict[str, int]:
        breakdown: Dict[str, int] = {}
        for m in self._history:
            breakdown[m.command] = breakdown.get(m.command, 0) + 1
        return breakdown

    def clear(self) -> None:
        """Clear all metrics."""
        with self._lock:
            self._history.clear()
            self._total_runs = 0
            self._failed_runs = 0
            self._total_points = 0
            self._evolutions = 0
            self._rk4_steps = 0


# Singleton instance
metrics_collector = MetricsCollector()
