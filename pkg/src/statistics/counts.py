"""
Count Statistics - Same-window correlation estimators over photon-count records.

Point estimates are formed from exact integer sums; standard errors use the
delta method with per-window influence values.
"""
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from src.exceptions import ConfigError, SpectrumParseError, ZeroOccupationError

logger = logging.getLogger(__name__)

DEFAULT_CHUNK = 1_000_000


@dataclass(frozen=True)
class CountRecord:
    """Stokes / anti-Stokes counts per coincidence window."""
    n_s: np.ndarray
    n_as: np.ndarray
    window_length_s: Optional[float] = None

    def __post_init__(self):
        n_s = np.asarray(self.n_s)
        n_as = np.asarray(self.n_as)
        if n_s.ndim != 1 or n_s.shape != n_as.shape:
            raise ConfigError("count arrays must be 1-D and of equal length")
        if len(n_s) == 0:
            raise ConfigError("count record needs at least one window")
        for name, values in (("n_s", n_s), ("n_as", n_as)):
            if not np.issubdtype(values.dtype, np.integer):
                if not np.all(np.isfinite(values)) or np.any(values != np.round(values)):
                    raise ConfigError(f"{name} must hold integer counts")
            if np.any(values < 0):
                raise ConfigError(f"{name} must be >= 0")
        for name, values in (("n_s", n_s), ("n_as", n_as)):
            values = values.astype(np.int64)
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @classmethod
    def from_windows(cls, windows: Sequence[Sequence[int]], window_length_s: Optional[float] = None) -> "CountRecord":
        pairs = np.asarray(windows, dtype=np.int64).reshape(-1, 2)
        return cls(pairs[:, 0], pairs[:, 1], window_length_s)

    def __len__(self) -> int:
        return len(self.n_s)

    def chunks(self, size: int = DEFAULT_CHUNK) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
        for start in range(0, len(self), size):
            yield self.n_s[start:start + size], self.n_as[start:start + size]


def load_counts(path: Union[str, Path]) -> CountRecord:
    """Read ``{window_length_s, windows: [[n_s, n_as], ...]}``."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"count file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8-sig"))
    except json.JSONDecodeError as e:
        raise SpectrumParseError(f"invalid JSON: {e.msg}", row=e.lineno)
    windows = payload.get("windows") if isinstance(payload, dict) else None
    if not isinstance(windows, list):
        raise SpectrumParseError("count file must hold a 'windows' list")
    for idx, window in enumerate(windows, start=1):
        if (not isinstance(window, list) or len(window) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in window)):
            raise SpectrumParseError("window must be a pair of integers", row=idx)
        if window[0] < 0 or window[1] < 0:
            raise SpectrumParseError("negative count", row=idx)
    return CountRecord.from_windows(windows, payload.get("window_length_s"))


def dump_counts(record: CountRecord, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "window_length_s": record.window_length_s,
        "windows": np.column_stack([record.n_s, record.n_as]).tolist(),
    }
    path.write_text(json.dumps(payload) + "\n", encoding="utf-8")
    return path


@dataclass(frozen=True)
class G2Estimate:
    """Same-window g2 estimates with delta-method standard errors."""
    g2_s_as: float
    g2_ss: float
    g2_asas: float
    se_s_as: float
    se_ss: float
    se_asas: float
    mean_s: float
    mean_as: float
    n_windows: int
    cs_ratio: Optional[float] = None
    cs_ratio_se: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_windows": self.n_windows,
            "mean_s": self.mean_s,
            "mean_as": self.mean_as,
            "g2_s_as": {"value": self.g2_s_as, "stderr": self.se_s_as},
            "g2_ss": {"value": self.g2_ss, "stderr": self.se_ss},
            "g2_asas": {"value": self.g2_asas, "stderr": self.se_asas},
            "cs_ratio": {"value": self.cs_ratio, "stderr": self.cs_ratio_se},
        }


def _integer_sums(record: CountRecord, chunk_size: int) -> Dict[str, int]:
    sums = {"s": 0, "a": 0, "sa": 0, "ss": 0, "aa": 0}
    for n_s, n_as in record.chunks(chunk_size):
        sums["s"] += int(n_s.sum())
        sums["a"] += int(n_as.sum())
        sums["sa"] += int((n_s * n_as).sum())
        sums["ss"] += int((n_s * (n_s - 1)).sum())
        sums["aa"] += int((n_as * (n_as - 1)).sum())
    return sums


def g2_from_counts(record: CountRecord, chunk_size: int = DEFAULT_CHUNK) -> G2Estimate:
    """
    Cross- and auto-correlation estimates at zero delay.

    cross = mean(n_s*n_as) / (mean(n_s)*mean(n_as))
    auto  = mean(n*(n-1)) / mean(n)^2

    Raises:
        ZeroOccupationError: a channel recorded no photons
    """
    n = len(record)
    sums = _integer_sums(record, chunk_size)
    if sums["s"] == 0 or sums["a"] == 0:
        raise ZeroOccupationError("zero-mean channel: g2 undefined")

    # Ratios of exact integers, rounded once
    g_c = sums["sa"] * n / (sums["s"] * sums["a"])
    g_s = sums["ss"] * n / (sums["s"] ** 2)
    g_a = sums["aa"] * n / (sums["a"] ** 2)
    m_s, m_a = sums["s"] / n, sums["a"] / n
    m_sa, m_ss, m_aa = sums["sa"] / n, sums["ss"] / n, sums["aa"] / n

    sq = {"c": 0.0, "s": 0.0, "a": 0.0, "r": 0.0}
    ratio = g_c ** 2 / (g_s * g_a) if g_s > 0 and g_a > 0 else None
    for n_s, n_as in record.chunks(chunk_size):
        x = n_s.astype(float)
        y = n_as.astype(float)
        z_c = (x * y - m_sa) / (m_s * m_a) - g_c * (x - m_s) / m_s - g_c * (y - m_a) / m_a
        z_s = (x * (x - 1) - m_ss) / m_s ** 2 - 2 * g_s * (x - m_s) / m_s
        z_a = (y * (y - 1) - m_aa) / m_a ** 2 - 2 * g_a * (y - m_a) / m_a
        sq["c"] += float(np.dot(z_c, z_c))
        sq["s"] += float(np.dot(z_s, z_s))
        sq["a"] += float(np.dot(z_a, z_a))
        if ratio is not None:
            if g_c > 0:
                z_r = ratio * (2 * z_c / g_c - z_s / g_s - z_a / g_a)
            else:
                z_r = np.zeros_like(z_c)
            sq["r"] += float(np.dot(z_r, z_r))

    def stderr(total: float) -> float:
        return math.sqrt(total / n) / math.sqrt(n)

    estimate = G2Estimate(
        g2_s_as=g_c,
        g2_ss=g_s,
        g2_asas=g_a,
        se_s_as=stderr(sq["c"]),
        se_ss=stderr(sq["s"]),
        se_asas=stderr(sq["a"]),
        mean_s=m_s,
        mean_as=m_a,
        n_windows=n,
        cs_ratio=ratio,
        cs_ratio_se=stderr(sq["r"]) if ratio is not None else None,
    )
    logger.debug("g2 from %d windows: cross %.4g +/- %.2g", n, g_c, estimate.se_s_as)
    return estimate


def sample_counts(
    distribution: np.ndarray,
    n_windows: int,
    rng: np.random.Generator,
    window_length_s: Optional[float] = None,
) -> CountRecord:
    """Draw windows from a joint photon-number distribution P[n_s, n_as]."""
    probs = np.clip(np.asarray(distribution, dtype=float), 0.0, None)
    if probs.ndim != 2 or probs.sum() <= 0:
        raise ConfigError("distribution must be a non-empty 2-D array of probabilities")
    flat = (probs / probs.sum()).ravel()
    picks = rng.choice(flat.size, size=n_windows, p=flat)
    n_s, n_as = np.unravel_index(picks, probs.shape)
    return CountRecord(n_s, n_as, window_length_s)


def simulate_classical_counts(
    stokes_means: Sequence[float],
    anti_stokes_means: Sequence[float],
    weights: Sequence[float],
    n_windows: int,
    rng: np.random.Generator,
) -> CountRecord:
    """
    Poisson counts from a classical mixture of coherent-state intensities.

    Each window draws a mixture component by weight, then independent
    Poisson counts with that component's mean per channel.
    """
    stokes_means = np.asarray(stokes_means, dtype=float)
    anti_stokes_means = np.asarray(anti_stokes_means, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if not (stokes_means.shape == anti_stokes_means.shape == weights.shape):
        raise ConfigError("mixture arrays must have equal length")
    if np.any(stokes_means < 0) or np.any(anti_stokes_means < 0) or np.any(weights < 0) or weights.sum() <= 0:
        raise ConfigError("mixture means and weights must be >= 0")

    component = rng.choice(len(weights), size=n_windows, p=weights / weights.sum())
    n_s = rng.poisson(stokes_means[component])
    n_as = rng.poisson(anti_stokes_means[component])
    return CountRecord(n_s, n_as)
