"""
Cauchy-Schwarz classicality test: classical fields obey g2_sas^2 <= g2_ss * g2_asas.
"""
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from src.exceptions import ConfigError
from .counts import G2Estimate

CLASSICAL = "classical"
NONCLASSICAL = "nonclassical"
AUTOS_UNMEASURABLE = "autos_unmeasurable"


@dataclass(frozen=True)
class CauchySchwarzResult:
    status: str
    classical: bool
    nonclassical: bool
    violation_ratio: Optional[float]
    ratio_stderr: Optional[float] = None
    significance: Optional[float] = None  # (ratio - 1) in standard errors

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def cauchy_schwarz_check(g2_s_as: float, g2_ss: float, g2_asas: float) -> CauchySchwarzResult:
    """Classify a triple of g2 values; a zero autocorrelation product is reported, not raised."""
    for name, value in (("g2_s_as", g2_s_as), ("g2_ss", g2_ss), ("g2_asas", g2_asas)):
        if not (math.isfinite(value) and value >= 0):
            raise ConfigError(f"{name} must be finite and >= 0, got {value}")

    product = g2_ss * g2_asas
    if product == 0:
        return CauchySchwarzResult(AUTOS_UNMEASURABLE, False, False, None)

    ratio = g2_s_as ** 2 / product
    nonclassical = ratio > 1
    return CauchySchwarzResult(
        status=NONCLASSICAL if nonclassical else CLASSICAL,
        classical=not nonclassical,
        nonclassical=nonclassical,
        violation_ratio=ratio,
    )


def cauchy_schwarz_from_estimate(estimate: G2Estimate) -> CauchySchwarzResult:
    """Cauchy-Schwarz verdict with the ratio's delta-method standard error."""
    result = cauchy_schwarz_check(estimate.g2_s_as, estimate.g2_ss, estimate.g2_asas)
    if result.violation_ratio is None or not estimate.cs_ratio_se:
        return result
    se = estimate.cs_ratio_se
    return CauchySchwarzResult(
        status=result.status,
        classical=result.classical,
        nonclassical=result.nonclassical,
        violation_ratio=result.violation_ratio,
        ratio_stderr=se,
        significance=(result.violation_ratio - 1.0) / se,
    )
