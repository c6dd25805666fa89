"""
Filter band overlap between a Stokes band (mirrored onto positive shifts)
and an anti-Stokes band.
"""
import math

from scipy.integrate import quad
from scipy.special import erf

from .models import FilterBand, FilterShape


def _intersection(stokes: FilterBand, antistokes: FilterBand):
    lo_s, hi_s = stokes.support()
    lo_a, hi_a = antistokes.support()
    return max(lo_s, lo_a), min(hi_s, hi_a)


def _gaussian_product_integral(a: FilterBand, b: FilterBand, lo: float, hi: float) -> float:
    var_a, var_b = a.sigma ** 2, b.sigma ** 2
    var = var_a * var_b / (var_a + var_b)
    mean = (a.center * var_b + b.center * var_a) / (var_a + var_b)
    amplitude = math.exp(-0.5 * (a.center - b.center) ** 2 / (var_a + var_b))
    sd = math.sqrt(var)
    edge = math.sqrt(2.0) * sd
    return amplitude * sd * math.sqrt(math.pi / 2.0) * (erf((hi - mean) / edge) - erf((lo - mean) / edge))


def band_overlap(stokes: FilterBand, antistokes: FilterBand) -> float:
    """
    Integral of T_S * T_aS over the shift magnitude.

    Identical top-hats of width W give W; disjoint bands give 0.
    """
    lo, hi = _intersection(stokes, antistokes)
    if lo >= hi:
        return 0.0

    if stokes.shape == antistokes.shape == FilterShape.TOPHAT:
        return hi - lo
    if stokes.shape == antistokes.shape == FilterShape.GAUSSIAN:
        return _gaussian_product_integral(stokes, antistokes, lo, hi)

    value, _ = quad(
        lambda x: float(stokes.transmission(x) * antistokes.transmission(x)),
        lo,
        hi,
        epsabs=1e-12,
        epsrel=1e-10,
        limit=200,
    )
    return value
