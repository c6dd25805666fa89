"""Shared fixtures."""
import numpy as np
import pytest

from src.observability.metrics import metrics_collector
from src.spectrum.loader import dump_spectrum
from src.spectrum.reference import lorentzian_spectrum, synthesize_spectrum


@pytest.fixture(scope="session")
def water():
    return synthesize_spectrum("water")


@pytest.fixture(scope="session")
def reference_media():
    return {name: synthesize_spectrum(name) for name in ("water", "acetonitrile", "toluene")}


@pytest.fixture
def single_line():
    """One Lorentzian line at 1000 cm^-1, FWHM 20, on a 1 cm^-1 axis."""
    return lorentzian_spectrum(1000.0, 20.0, window=(700.0, 1300.0), step=1.0, floor=0.001)


@pytest.fixture
def spectrum_file(tmp_path, single_line):
    return dump_spectrum(single_line, tmp_path / "line.csv")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(autouse=True)
def _fresh_metrics():
    metrics_collector.clear()
    yield
    metrics_collector.clear()
