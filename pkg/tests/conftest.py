import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from antiflat.spectra import Spectrum

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def _normalize(raw):
    w = np.abs(raw) + 1e-3
    return Spectrum(w / w.sum())


def spectra(min_dim: int = 2, max_dim: int = 8):
    """Full-support spectra with weights bounded away from zero."""
    return st.integers(min_dim, max_dim).flatmap(
        lambda d: arrays(float, d, elements=st.floats(0.01, 1.0)).map(_normalize)
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
