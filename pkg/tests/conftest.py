import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from matchgates import randomize

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def gen():
    return randomize.rng(20240611)


def close(a, b, tol):
    return np.abs(np.asarray(a) - np.asarray(b)).max() <= tol
