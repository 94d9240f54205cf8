import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_complex(rng, n):
    from hyperan.qft import ComplexSignal

    return ComplexSignal(rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n), 1.0 / n)
