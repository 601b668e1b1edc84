import numpy as np
import pytest

from kreinspec import fourlevel, numkernel

# the worked example used throughout: a0 = 1, A = 0.5 + 0.3i, B = 0.2 - 0.1i
MODEL = fourlevel.FourLevelParams(1.0, 0.5 + 0.3j, 0.2 - 0.1j)


@pytest.fixture(params=numkernel.available_backends())
def kernel_backend(request):
    previous = numkernel.set_backend(request.param)
    yield request.param
    numkernel.set_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def model():
    return MODEL


def random_complex(rng, n, m=None):
    m = n if m is None else m
    return rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))
