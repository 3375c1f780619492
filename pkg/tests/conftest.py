import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pd(rng, n, scale=1.0):
    G = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    M = scale * G @ G.conj().T + 0.1 * np.eye(n)
    return (M + M.conj().T) / 2


def diag(*v):
    return np.diag(np.asarray(v, dtype=float)).astype(complex)
