import numpy as np
import pytest

from corrchan import haar_random_unitary, random_pure_state


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_hermitian(dim, rng, scale=1.0):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (a + a.conj().T) / 2


def random_density_matrix(dim, rng, rank=None):
    rank = rank or dim
    v = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = v @ v.conj().T
    return rho / np.trace(rho).real


__all__ = ["random_hermitian", "random_density_matrix", "haar_random_unitary",
           "random_pure_state"]
