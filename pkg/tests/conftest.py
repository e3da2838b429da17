import numpy as np
import pytest

from qwass.clifford import build_clifford


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def random_state(rng: np.random.Generator, dim: int, floor: float = 0.05) -> np.ndarray:
    """Faithful density matrix of unit standard trace with eigenvalues bounded away from 0."""
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T + floor * dim * np.eye(dim)
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def alg1():
    return build_clifford(1)


@pytest.fixture(scope="session")
def alg2():
    return build_clifford(2)


@pytest.fixture(scope="session")
def alg3():
    return build_clifford(3)
