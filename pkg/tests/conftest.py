import numpy as np
import pytest

from twostroke.model import CycleParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240731)


@pytest.fixture
def fig3_params():
    """Engine operating point used throughout the figure sweeps."""
    return CycleParams(
        eps_a=1.0, eps_b=0.6, beta_a=1.0, beta_b=2.0, kappa=0.1, omega=0.5, tau=2.0
    )


def random_hermitian(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (m + m.conj().T)
