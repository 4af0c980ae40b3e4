import numpy as np
import pytest

import pulsedspec as ps


@pytest.fixture
def params():
    return ps.PhysicsParams()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_state(rng, physical=False):
    """Random state vector; physical=True returns a valid density matrix."""
    if physical:
        p = rng.uniform(0.0, 1.0)
        coh_mag = rng.uniform(0.0, np.sqrt(p * (1 - p)))
        phase = rng.uniform(0, 2 * np.pi)
        ge = coh_mag * np.exp(1j * phase)
        return np.array([p, 1 - p, ge, np.conj(ge)], dtype=complex)
    return rng.normal(size=4) + 1j * rng.normal(size=4)
