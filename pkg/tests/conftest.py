import numpy as np
import pytest

from curstat import ObservationSample


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_sample(rng, n, p_outside=0.0):
    """Random current-status sample with arbitrary status probabilities."""
    u = rng.random(n)
    if p_outside:
        mask = rng.random(n) < p_outside
        u = np.where(mask, 1.0 + rng.random(n), u)
    prob = rng.random(n)
    delta = (rng.random(n) < prob).astype(float)
    return ObservationSample(u, delta)
