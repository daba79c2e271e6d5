"""Special functions and samplers needed by the benchmark models."""

from __future__ import annotations

import numpy as np
from scipy import special as _sp


def erf(x):
    """Gauss error function, elementwise."""
    out = _sp.erf(np.asarray(x, dtype=float))
    return float(out) if np.ndim(x) == 0 else out


def regularized_incomplete_beta(a: float, b: float, x):
    """Regularized incomplete beta function I_x(a, b) for x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise ValueError("shape parameters must be positive")
    arr = np.asarray(x, dtype=float)
    if np.any((arr < 0.0) | (arr > 1.0)):
        raise ValueError("x must lie in [0, 1]")
    out = _sp.betainc(a, b, arr)
    return float(out) if np.ndim(x) == 0 else out


def exponential_sampler(rate: float, rng: np.random.Generator, size=None):
    """Exponential draws with the given rate (mean 1/rate)."""
    if rate <= 0:
        raise ValueError("rate must be positive")
    return rng.standard_exponential(size) / rate


def beta_sampler(a: float, b: float, rng: np.random.Generator, size=None):
    """Beta(a, b) draws."""
    if a <= 0 or b <= 0:
        raise ValueError("shape parameters must be positive")
    return rng.beta(a, b, size)
