"""Mean-square regression estimator of the distribution function.

Conditionally on an examination time u, the status indicator is
Bernoulli with success probability F(u), so F is the regression
function of delta on u. Each model is fitted by least squares on the
design points (the orthogonal projection of the indicator vector onto
the span of the basis columns), and the model is chosen by penalized
empirical risk with penalty ``kappa0 * dim / n``.

Rank-deficient designs (empty histogram bins, more columns than
observations) are resolved by the minimum-norm solution of the normal
equations, which zeroes the coefficients of unsupported functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import (
    CAP_REGRESSION,
    BasisFamily,
    BasisModel,
    build_collection,
    corrected_dim,
    design_matrix,
    dyadic_family,
    model_sort_key,
    _DYADIC_TAGS,
)
from .data import ObservationSample
from .estimates import CdfEstimate

_RANK_TOL = 1e-10


@dataclass(frozen=True)
class LeastSquaresFit:
    """Least-squares fit of the status indicators on one model."""

    model: BasisModel
    coeffs: np.ndarray
    contrast: float
    gram_rank: int

    def __call__(self, x):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        values = design_matrix(self.model, arr) @ self.coeffs
        if np.ndim(x) == 0:
            return float(values[0])
        return np.reshape(values, np.shape(x))


def fit_least_squares(sample: ObservationSample, model: BasisModel) -> LeastSquaresFit:
    """Solve the normal equations for one model.

    The Gram matrix ``G = X'X / n`` and moment vector ``c = X'delta / n``
    always admit a solution (c lies in the range of G); when G is
    singular the minimum-norm solution is taken, with relative rank
    tolerance 1e-10.
    """
    design = design_matrix(model, sample.u)
    n = sample.n
    gram = design.T @ design / n
    moment = design.T @ sample.delta / n
    coeffs, _, rank, _ = np.linalg.lstsq(gram, moment, rcond=_RANK_TOL)
    fitted = design @ coeffs
    contrast = float(np.mean((sample.delta - fitted) ** 2))
    return LeastSquaresFit(model, coeffs, contrast, int(rank))


def regression_penalty(
    model: BasisModel,
    n: int,
    kappa0: float = 4.0,
    practical_correction: bool = True,
) -> float:
    """Penalty ``kappa0 * dim / n`` (degree-corrected for dyadic families)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if practical_correction and model.family.tag in _DYADIC_TAGS:
        return kappa0 * corrected_dim(model) / n
    return kappa0 * model.dim / n


def estimate_noise_variance(sample: ObservationSample, fit: LeastSquaresFit) -> float:
    """Mean squared residual over the observations inside [0, 1].

    Used as the scale of the regression penalty: for regression data the
    penalty is proportional to the noise variance, here the conditional
    Bernoulli variance F(u)(1 - F(u)) averaged over the design. The
    richest model of the collection serves as the pilot fit.
    Observations outside [0, 1] cannot be explained by any model (the
    basis vanishes there) and are excluded.
    """
    inside = (sample.u >= 0.0) & (sample.u <= 1.0)
    if not inside.any():
        return 0.0
    residuals = sample.delta[inside] - fit(sample.u[inside])
    return float(np.mean(residuals**2))


def fit_cdf_regression(
    sample: ObservationSample,
    family: BasisFamily | None = None,
    kappa0: float = 4.0,
    practical_correction: bool = True,
    clamp: bool = False,
    cap=CAP_REGRESSION,
    noise_scale: float | None = 1.0,
) -> CdfEstimate:
    """Fit every model in the capped collection and keep the penalized best.

    ``noise_scale`` multiplies the penalty; the default 1.0 gives the
    plain ``kappa0 * dim / n`` criterion. Pass None to estimate the
    indicator noise variance from the richest model's residuals, which
    is how the benchmark runs (an indicator regression has noise
    variance well below 1, and an unscaled penalty of this size
    systematically blocks the bias-reducing model upgrades).

    The estimate is the raw projection by default; values may leave
    [0, 1] near the boundary. Pass ``clamp=True`` to truncate at
    evaluation time.
    """
    if family is None:
        family = dyadic_family()
    collection = build_collection(family, sample.n, cap)
    models = sorted(collection, key=model_sort_key)
    if noise_scale is None:
        noise_scale = estimate_noise_variance(
            sample, fit_least_squares(sample, models[-1])
        )
    best_fit = None
    best_score = np.inf
    for model in models:
        fit = fit_least_squares(sample, model)
        score = fit.contrast + noise_scale * regression_penalty(
            model, sample.n, kappa0, practical_correction
        )
        if score < best_score:
            best_score = score
            best_fit = fit
    estimate = CdfEstimate(
        "regression",
        best_fit,
        {
            "model": best_fit.model.describe(),
            "contrast": best_fit.contrast,
            "penalty": noise_scale
            * regression_penalty(
                best_fit.model, sample.n, kappa0, practical_correction
            ),
            "noise_scale": float(noise_scale),
            "gram_rank": best_fit.gram_rank,
        },
    )
    if clamp:
        estimate = estimate.clamped()
    return estimate
