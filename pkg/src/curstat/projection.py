"""Adaptive projection density estimation by penalized contrast.

The two targets are the density of the examination times and the
sub-density of examination times that carry status 1 (whose ratio is
the distribution function of interest). Both are estimated by the same
machinery: empirical basis coefficients, the L2 projection contrast
``||t||^2 - (2/n) sum_i w_i t(u_i)``, and a dimension penalty. The
model minimising contrast plus penalty over a capped collection wins.

For the sub-density target the penalty is rescaled by the observed
status frequency ``mean(delta)``, the data-driven stand-in for the
unknown integral of the sub-density.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import (
    CAP_DENSITY,
    BasisFamily,
    BasisModel,
    build_collection,
    corrected_dim,
    design_matrix,
    dyadic_family,
    model_sort_key,
    phi0,
    _DYADIC_TAGS,
)
from .data import ObservationSample

TARGET_DENSITY = "density"
TARGET_SUBDENSITY = "subdensity"


@dataclass(frozen=True)
class PenaltyConfig:
    """Penalty calibration for the density contrasts.

    ``kappa`` multiplies the whole penalty. With ``practical_correction``
    the dyadic families swap the raw dimension for the degree-corrected
    one (see ``bases.corrected_dim``); other families always use
    ``kappa * phi0^2 * dim / n``.
    """

    kappa: float = 4.0
    practical_correction: bool = True

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")


@dataclass(frozen=True)
class ProjectionEstimate:
    """Linear combination of basis functions with empirical coefficients."""

    model: BasisModel
    coeffs: np.ndarray
    target: str = TARGET_DENSITY

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if coeffs.size != self.model.dim:
            raise ValueError("coefficient count must match the model dimension")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def norm_sq(self) -> float:
        """Squared L2 norm; equals the coefficient sum of squares."""
        return float(self.coeffs @ self.coeffs)

    def __call__(self, x):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        values = design_matrix(self.model, arr) @ self.coeffs
        if np.ndim(x) == 0:
            return float(values[0])
        return np.reshape(values, np.shape(x))


def empirical_coefficients(
    sample: ObservationSample, model: BasisModel, weights=None
) -> np.ndarray:
    """Coefficients ``(1/n) sum_i w_i phi_k(u_i)`` for each basis function.

    ``weights=None`` means all ones. Observations outside [0, 1]
    contribute zero (the basis vanishes there) but still count in the
    divisor n.
    """
    if weights is None:
        weights = np.ones(sample.n)
    else:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (sample.n,):
            raise ValueError("weights must have one entry per observation")
    return design_matrix(model, sample.u).T @ weights / sample.n


def density_contrast(
    sample: ObservationSample, estimate: ProjectionEstimate, weights=None
) -> float:
    """Projection contrast ``||t||^2 - (2/n) sum_i w_i t(u_i)``.

    When ``estimate`` holds the empirical coefficients for the same
    weights, this equals minus the coefficient sum of squares.
    """
    hat = empirical_coefficients(sample, estimate.model, weights)
    return float(estimate.coeffs @ estimate.coeffs - 2.0 * estimate.coeffs @ hat)


def density_penalty(
    model: BasisModel, n: int, cfg: PenaltyConfig, delta_mean: float = 1.0
) -> float:
    """Dimension penalty for the density contrast.

    ``delta_mean`` is 1 for the examination-time density and the
    observed status frequency for the sub-density target.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= delta_mean <= 1.0:
        raise ValueError("delta_mean must lie in [0, 1]")
    if cfg.practical_correction and model.family.tag in _DYADIC_TAGS:
        return cfg.kappa * delta_mean * corrected_dim(model) / n
    return cfg.kappa * phi0(model) ** 2 * delta_mean * model.dim / n


def select_projection_model(
    sample: ObservationSample,
    collection,
    cfg: PenaltyConfig | None = None,
    target: str = TARGET_DENSITY,
) -> tuple[BasisModel, ProjectionEstimate]:
    """Minimise penalized contrast over the collection.

    Returns the winning model and its estimate. The contrast of a
    projection estimate is minus its coefficient sum of squares, so the
    scan only needs the coefficients. Ties go to the smallest dimension,
    then to the coarser subdivision.
    """
    if cfg is None:
        cfg = PenaltyConfig()
    if target not in (TARGET_DENSITY, TARGET_SUBDENSITY):
        raise ValueError(f"unknown target {target!r}")
    models = sorted(collection, key=model_sort_key)
    if not models:
        raise ValueError("empty model collection")

    if target == TARGET_SUBDENSITY:
        weights = sample.delta
        delta_mean = float(sample.delta.mean())
    else:
        weights = None
        delta_mean = 1.0

    best = None
    best_score = np.inf
    for model in models:
        coeffs = empirical_coefficients(sample, model, weights)
        score = -float(coeffs @ coeffs) + density_penalty(
            model, sample.n, cfg, delta_mean
        )
        if score < best_score:
            best_score = score
            best = (model, coeffs)
    model, coeffs = best
    return model, ProjectionEstimate(model, coeffs, target)


def fit_examination_density(
    sample: ObservationSample,
    family: BasisFamily | None = None,
    cfg: PenaltyConfig | None = None,
    cap=CAP_DENSITY,
) -> ProjectionEstimate:
    """Adaptive estimate of the examination-time density on [0, 1]."""
    if family is None:
        family = dyadic_family()
    collection = build_collection(family, sample.n, cap)
    return select_projection_model(sample, collection, cfg, TARGET_DENSITY)[1]


def fit_status_subdensity(
    sample: ObservationSample,
    family: BasisFamily | None = None,
    cfg: PenaltyConfig | None = None,
    cap=CAP_DENSITY,
) -> ProjectionEstimate:
    """Adaptive estimate of the sub-density of status-1 examination times."""
    if family is None:
        family = dyadic_family()
    collection = build_collection(family, sample.n, cap)
    return select_projection_model(sample, collection, cfg, TARGET_SUBDENSITY)[1]
