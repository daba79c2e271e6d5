"""Quotient estimator of the distribution function.

The distribution function equals the ratio of the status-1 sub-density
to the examination-time density wherever the latter is positive, so
clamping the ratio of the two adaptive projection estimates to [0, 1]
gives a plug-in estimate. Clamping never hurts: for any target value c
in [0, 1], |clamp(r) - c| <= |r - c|.

The result is not forced to be monotone; the raw ratio is reported
wherever it already lies in [0, 1].
"""

from __future__ import annotations

import numpy as np

from .bases import CAP_DENSITY, BasisFamily
from .data import ObservationSample
from .estimates import CdfEstimate
from .projection import (
    PenaltyConfig,
    ProjectionEstimate,
    density_penalty,
    fit_examination_density,
    fit_status_subdensity,
)


def _clamped_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.empty_like(num)
    nonzero = den != 0.0
    out[nonzero] = num[nonzero] / den[nonzero]
    # Where the density estimate vanishes exactly, carry the sign of the
    # numerator into the clamp; a vanishing numerator maps to 0.
    zero = ~nonzero
    out[zero & (num > 0.0)] = np.inf
    out[zero & (num < 0.0)] = -np.inf
    out[zero & (num == 0.0)] = 0.0
    return np.clip(out, 0.0, 1.0)


def quotient_cdf(
    numerator: ProjectionEstimate, denominator: ProjectionEstimate
) -> CdfEstimate:
    """Clamped ratio of a sub-density estimate to a density estimate."""

    def evaluate(x: np.ndarray) -> np.ndarray:
        return _clamped_ratio(numerator(x), denominator(x))

    metadata = {
        "numerator_model": numerator.model.describe(),
        "denominator_model": denominator.model.describe(),
        "numerator_contrast": -numerator.norm_sq,
        "denominator_contrast": -denominator.norm_sq,
    }
    return CdfEstimate("quotient", evaluate, metadata)


def fit_quotient_cdf(
    sample: ObservationSample,
    family: BasisFamily | None = None,
    cfg: PenaltyConfig | None = None,
    cap=CAP_DENSITY,
) -> CdfEstimate:
    """Run both adaptive density fits and combine them."""
    if cfg is None:
        cfg = PenaltyConfig()
    sub = fit_status_subdensity(sample, family, cfg, cap)
    den = fit_examination_density(sample, family, cfg, cap)
    estimate = quotient_cdf(sub, den)
    estimate.metadata["numerator_penalty"] = density_penalty(
        sub.model, sample.n, cfg, float(sample.delta.mean())
    )
    estimate.metadata["denominator_penalty"] = density_penalty(
        den.model, sample.n, cfg, 1.0
    )
    return estimate
