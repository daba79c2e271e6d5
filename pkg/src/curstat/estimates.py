"""Evaluable distribution-function estimates.

``CdfEstimate`` is the common wrapper returned by all estimation
routes: a method tag, an evaluator on [0, 1] (vectorised, scalar in ->
scalar out), and a metadata dict recording selected models, contrast
and penalty values. ``StepCdf`` is the piecewise-constant variant used
by the max-min and fixed-bin estimators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _vectorised(fn, x):
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    values = fn(arr)
    if np.ndim(x) == 0:
        return float(values[0])
    return np.reshape(values, np.shape(x))


@dataclass(frozen=True)
class StepCdf:
    """Right-continuous step function, 0 to the left of the first knot.

    ``values[i]`` is carried on ``[knots[i], knots[i+1])``; the last
    value extends to the right. Knots must be sorted; tied knots resolve
    to the last value at the tie.
    """

    knots: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        knots = np.atleast_1d(np.asarray(self.knots, dtype=float))
        values = np.atleast_1d(np.asarray(self.values, dtype=float))
        if knots.size != values.size or knots.size == 0:
            raise ValueError("knots and values must be equal-length and nonempty")
        if np.any(np.diff(knots) < 0):
            raise ValueError("knots must be sorted")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "values", values)

    def _eval(self, x: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.knots, x, side="right") - 1
        return np.where(idx >= 0, self.values[np.maximum(idx, 0)], 0.0)

    def __call__(self, x):
        return _vectorised(self._eval, x)

    def as_cdf(self, method: str, **metadata) -> "CdfEstimate":
        return CdfEstimate(method, self, metadata)


@dataclass(frozen=True)
class CdfEstimate:
    """A distribution-function estimate plus how it was obtained."""

    method: str
    evaluator: object  # callable on float arrays
    metadata: dict = field(default_factory=dict)

    def __call__(self, x):
        return _vectorised(self.evaluator, x)

    def clamped(self) -> "CdfEstimate":
        """Same estimate with values truncated to [0, 1] at evaluation."""
        inner = self.evaluator
        meta = dict(self.metadata)
        meta["clamped"] = True
        return CdfEstimate(self.method, lambda x: np.clip(inner(x), 0.0, 1.0), meta)
