"""Step-function benchmarks: max-min NPMLE and fixed-bin histogram.

The nonparametric maximum-likelihood estimator of the distribution
function from current-status data is piecewise constant with jumps at
the sorted examination times; its value at the i-th sorted point is
``max over j <= i of min over k >= i of mean(delta[j..k])``. The same
function is the isotonic least-squares regression of the sorted status
indicators, computed here independently by pool-adjacent-violators.
Both routes produce bitwise-identical values: every output value is a
single IEEE division of the exact integer block sum by the block count.

The fixed-bin histogram estimator averages the status indicators over a
regular partition of [0, 1] (zero on empty bins). It is not monotone in
general and needs the bin count chosen by the caller.
"""

from __future__ import annotations

import numpy as np

from .data import ObservationSample
from .estimates import StepCdf


def npmle_maxmin(sample: ObservationSample) -> StepCdf:
    """NPMLE by direct evaluation of the max-min formula.

    Quadratic in time and memory; fine up to a few thousand
    observations. ``npmle_pava`` computes the same function in linear
    time after sorting.
    """
    srt = sample.sorted_by_time()
    d = srt.delta
    n = srt.n
    csum = np.concatenate([[0.0], np.cumsum(d)])  # exact small integers
    start = np.arange(n)
    # means[j, k] = mean of d[j..k]; entries with k < j are never consulted
    num = csum[None, 1:] - csum[:-1, None]
    length = np.arange(n)[None, :] - start[:, None] + 1.0
    means = np.where(length > 0, num / np.where(length > 0, length, 1.0), np.inf)
    # inner minimum over k >= i, then outer maximum over j <= i
    suffix_min = np.minimum.accumulate(means[:, ::-1], axis=1)[:, ::-1]
    prefix_max = np.maximum.accumulate(suffix_min, axis=0)
    values = np.diagonal(prefix_max).copy()
    return StepCdf(srt.u, values)


def npmle_pava(sample: ObservationSample) -> StepCdf:
    """NPMLE by pool-adjacent-violators on the sorted status indicators.

    Blocks carry integer (sum, count) pairs; a block is pooled into its
    predecessor while the predecessor's mean is not smaller. Comparisons
    use integer cross-products, so pooling decisions are exact.
    """
    srt = sample.sorted_by_time()
    d = srt.delta.astype(int)
    sums: list[int] = []
    counts: list[int] = []
    for di in d:
        sums.append(int(di))
        counts.append(1)
        while len(sums) > 1 and sums[-2] * counts[-1] >= sums[-1] * counts[-2]:
            s, c = sums.pop(), counts.pop()
            sums[-1] += s
            counts[-1] += c
    values = np.concatenate(
        [np.full(c, s / c) for s, c in zip(sums, counts)]
    )
    return StepCdf(srt.u, values)


def birge_histogram(sample: ObservationSample, n_bins: int) -> StepCdf:
    """Status means over a regular partition of [0, 1], zero on empty bins.

    Observations outside [0, 1] are ignored. The last bin is closed at 1.
    """
    if n_bins < 1:
        raise ValueError("need at least one bin")
    inside = (sample.u >= 0.0) & (sample.u <= 1.0)
    u = sample.u[inside]
    d = sample.delta[inside]
    idx = np.minimum((u * n_bins).astype(int), n_bins - 1)
    counts = np.bincount(idx, minlength=n_bins)
    sums = np.bincount(idx, weights=d, minlength=n_bins)
    values = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    knots = np.arange(n_bins) / n_bins
    return StepCdf(knots, values)
