import math
from dataclasses import dataclass

import numpy as np

from core.conf import eklab_setting
from core.exceptions import DomainError

from .normal import normal_cdf


@dataclass(frozen=True, eq=False)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    normal_mass: np.ndarray
    underflow: int
    overflow: int

    @property
    def total(self):
        return int(self.counts.sum()) + self.underflow + self.overflow

    def rows(self):
        """CSV rows (bin_lo, bin_hi, count, normal_mass), overflow bins on the flanks."""
        lo, hi = float(self.edges[0]), float(self.edges[-1])
        yield (-math.inf, lo, self.underflow, normal_cdf(lo))
        for i in range(len(self.counts)):
            yield (float(self.edges[i]), float(self.edges[i + 1]), int(self.counts[i]), float(self.normal_mass[i]))
        yield (hi, math.inf, self.overflow, 1.0 - normal_cdf(hi))


HEADER = ('bin_lo', 'bin_hi', 'count', 'normal_mass')


def histogram(scores, bins=None, value_range=None, weights=None):
    """Bin counts over value_range plus the standard normal mass of each bin.

    Scores outside the range land in the underflow/overflow bins. ``weights``
    lets a table of (score, count) pairs stand in for the raw scores.
    """
    bins = eklab_setting('HIST_BINS', bins)
    lo, hi = eklab_setting('HIST_RANGE', value_range)
    if bins < 1:
        raise DomainError(f"bins must be >= 1, got {bins}")
    if not lo < hi:
        raise DomainError(f"histogram range needs lo < hi, got ({lo}, {hi})")

    scores = np.asarray(scores, dtype=np.float64)
    if weights is None:
        weights = np.ones(len(scores), dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)

    edges = np.linspace(lo, hi, bins + 1)
    inside = (scores >= lo) & (scores <= hi)
    counts, _ = np.histogram(scores[inside], bins=edges, weights=weights[inside])
    cdf = normal_cdf(edges)
    return Histogram(
        edges=edges,
        counts=counts.astype(np.int64),
        normal_mass=np.diff(cdf),
        underflow=int(weights[scores < lo].sum()),
        overflow=int(weights[scores > hi].sum()),
    )
