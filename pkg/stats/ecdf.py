from dataclasses import dataclass

import numpy as np

from core.exceptions import DomainError

from .normal import normal_cdf


@dataclass(frozen=True, eq=False)
class Ecdf:
    """Empirical CDF kept as its jump points and the cumulative counts there.

    points   distinct scores, ascending
    cumulative  number of scores <= points[i]
    """
    points: np.ndarray
    cumulative: np.ndarray

    @property
    def n(self):
        return int(self.cumulative[-1])

    @classmethod
    def from_scores(cls, scores):
        points, counts = np.unique(np.asarray(scores, dtype=np.float64), return_counts=True)
        return cls._build(points, counts)

    @classmethod
    def from_counts(cls, values, counts):
        """Weighted construction, for scores that take few distinct values."""
        values = np.asarray(values, dtype=np.float64)
        counts = np.asarray(counts, dtype=np.int64)
        order = np.argsort(values, kind='stable')
        points, inverse = np.unique(values[order], return_inverse=True)
        merged = np.bincount(inverse, weights=counts[order], minlength=len(points)).astype(np.int64)
        keep = merged > 0
        return cls._build(points[keep], merged[keep])

    @classmethod
    def _build(cls, points, counts):
        if len(points) == 0:
            raise DomainError("an empirical CDF needs at least one score")
        return cls(points=points, cumulative=np.cumsum(counts))

    def __call__(self, u):
        i = np.searchsorted(self.points, u, side='right')
        if i == 0:
            return 0.0
        return float(self.cumulative[i - 1]) / self.n


def ks_distance(ecdf):
    """sup_u |F_n(u) - Phi(u)|, checked on both sides of every jump."""
    phi = normal_cdf(ecdf.points)
    after = ecdf.cumulative / ecdf.n
    before = np.concatenate(([0.0], after[:-1]))
    return float(max(np.max(np.abs(after - phi)), np.max(np.abs(before - phi))))
