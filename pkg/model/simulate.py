import logging
from dataclasses import dataclass

import numpy as np

from core.conf import eklab_setting
from core.exceptions import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ModelSample:
    counts: np.ndarray  # Y = sum of the Bernoulli(1/p) draws, one per trial
    scores: np.ndarray  # (Y - mu) / sigma

    @property
    def mean(self):
        return float(self.counts.mean())


def sample_model(window, trials, seed, chunk=None):
    """Monte-Carlo draws of Y over the window. The same seed gives the same stream."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    chunk = eklab_setting('MODEL_CHUNK', chunk)

    q = 1.0 / window.primes.astype(np.float64)
    rows = max(1, chunk // len(q))
    rng = np.random.default_rng(seed)
    counts = np.empty(trials, dtype=np.int64)
    for start in range(0, trials, rows):
        stop = min(start + rows, trials)
        draws = rng.random((stop - start, len(q))) < q
        counts[start:stop] = draws.sum(axis=1)

    logger.info("simulated %d trials over %d primes (seed %d)", trials, len(q), seed)
    scores = (counts - window.mu) / window.sigma
    return ModelSample(counts=counts, scores=scores)
