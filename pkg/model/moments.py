import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from core.conf import eklab_setting
from core.exceptions import DomainError


@dataclass(frozen=True)
class MomentReport:
    """Standardized moments indexed by j (index 0 holds the trivial moment 1)."""
    k_max: int
    empirical: list
    model: list
    normal: list

    @property
    def diffs(self):
        return [e - m for e, m in zip(self.empirical, self.model)]

    def as_dict(self):
        # j = 1..k_max
        return {
            'k_max': self.k_max,
            'empirical': list(self.empirical[1:]),
            'model': list(self.model[1:]),
            'normal': list(self.normal[1:]),
            'diffs': self.diffs[1:],
        }


def check_k_max(k_max):
    limit = eklab_setting('K_MAX_LIMIT')
    if not 1 <= k_max <= limit:
        raise DomainError(f"k_max must be in [1, {limit}], got {k_max}")


def bernoulli_cumulants(k_max):
    """Cumulant polynomials of Bernoulli(q): k1 = q, k_(j+1) = q(1 - q) dk_j/dq."""
    step = Polynomial([0.0, 1.0, -1.0])
    polys = [Polynomial([0.0, 1.0])]
    while len(polys) < k_max:
        polys.append(step * polys[-1].deriv())
    return polys


def central_from_cumulants(kappa):
    """Central moments mu_0..mu_k from cumulants kappa[1..k] (kappa[1] ignored)."""
    k_max = len(kappa) - 1
    central = [1.0] + [0.0] * k_max
    for n in range(2, k_max + 1):
        central[n] = math.fsum(
            math.comb(n - 1, k - 1) * kappa[k] * central[n - k] for k in range(2, n + 1)
        )
    return central


def model_moments(window, k_max):
    """E[Y~^j] for j = 0..k_max, exact up to rounding, by cumulant addition."""
    check_k_max(k_max)
    q = 1.0 / window.primes.astype(np.float64)
    kappa = [0.0] + [math.fsum(poly(q)) for poly in bernoulli_cumulants(k_max)]
    central = central_from_cumulants(kappa)
    sigma = math.sqrt(kappa[2])
    moments = np.array([central[j] / sigma ** j for j in range(k_max + 1)])
    moments[1] = 0.0
    return moments


def normal_moments(k_max):
    """E[N^j]: 0 for odd j, (j - 1)!! for even j."""
    check_k_max(k_max)
    moments = np.zeros(k_max + 1)
    moments[0] = 1.0
    for j in range(2, k_max + 1, 2):
        moments[j] = moments[j - 2] * (j - 1)
    return moments


def standardized_from_power_sums(power_sums, count, mu, sigma, k_max):
    """E[((X - mu)/sigma)^j] from exact integer power sums S_i = sum X^i.

    Expands (X - mu)^j binomially; only the final division is floating point.
    """
    if count == 0:
        raise DomainError("no samples to take moments of")
    raw = [power_sums[i] / count for i in range(k_max + 1)]
    moments = np.empty(k_max + 1)
    for j in range(k_max + 1):
        centered = math.fsum(math.comb(j, i) * raw[i] * (-mu) ** (j - i) for i in range(j + 1))
        moments[j] = centered / sigma ** j
    return moments
