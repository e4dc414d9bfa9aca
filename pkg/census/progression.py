import logging
import math

import numpy as np

from core.conf import eklab_setting
from core.exceptions import DomainError, ParameterError
from factor.factorize import factorize
from factor.primes import primes_upto

logger = logging.getLogger(__name__)


def euler_phi(q):
    return math.prod(p ** (e - 1) * (p - 1) for p, e in factorize(q).factors)


def progression_error(T, q):
    """E(T; q): max over 2 <= t <= T and a coprime to q of |pi(t; q, a) - pi(t)/phi(q)|.

    Both counts only move at primes, so it is enough to look at each class
    at its own primes, just before them, and at t = T.
    """
    if q < 2 or T < 2:
        raise DomainError(f"E(T; q) needs q >= 2 and T >= 2, got q = {q}, T = {T}")
    cap = eklab_setting('PROGRESSION_T_CAP')
    if T > cap:
        raise ParameterError(f"T is limited to {cap:g}", flag='--T')

    primes = primes_upto(T)
    total = len(primes)
    phi = euler_phi(q)

    residues = primes % q
    position = np.flatnonzero(np.gcd(residues, q) == 1)
    residues = residues[position]
    order = np.argsort(residues, kind='stable')
    position, residues = position[order], residues[order]

    best = 0.0
    if len(position):
        starts = np.flatnonzero(np.r_[True, residues[1:] != residues[:-1]])
        sizes = np.diff(np.r_[starts, len(position)])
        rank = np.arange(len(position)) - np.repeat(starts, sizes) + 1

        above = rank - (position + 1) / phi     # at the class's own primes
        below = position / phi - (rank - 1)     # at the prime just before
        at_end = total / phi - sizes            # at t = T
        best = max(above.max(), below.max(), at_end.max())
        present = len(starts)
    else:
        present = 0

    if present < phi:
        # a class with no prime up to T sits at pi(T)/phi(q)
        best = max(best, total / phi)

    logger.debug("E(%d; %d) = %s over %d primes", T, q, best, total)
    return float(best)
