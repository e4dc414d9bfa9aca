from dataclasses import dataclass

import numpy as np
from django.db import models

from core.conf import eklab_setting
from core.exceptions import DomainError, ParameterError
from factor.factorize import factorize

from .sieve import sieve_range


class Family(models.TextChoices):
    S = 's', 's(n) = sigma(n) - n'
    BETA = 'beta', 'sum of the distinct prime divisors'
    BIG_A = 'A', 'sum of the prime divisors with multiplicity'
    COTOTIENT = 'cototient', 'n - phi(n)'
    N_PLUS_TAU = 'n+tau', 'n + tau(n)'
    N_MINUS_TAU = 'n-tau', 'n - tau(n)'
    N_PLUS_OMEGA = 'n+omega', 'n + omega(n)'
    N_MINUS_OMEGA = 'n-omega', 'n - omega(n)'
    PHI_SHIFT = 'phi+a', 'phi(n) + a'


@dataclass(frozen=True)
class FnSpec:
    """Which f is under study. ``m0`` bounds the m where b(m) may vanish."""
    family: str
    shift: int = 0
    m0: int = 0

    @classmethod
    def of(cls, family, shift=0):
        family = Family(family)
        if family != Family.PHI_SHIFT:
            return cls(family=family)

        limit = eklab_setting('PHI_SHIFT_LIMIT')
        if shift == 0:
            raise ParameterError("phi+a needs a nonzero shift", flag='--shift')
        if abs(shift) > limit:
            raise ParameterError(f"|shift| must be at most {limit}", flag='--shift')
        return cls(family=family, shift=shift, m0=phi_preimage_max(shift))

    @property
    def label(self):
        if self.family == Family.PHI_SHIFT:
            return f"phi{self.shift:+d}"
        return str(self.family)

    def __str__(self):
        return self.label


def phi_preimage_max(a):
    """Largest m > 1 with phi(m) = a, or 0 if there is none.

    phi(m) >= sqrt(m / 2), so every solution satisfies m <= 2a^2.
    """
    if a <= 0:
        return 0
    best = 0
    for block in sieve_range(2, 2 * a * a + 1):
        hits = np.flatnonzero(block.phi == a)
        if len(hits):
            best = block.lo + int(hits[-1])
    return best


# --- beta and A, evaluated pointwise through the factorization ---

def beta_like(n, with_multiplicity=False):
    if n < 2:
        raise DomainError(f"beta(n) needs n >= 2, got {n}")
    factors = factorize(n).factors
    if with_multiplicity:
        return sum(e * p for p, e in factors)
    return sum(p for p, _ in factors)


def beta(n):
    return beta_like(n)


def big_a(n):
    return beta_like(n, with_multiplicity=True)


def evaluate(spec, n, values):
    """f(n) from the sieved values of n (an ArithValues)."""
    family = spec.family
    if family == Family.S:
        return values.sigma - n
    if family == Family.BETA:
        return beta(n)
    if family == Family.BIG_A:
        return big_a(n)
    if family == Family.COTOTIENT:
        return n - values.phi
    if family == Family.N_PLUS_TAU:
        return n + values.tau
    if family == Family.N_MINUS_TAU:
        return n - values.tau
    if family == Family.N_PLUS_OMEGA:
        return n + values.omega
    if family == Family.N_MINUS_OMEGA:
        return n - values.omega
    return values.phi + spec.shift


def evaluate_block(spec, block):
    """f(n) for every n in the block, as an int64 array."""
    family = spec.family
    n = block.n
    omega = block.omega_small.astype(np.int64)

    if family == Family.S:
        return block.sigma - n
    if family in (Family.BETA, Family.BIG_A):
        multiplicity = family == Family.BIG_A
        return np.fromiter((beta_like(int(v), multiplicity) for v in n), dtype=np.int64, count=len(n))
    if family == Family.COTOTIENT:
        return n - block.phi
    if family == Family.N_PLUS_TAU:
        return n + block.tau
    if family == Family.N_MINUS_TAU:
        return n - block.tau
    if family == Family.N_PLUS_OMEGA:
        return n + omega
    if family == Family.N_MINUS_OMEGA:
        return n - omega
    return block.phi + spec.shift
