"""Linear forms f(mP) = P*a(m) + b(m), valid for every prime P not dividing m.

    s         a = s(m),        b = sigma(m)
    beta, A   a = 1,           b = beta(m) / A(m)
    cototient a = m - phi(m),  b = phi(m)
    n +- tau  a = m,           b = +-2 tau(m)
    n +- omega a = m,          b = +-(omega(m) + 1)
    phi + a   a = phi(m),      b = a - phi(m)
"""
import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import DomainError

from .functions import Family, beta_like
from .sieve import sieve_range

logger = logging.getLogger(__name__)


def linear_form(spec, m, values):
    """(a(m), b(m)) from the sieved values of m.

    For phi + a, b(m) = 0 when phi(m) = a; such m are <= spec.m0 and are
    dropped from the sample space by the caller, so this is not an error.
    """
    if m < 2:
        raise DomainError(f"the decomposition n = mP needs m > 1, got m = {m}")

    family = spec.family
    if family == Family.S:
        return values.sigma - m, values.sigma
    if family == Family.BETA:
        return 1, beta_like(m)
    if family == Family.BIG_A:
        return 1, beta_like(m, with_multiplicity=True)
    if family == Family.COTOTIENT:
        return m - values.phi, values.phi
    if family == Family.N_PLUS_TAU:
        return m, 2 * values.tau
    if family == Family.N_MINUS_TAU:
        return m, -2 * values.tau
    if family == Family.N_PLUS_OMEGA:
        return m, values.omega + 1
    if family == Family.N_MINUS_OMEGA:
        return m, -(values.omega + 1)
    return values.phi, spec.shift - values.phi


def linear_form_block(spec, block):
    """(a, b) arrays with every n of the block taken as m."""
    family = spec.family
    m = block.n
    omega = block.omega_small.astype(np.int64)

    if family == Family.S:
        return block.sigma - m, block.sigma.copy()
    if family in (Family.BETA, Family.BIG_A):
        multiplicity = family == Family.BIG_A
        b = np.fromiter((beta_like(int(v), multiplicity) for v in m), dtype=np.int64, count=len(m))
        return np.ones(len(m), dtype=np.int64), b
    if family == Family.COTOTIENT:
        return m - block.phi, block.phi.copy()
    if family == Family.N_PLUS_TAU:
        return m, 2 * block.tau
    if family == Family.N_MINUS_TAU:
        return m, -2 * block.tau
    if family == Family.N_PLUS_OMEGA:
        return m, omega + 1
    if family == Family.N_MINUS_OMEGA:
        return m, -(omega + 1)
    return block.phi.copy(), spec.shift - block.phi


@dataclass(frozen=True, eq=False)
class LinearFormTable:
    """a(m), b(m) and P+(m) for 2 <= m < hi, indexed by m - 2."""
    spec: object
    hi: int
    a: np.ndarray
    b: np.ndarray
    lpf: np.ndarray

    lo = 2

    @classmethod
    def build(cls, spec, hi, segment_size=None):
        hi = max(hi, 3)
        a_parts, b_parts, lpf_parts = [], [], []
        for block in sieve_range(2, hi, segment_size=segment_size):
            a, b = linear_form_block(spec, block)
            a_parts.append(a)
            b_parts.append(b)
            lpf_parts.append(block.lpf)
        logger.debug("linear forms of %s tabulated for m < %d", spec, hi)
        return cls(
            spec=spec,
            hi=hi,
            a=np.concatenate(a_parts),
            b=np.concatenate(b_parts),
            lpf=np.concatenate(lpf_parts),
        )

    @property
    def m(self):
        return np.arange(self.lo, self.hi, dtype=np.int64)

    def at(self, m):
        if not self.lo <= m < self.hi:
            raise DomainError(f"m = {m} is outside the linear-form table [2, {self.hi})")
        return int(self.a[m - 2]), int(self.b[m - 2])
