import logging
import math
from dataclasses import dataclass

import numpy as np

from core.conf import eklab_setting
from core.exceptions import DomainError, ResourceError
from factor.primes import primes_between

logger = logging.getLogger(__name__)

MAX_HI = 2 ** 63
_I64_MAX = np.iinfo(np.int64).max


@dataclass(frozen=True)
class ArithValues:
    """sigma, phi, tau, omega and P+ of a single n."""
    n: int
    sigma: int
    phi: int
    tau: int
    omega: int
    lpf: int
    lpf_sq_divides: bool


@dataclass(frozen=True, eq=False)
class SieveBlock:
    """Per-n arithmetic data for lo <= n < hi, arrays indexed by n - lo.

    Arrays are int64 rather than uint64 so that the linear forms, whose
    b(m) can be negative, stay in one signed dtype.
    """
    lo: int
    hi: int
    sigma: np.ndarray
    phi: np.ndarray
    tau: np.ndarray
    omega_small: np.ndarray
    lpf: np.ndarray
    lpf_sq_divides: np.ndarray

    def __len__(self):
        return self.hi - self.lo

    def __contains__(self, n):
        return self.lo <= n < self.hi

    @property
    def n(self):
        return np.arange(self.lo, self.hi, dtype=np.int64)

    def index(self, n):
        if n not in self:
            raise DomainError(f"n = {n} is outside the sieve block [{self.lo}, {self.hi})")
        return n - self.lo

    def at(self, n):
        i = self.index(n)
        return ArithValues(
            n=n,
            sigma=int(self.sigma[i]),
            phi=int(self.phi[i]),
            tau=int(self.tau[i]),
            omega=int(self.omega_small[i]),
            lpf=int(self.lpf[i]),
            lpf_sq_divides=bool(self.lpf_sq_divides[i]),
        )


def _check_product(current, factor):
    # int64 multiplication in numpy wraps silently
    if np.any(current > _I64_MAX // factor):
        raise ResourceError("sigma overflows 64 bits in this block, lower --hi")


def base_primes_for(hi):
    """The primes up to sqrt(hi - 1), within the BASE_PRIME_LIMIT budget."""
    root = math.isqrt(hi - 1)
    limit = eklab_setting('BASE_PRIME_LIMIT')
    if root > limit:
        raise ResourceError(
            f"sieving below {hi} needs primes up to {root}, the budget is {limit} (BASE_PRIME_LIMIT)"
        )
    return primes_between(2, root + 1)


def sieve_block(lo, hi, segment_size=None, base_primes=None):
    """sigma, phi, tau, omega and P+ for lo <= n < hi.

    ``base_primes`` must hold every prime up to sqrt(hi - 1); pass it when
    sieving many blocks of one range so it is computed once.
    """
    if lo < 2:
        raise DomainError(f"sieve_block needs lo >= 2, got lo = {lo}")
    if hi <= lo:
        raise DomainError(f"sieve_block needs lo < hi, got [{lo}, {hi})")
    if hi > MAX_HI:
        raise DomainError(f"sieve_block needs hi <= 2**63, got {hi}")
    segment_size = eklab_setting('SEGMENT_SIZE', segment_size)
    if hi - lo > segment_size:
        raise ResourceError(
            f"segment [{lo}, {hi}) has {hi - lo} entries, the budget is {segment_size} (EKLAB_SEGMENT_SIZE)"
        )

    if base_primes is None:
        base_primes = base_primes_for(hi)
    else:
        base_primes = base_primes[base_primes <= math.isqrt(hi - 1)]

    size = hi - lo
    n = np.arange(lo, hi, dtype=np.int64)
    rest = n.copy()
    sigma = np.ones(size, dtype=np.int64)
    phi = np.ones(size, dtype=np.int64)
    tau = np.ones(size, dtype=np.int64)
    omega = np.zeros(size, dtype=np.uint8)
    lpf = np.ones(size, dtype=np.int64)
    lpf_exp = np.zeros(size, dtype=np.int64)

    # --- 1. divide out every prime p <= sqrt(hi - 1) ---
    for p in base_primes:
        p = int(p)
        first = -(-lo // p) * p
        if first >= hi:
            continue
        pos = np.arange(first - lo, size, p)

        # exponent of p in n and p**e
        e = np.ones(len(pos), dtype=np.int64)
        pe = np.full(len(pos), p, dtype=np.int64)
        pk = p * p
        while pk < hi:
            deeper = n[pos] % pk == 0
            if not deeper.any():
                break
            e[deeper] += 1
            pe[deeper] *= p
            pk *= p

        rest[pos] //= pe
        # 1 + p + ... + p**e = p**e + (p**e - 1) / (p - 1), no p**(e+1) needed
        tail = (pe - 1) // (p - 1)
        if np.any(pe > _I64_MAX - tail):
            raise ResourceError("sigma overflows 64 bits in this block, lower --hi")
        factor = pe + tail
        _check_product(sigma[pos], factor)
        sigma[pos] *= factor
        phi[pos] *= (pe // p) * (p - 1)
        tau[pos] *= e + 1
        omega[pos] += 1
        # primes come in increasing order, so the last write is the largest
        lpf[pos] = p
        lpf_exp[pos] = e

    # --- 2. the cofactor left over is 1 or a single prime above sqrt(hi) ---
    big = rest > 1
    cofactor = rest[big]
    _check_product(sigma[big], cofactor + 1)
    sigma[big] *= cofactor + 1
    phi[big] *= cofactor - 1
    tau[big] *= 2
    omega[big] += 1
    lpf[big] = cofactor
    lpf_exp[big] = 1

    logger.debug("sieved [%d, %d)", lo, hi)
    return SieveBlock(
        lo=lo,
        hi=hi,
        sigma=sigma,
        phi=phi,
        tau=tau,
        omega_small=omega,
        lpf=lpf,
        lpf_sq_divides=lpf_exp >= 2,
    )


def sieve_range(lo, hi, segment_size=None):
    """Yield consecutive blocks covering [lo, hi)."""
    segment_size = eklab_setting('SEGMENT_SIZE', segment_size)
    base = base_primes_for(hi) if lo < hi <= MAX_HI else None
    start = lo
    while start < hi:
        stop = min(start + segment_size, hi)
        yield sieve_block(start, stop, segment_size=segment_size, base_primes=base)
        start = stop


def s_of(n, block):
    """s(n) = sigma(n) - n, the sum of proper divisors."""
    if n < 2:
        raise DomainError(f"s(n) needs n >= 2, got {n}")
    return block.at(n).sigma - n
