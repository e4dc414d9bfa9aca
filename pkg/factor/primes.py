import math

import numpy as np


def primes_upto(limit):
    """All primes p <= limit as an int64 array (plain sieve of Eratosthenes)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def primes_between(lo, hi, segment=1 << 22):
    """All primes p with lo <= p < hi, sieved segment by segment."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.array([], dtype=np.int64)

    base = primes_upto(math.isqrt(hi - 1))
    chunks = []
    start = lo
    while start < hi:
        stop = min(start + segment, hi)
        mask = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            mask[first - start::p] = False
        chunks.append(np.flatnonzero(mask).astype(np.int64) + start)
        start = stop
    return np.concatenate(chunks)
