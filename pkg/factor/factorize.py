import math
from collections import Counter
from dataclasses import dataclass

from core.conf import eklab_setting
from core.exceptions import DomainError

from .primality import SMALL_PRIMES, is_prime

_U64 = 1 << 64


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple  # ((prime, exponent), ...) with strictly increasing primes

    @property
    def omega(self):
        return len(self.factors)

    @property
    def omega_prime(self):
        # counted with multiplicity
        return sum(e for _, e in self.factors)

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)

    def count_between(self, lo, hi):
        """Number of distinct primes p with lo < p <= hi."""
        return sum(1 for p, _ in self.factors if lo < p <= hi)

    def product(self):
        result = 1
        for p, e in self.factors:
            result *= p ** e
        return result


def _brent(n, c):
    """One Pollard-Brent run with f(y) = y^2 + c. Returns a divisor, maybe n."""
    y, r, q, g = (c + 1) % n, 1, 1, 1
    m = 128
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2

    if g == n:
        # block gcd overshot, walk back one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n):
    """A nontrivial divisor of the odd composite n."""
    root = math.isqrt(n)
    if root * root == n:
        return root

    # seed derived from n so every run (and every worker) makes the same choices
    c = n % 1000003 or 1
    while True:
        g = _brent(n, c)
        if g != n:
            return g
        c += 1


def factorize(v, trial_bound=None):
    if v < 1 or v >= _U64:
        raise DomainError(f"factorize expects 1 <= v < 2**64, got {v}")

    counts = Counter()
    bound = eklab_setting('TRIAL_DIVISION_BOUND', trial_bound)
    rest = v

    # 1. trial division by the small primes
    for p in SMALL_PRIMES:
        if p > bound or p * p > rest:
            break
        while rest % p == 0:
            counts[p] += 1
            rest //= p

    # 2. what is left is 1, a prime, or a product of primes > bound
    stack = [rest] if rest > 1 else []
    while stack:
        n = stack.pop()
        if is_prime(n):
            counts[n] += 1
            continue
        d = _split(n)
        stack.extend((d, n // d))

    return Factorization(value=v, factors=tuple(sorted(counts.items())))


def omega_in_window(v, window):
    """#{p in (y, z] : p | v} for the prime window. ``v`` may already be factored."""
    if isinstance(v, Factorization):
        return v.count_between(window.y, window.z)
    if v == 1:
        return 0
    return factorize(v).count_between(window.y, window.z)
