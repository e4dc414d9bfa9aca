import logging
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from arith.linear import linear_form_block
from arith.sieve import sieve_range
from core.conf import eklab_setting
from core.exceptions import ParameterError
from factor.factorize import factorize
from factor.primes import primes_upto
from model.window import build_window, iterated_log

from .dcount import enumerate_d

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HypothesisSums:
    x: int
    k: int
    small_prime_sum: float
    gcd_sum: float
    d_count: int
    partial: bool
    small_prime_shape: float
    gcd_shape: float

    def as_dict(self):
        return {
            'x': self.x,
            'k': self.k,
            'small_prime_sum': self.small_prime_sum,
            'gcd_sum': self.gcd_sum,
            'd_count': self.d_count,
            'partial': self.partial,
            'small_prime_shape': self.small_prime_shape,
            'gcd_shape': self.gcd_shape,
            'small_prime_over_shape': self.small_prime_sum / self.small_prime_shape,
            'gcd_over_shape': self.gcd_sum / self.gcd_shape,
        }


def target_shapes(x, l4_floor=None):
    """sqrt(log2 x) log x / log4 x for the small-prime sum, log2 x for the gcd sum."""
    l4_floor = eklab_setting('L4_FLOOR', l4_floor)
    loglog = iterated_log(x, 2)
    log4 = max(iterated_log(x, 4), l4_floor)
    return math.sqrt(loglog) * math.log(x) / log4, loglog


def _index_by_prime(ds):
    factored = {}
    by_prime = defaultdict(list)
    for d in ds:
        primes = factorize(d).primes
        factored[d] = primes
        for p in primes:
            by_prime[p].append(d)
    return factored, by_prime


def hypothesis_sums(spec, x, k, window, cap=None, limit=None, segment_size=None, l4_floor=None):
    """Both sums evaluated exactly over m <= x; the gcd sum over a capped d-list.

    m <= spec.m0 is skipped, as it is for the sample space (b(m) may vanish there).
    """
    x_cap = eklab_setting('HYPOTHESES_X_CAP')
    if x > x_cap:
        raise ParameterError(f"x is limited to {x_cap:g}", flag='--x')

    ds, partial = enumerate_d(window, k, cap=cap, limit=limit)
    factored, by_prime = _index_by_prime(ds)
    small = [int(p) for p in primes_upto(int(window.y))]
    y, z = window.y, window.z

    small_terms = []
    gcd_terms = []
    for block in sieve_range(2, x + 1, segment_size=segment_size):
        m = block.n
        a, b = linear_form_block(spec, block)
        keep = m > spec.m0
        m, a, b = m[keep], a[keep], b[keep]
        g = np.gcd(a, b)

        reciprocal = 1.0 / m
        for p in small:
            hit = g % p == 0
            if hit.any():
                small_terms.append(math.fsum(reciprocal[hit]))

        for i in np.flatnonzero((g > y) & (m < x)):
            both = [p for p in factorize(int(g[i])).primes if y < p <= z]
            if not both:
                continue
            mi, ai, bi = int(m[i]), int(a[i]), int(b[i])
            seen = set()
            for p in both:
                for d in by_prime.get(p, ()):
                    if d in seen:
                        continue
                    seen.add(d)
                    # the rest of d must divide neither a(m) nor b(m)
                    if all(q in both or (ai % q and bi % q) for q in factored[d]):
                        gcd_terms.append(math.gcd(d, ai) / (mi * d))

    small_shape, gcd_shape_value = target_shapes(x, l4_floor)
    result = HypothesisSums(
        x=x,
        k=k,
        small_prime_sum=math.fsum(small_terms),
        gcd_sum=math.fsum(gcd_terms),
        d_count=len(ds),
        partial=partial,
        small_prime_shape=small_shape,
        gcd_shape=gcd_shape_value,
    )
    logger.info("hypothesis sums for %s at x = %d: %s, %s", spec, x, result.small_prime_sum, result.gcd_sum)
    return result


def growth_ratios(results):
    """Ratios of each sum between consecutive x; None where the smaller sum is 0."""
    ratios = []
    for before, after in zip(results, results[1:]):
        ratios.append({
            'from_x': before.x,
            'to_x': after.x,
            'small_prime_sum': after.small_prime_sum / before.small_prime_sum if before.small_prime_sum else None,
            'gcd_sum': after.gcd_sum / before.gcd_sum if before.gcd_sum else None,
        })
    return ratios


def run_hypotheses(spec, xs, k=None, cap=None, y=None, z=None, l3_floor=None, l4_floor=None):
    """Both sums at every x (default window per x), with growth ratios."""
    k = eklab_setting('DEFAULT_K', k)
    results = []
    for x in sorted(set(xs)):
        window = build_window(x, y=y, z=z, l3_floor=l3_floor)
        results.append(hypothesis_sums(spec, x, k, window, cap=cap, l4_floor=l4_floor))
    return {
        'fn': spec.label,
        'k': k,
        'results': [result.as_dict() for result in results],
        'ratios': growth_ratios(results),
    }
