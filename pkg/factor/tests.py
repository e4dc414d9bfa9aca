import math
import random

import numpy as np
from django.test import SimpleTestCase, tag

from core.exceptions import DomainError
from model.window import build_window

from .factorize import factorize, omega_in_window
from .primality import is_prime
from .primes import primes_between, primes_upto


def trial_division(n):
    factors = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            factors.append((p, e))
        p += 1
    if n > 1:
        factors.append((n, 1))
    return tuple(factors)



def strong_probable_prime(n, bases):
    d, r = n - 1, 0
    while d % 2 == 0:
        d, r = d // 2, r + 1
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeListTests(SimpleTestCase):
    def test_primes_upto(self):
        self.assertEqual(primes_upto(30).tolist(), [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])
        self.assertEqual(len(primes_upto(1)), 0)
        self.assertEqual(len(primes_upto(10 ** 6)), 78498)

    def test_primes_between_matches_full_sieve(self):
        full = primes_upto(200_000)
        chunked = primes_between(1000, 200_001, segment=7919)
        self.assertEqual(chunked.tolist(), full[full >= 1000].tolist())

    def test_primes_between_is_half_open(self):
        self.assertEqual(primes_between(11, 13).tolist(), [11])
        self.assertEqual(primes_between(14, 14).tolist(), [])


class PrimalityTests(SimpleTestCase):
    def test_agrees_with_sieve(self):
        primes = set(primes_upto(20_000).tolist())
        for n in range(20_000):
            self.assertEqual(is_prime(n), n in primes, n)

    def test_large_primes(self):
        for p in (2 ** 61 - 1, 18446744073709551557, 1000000007, 998244353):
            self.assertTrue(is_prime(p), p)

    def test_strong_pseudoprimes_are_rejected(self):
        # pseudoprimes to several small bases
        for n in (2047, 3215031751, 3825123056546413051, 318665857834031151167461, 561, 41041):
            if n < 2 ** 64:
                self.assertFalse(is_prime(n), n)

    def test_carmichael_numbers(self):
        for n in (561, 1105, 1729, 2465, 2821, 6601, 8911):
            self.assertFalse(is_prime(n), n)


class FactorizeTests(SimpleTestCase):
    def test_small_values_match_trial_division(self):
        for n in range(1, 5000):
            self.assertEqual(factorize(n).factors, trial_division(n), n)

    def test_examples(self):
        self.assertEqual(factorize(1).factors, ())
        self.assertEqual(factorize(360).factors, ((2, 3), (3, 2), (5, 1)))
        self.assertEqual(factorize(2 ** 64 - 1).factors, ((3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6700417, 1)))

    def test_semiprimes_with_large_factors(self):
        cases = [
            (1000003, 1000033),
            (4294967291, 4294967279),
            (2147483647, 2147483629),
            (999999937, 999999929),
        ]
        for p, q in cases:
            n = p * q
            self.assertEqual(factorize(n).factors, tuple(sorted(((p, 1), (q, 1)))), n)

    def test_square_of_a_large_prime(self):
        p = 4294967291
        self.assertEqual(factorize(p * p).factors, ((p, 2),))

    def test_product_reconstructs_value(self):
        for n in (2 ** 63 - 25, 2 ** 62 + 3, 10 ** 18 + 9, 600851475143, 18446744073709551557):
            result = factorize(n)
            self.assertEqual(result.product(), n)
            self.assertTrue(all(is_prime(p) for p in result.primes))

    def test_omega_counts(self):
        result = factorize(2 ** 3 * 3 ** 2 * 7)
        self.assertEqual(result.omega, 3)
        self.assertEqual(result.omega_prime, 6)
        self.assertEqual(result.count_between(2, 7), 2)

    def test_trial_bound_does_not_change_result(self):
        n = 3 * 5 * 7 * 1009 * 1013
        self.assertEqual(factorize(n, trial_bound=3).factors, factorize(n).factors)

    def test_domain(self):
        with self.assertRaises(DomainError):
            factorize(0)
        with self.assertRaises(DomainError):
            factorize(2 ** 64)

    def test_deterministic(self):
        n = 1000003 * 1000033 * 17
        self.assertEqual(factorize(n), factorize(n))
        self.assertEqual(math.prod(p ** e for p, e in factorize(n).factors), n)


class OmegaInWindowTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.window = build_window(10 ** 4, y=10, z=100)

    def test_examples(self):
        self.assertEqual(omega_in_window(1, self.window), 0)
        self.assertEqual(omega_in_window(2 * 13 * 101, self.window), 1)
        self.assertEqual(omega_in_window(11 * 13, self.window), 2)

    def test_matches_filtered_factorization(self):
        window_primes = set(self.window.primes.tolist())
        for v in range(1, 10_001):
            expected = sum(1 for p, _ in trial_division(v) if p in window_primes)
            self.assertEqual(omega_in_window(v, self.window), expected, v)

    def test_accepts_a_factorization(self):
        v = 2 ** 5 * 11 * 97 * 101
        self.assertEqual(omega_in_window(factorize(v), self.window), 2)
        self.assertLessEqual(omega_in_window(v, self.window), factorize(v).omega)


@tag('slow')
class FullRangeTests(SimpleTestCase):
    def test_primality_agrees_with_sieve_to_a_million(self):
        primes = set(primes_upto(10 ** 6).tolist())
        for n in range(10 ** 6 + 1):
            self.assertEqual(is_prime(n), n in primes, n)

    def test_primality_of_random_40_to_60_bit_values(self):
        rng = random.Random(40)
        small = primes_upto(1 << 24)
        for i in range(10 ** 4):
            bits = 40 + i % 21
            v = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
            has_small_factor = bool(np.any(v % small == 0))
            if v < 1 << 48:
                # trial division by every prime up to sqrt(v)
                expected = not has_small_factor
            else:
                bases = [rng.randrange(2, v - 1) for _ in range(32)]
                expected = not has_small_factor and strong_probable_prime(v, bases)
            self.assertEqual(is_prime(v), expected, v)

    def test_reconstruction_to_a_million(self):
        primes = set(primes_upto(10 ** 6).tolist())
        for v in range(1, 10 ** 6 + 1):
            result = factorize(v)
            self.assertEqual(result.product(), v, v)
            self.assertTrue(all(p in primes for p in result.primes), v)

    def test_reconstruction_of_random_63_bit_values(self):
        rng = random.Random(63)
        for _ in range(10 ** 6):
            v = rng.randrange(1, 1 << 63)
            result = factorize(v)
            self.assertEqual(result.product(), v, v)
            self.assertTrue(all(is_prime(p) for p in result.primes), v)
            self.assertEqual(list(result.primes), sorted(set(result.primes)), v)
