import math

import numpy as np
from django.conf import settings
from django.test import SimpleTestCase, override_settings, tag

from core.exceptions import DomainError, ParameterError, ResourceError
from factor.primes import primes_upto

from .functions import Family, FnSpec, beta, big_a, evaluate, evaluate_block, phi_preimage_max
from .linear import LinearFormTable, linear_form, linear_form_block
from .sieve import _check_product, base_primes_for, s_of, sieve_block, sieve_range


def divisors(n):
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def is_small_prime(p):
    return p > 1 and all(p % q for q in range(2, math.isqrt(p) + 1))


def largest_prime_factor(n):
    p, last = 2, 1
    while p * p <= n:
        while n % p == 0:
            last, n = p, n // p
        p += 1
    return n if n > 1 else last


class SieveBlockTests(SimpleTestCase):
    def test_examples(self):
        block = sieve_block(2, 20)
        v = block.at(12)
        self.assertEqual((v.sigma, v.tau, v.phi, v.omega, v.lpf), (28, 6, 4, 2, 3))
        self.assertFalse(v.lpf_sq_divides)
        self.assertEqual(block.at(9).lpf, 3)
        self.assertTrue(block.at(9).lpf_sq_divides)

        v = sieve_block(2, 3).at(2)
        self.assertEqual((v.sigma, v.lpf, v.omega), (3, 2, 1))

    def test_matches_divisor_enumeration(self):
        block = sieve_block(2, 10_001)
        for n in range(2, 10_001):
            ds = divisors(n)
            v = block.at(n)
            self.assertEqual(v.sigma, sum(ds), n)
            self.assertEqual(v.tau, len(ds), n)
            primes = [d for d in ds if is_small_prime(d)]
            self.assertEqual(v.phi, math.prod(p - 1 for p in primes) * n // math.prod(primes), n)
            self.assertEqual(v.omega, len(primes), n)
            self.assertEqual(v.lpf, largest_prime_factor(n), n)
            self.assertEqual(v.lpf_sq_divides, n % (v.lpf * v.lpf) == 0, n)

    def test_offset_block_agrees_with_block_from_two(self):
        whole = sieve_block(2, 50_000)
        part = sieve_block(31_337, 50_000)
        for name in ('sigma', 'phi', 'tau', 'omega_small', 'lpf', 'lpf_sq_divides'):
            np.testing.assert_array_equal(getattr(part, name), getattr(whole, name)[31_337 - 2:])

    def test_invariants(self):
        block = sieve_block(2, 100_000)
        n = block.n
        self.assertTrue(np.all(block.sigma >= n + 1))
        self.assertTrue(np.all(block.phi <= n - 1))
        prime = block.lpf == n
        np.testing.assert_array_equal(block.sigma == n + 1, prime)

    def test_domain_and_resource_errors(self):
        with self.assertRaises(DomainError):
            sieve_block(1, 10)
        with self.assertRaises(DomainError):
            sieve_block(10, 10)
        with self.assertRaises(ResourceError):
            sieve_block(2, 1000, segment_size=100)

    def test_sigma_overflow_is_reported(self):
        with self.assertRaises(ResourceError):
            _check_product(np.array([2 ** 61, 5], dtype=np.int64), 5)
        _check_product(np.array([2 ** 61], dtype=np.int64), 3)

    @override_settings(EKLAB={**settings.EKLAB, 'SEGMENT_SIZE': 1000})
    def test_segment_size_comes_from_settings(self):
        with self.assertRaises(ResourceError):
            sieve_block(2, 1002)
        blocks = list(sieve_range(2, 2500))
        self.assertEqual([(b.lo, b.hi) for b in blocks], [(2, 1002), (1002, 2002), (2002, 2500)])

    def test_base_primes_passed_in_match_computed(self):
        base = base_primes_for(60_000)
        self.assertEqual(base.tolist(), primes_upto(244).tolist())
        given = sieve_block(40_000, 60_000, base_primes=base)
        computed = sieve_block(40_000, 60_000)
        for name in ('sigma', 'phi', 'tau', 'omega_small', 'lpf', 'lpf_sq_divides'):
            np.testing.assert_array_equal(getattr(given, name), getattr(computed, name))
        # a longer list is trimmed to the block
        wider = sieve_block(2, 1000, base_primes=primes_upto(5000))
        np.testing.assert_array_equal(wider.sigma, sieve_block(2, 1000).sigma)

    def test_huge_blocks_are_refused_before_sieving(self):
        with self.assertRaises(ResourceError) as ctx:
            sieve_block(2 ** 62, 2 ** 62 + 10)
        self.assertIn('BASE_PRIME_LIMIT', str(ctx.exception))
        with self.assertRaises(ResourceError):
            next(sieve_range(2 ** 62, 2 ** 62 + 10))

    @override_settings(EKLAB={**settings.EKLAB, 'BASE_PRIME_LIMIT': 100})
    def test_base_prime_limit_comes_from_settings(self):
        sieve_block(2, 10_001)
        with self.assertRaises(ResourceError):
            sieve_block(2, 10_202)


class AliquotTests(SimpleTestCase):
    def test_s_of(self):
        block = sieve_block(2, 20)
        self.assertEqual(s_of(12, block), 16)
        self.assertEqual(s_of(7, block), 1)
        self.assertEqual(s_of(6, block), 6)
        with self.assertRaises(DomainError):
            s_of(25, block)

    def test_beta_and_big_a(self):
        self.assertEqual(beta(12), 5)
        self.assertEqual(big_a(12), 7)
        self.assertEqual(beta(97), 97)
        with self.assertRaises(DomainError):
            beta(1)


class FnSpecTests(SimpleTestCase):
    def test_phi_preimage_max(self):
        self.assertEqual(phi_preimage_max(4), 12)
        self.assertEqual(phi_preimage_max(6), 18)
        self.assertEqual(phi_preimage_max(5), 0)
        self.assertEqual(phi_preimage_max(-3), 0)

    def test_phi_shift_spec(self):
        spec = FnSpec.of(Family.PHI_SHIFT, 4)
        self.assertEqual(spec.m0, 12)
        self.assertEqual(spec.label, 'phi+4')
        self.assertEqual(FnSpec.of('phi+a', -7).label, 'phi-7')
        self.assertEqual(FnSpec.of('s').m0, 0)

    def test_phi_shift_needs_a_shift(self):
        with self.assertRaises(ParameterError) as ctx:
            FnSpec.of('phi+a', 0)
        self.assertEqual(ctx.exception.flag, '--shift')

    def test_unknown_family(self):
        with self.assertRaises(ValueError):
            FnSpec.of('sigma')


class LinearFormTests(SimpleTestCase):
    BULK = [Family.S, Family.COTOTIENT, Family.N_PLUS_TAU, Family.N_MINUS_TAU,
            Family.N_PLUS_OMEGA, Family.N_MINUS_OMEGA]

    def specs(self, families):
        return [FnSpec.of(family) for family in families] + [FnSpec.of('phi+a', 4), FnSpec.of('phi+a', -9)]

    def check_identity(self, spec, m_max, primes, block):
        f = evaluate_block(spec, block)
        small = sieve_block(2, m_max + 1)
        a, b = linear_form_block(spec, small)
        m = small.n
        for P in primes:
            P = int(P)
            keep = m % P != 0
            n = m[keep] * P
            np.testing.assert_array_equal(
                f[n - block.lo], P * a[keep] + b[keep], err_msg=f"{spec} with P = {P}",
            )

    def test_identity_for_sieved_families(self):
        block = sieve_block(2, 1_000_001)
        for spec in self.specs(self.BULK):
            self.check_identity(spec, 2000, primes_upto(500), block)

    def test_identity_for_beta_and_big_a(self):
        block = sieve_block(2, 20_001)
        for family in (Family.BETA, Family.BIG_A):
            self.check_identity(FnSpec.of(family), 200, primes_upto(97), block)

    @tag('slow')
    def test_identity_for_beta_and_big_a_full_range(self):
        block = sieve_block(2, 1_000_001)
        for family in (Family.BETA, Family.BIG_A):
            self.check_identity(FnSpec.of(family), 2000, primes_upto(500), block)

    def test_pointwise_agrees_with_block(self):
        block = sieve_block(2, 3000)
        for spec in self.specs(list(Family)[:-1]):
            f = evaluate_block(spec, block)
            a, b = linear_form_block(spec, block)
            for n in (2, 12, 97, 360, 2999):
                values = block.at(n)
                self.assertEqual(evaluate(spec, n, values), f[n - 2], spec)
                self.assertEqual(linear_form(spec, n, values), (a[n - 2], b[n - 2]), spec)

    def test_coefficients_do_not_vanish(self):
        block = sieve_block(2, 100_001)
        for spec in self.specs(self.BULK):
            a, b = linear_form_block(spec, block)
            beyond = block.n > max(1, spec.m0)
            self.assertTrue(np.all(a[beyond] != 0), spec)
            self.assertTrue(np.all(b[beyond] != 0), spec)
        small = sieve_block(2, 5001)
        for family in (Family.BETA, Family.BIG_A):
            a, b = linear_form_block(FnSpec.of(family), small)
            self.assertTrue(np.all(a == 1) and np.all(b > 0))

    def test_phi_shift_vanishes_only_up_to_m0(self):
        spec = FnSpec.of('phi+a', 4)
        a, b = linear_form_block(spec, sieve_block(2, 101))
        self.assertEqual((np.flatnonzero(b == 0) + 2).tolist(), [5, 8, 10, 12])

    def test_linear_form_needs_m_above_one(self):
        with self.assertRaises(DomainError):
            linear_form(FnSpec.of('s'), 1, None)

    def test_table(self):
        spec = FnSpec.of('s')
        table = LinearFormTable.build(spec, 1000, segment_size=256)
        self.assertEqual(table.at(12), (16, 28))
        self.assertEqual(table.m[0], 2)
        self.assertEqual(len(table.a), 998)
        with self.assertRaises(DomainError):
            table.at(1000)
