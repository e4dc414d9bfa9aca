import itertools
import math

import numpy as np
from django.test import SimpleTestCase, tag

from arith.functions import Family, FnSpec
from arith.linear import linear_form_block
from arith.sieve import sieve_block
from core.exceptions import DomainError, ParameterError
from factor.primes import primes_upto
from model.window import build_window, window_from_primes
from sample.config import build_config

from .classes import DClass, DClassKind, classify_m, kind_of
from .dcount import class_counts, dcount, dcount_many, dcount_summary, enumerate_d
from .hypotheses import growth_ratios, hypothesis_sums, run_hypotheses
from .progression import euler_phi, progression_error


def every_spec():
    return [FnSpec.of(family) for family in Family if family != Family.PHI_SHIFT] + [FnSpec.of('phi+a', 4)]


def check_auto_moduli(test, x, specs, workers=1):
    for spec in specs:
        cfg = build_config(x, spec)
        ds, _ = enumerate_d(cfg.window, 2, limit=40)
        test.assertGreaterEqual(len(ds), 20)
        for report in dcount_many(ds, cfg, workers=workers):
            test.assertEqual(report.lhs, report.rhs, (str(spec), x, report.d))


def brute_progression_error(T, q):
    primes = [p for p in range(2, T + 1) if all(p % r for r in range(2, math.isqrt(p) + 1))]
    classes = [a for a in range(q) if math.gcd(a, q) == 1]
    phi = len(classes)
    best = 0.0
    for t in range(2, T + 1):
        upto = [p for p in primes if p <= t]
        for a in classes:
            in_class = sum(1 for p in upto if p % q == a)
            best = max(best, abs(in_class - len(upto) / phi))
    return best


class ClassifyTests(SimpleTestCase):
    def test_examples(self):
        spec = FnSpec.of('s')
        self.assertEqual(classify_m(5, 9, spec), DClassKind.IDEAL)
        self.assertEqual(classify_m(5, 95, spec), DClassKind.COMPAT_NOT_IDEAL)
        self.assertEqual(classify_m(5, 14, spec), DClassKind.INCOMPATIBLE)

    def test_domain(self):
        spec = FnSpec.of('s')
        with self.assertRaises(DomainError):
            classify_m(45, 10, spec)
        with self.assertRaises(DomainError):
            classify_m(1, 10, spec)
        with self.assertRaises(DomainError):
            classify_m(15, 1, spec)

    def test_ideal_implies_compatible(self):
        for d in (3, 15, 105, 1001):
            for a in range(1, 60):
                for b in range(-30, 30):
                    kind = kind_of(d, a, b)
                    ideal = math.gcd(d, a * b) == 1
                    compatible = all((a % p == 0) == (b % p == 0) for p in (3, 5, 7, 11, 13) if d % p == 0)
                    self.assertEqual(kind == DClassKind.IDEAL, ideal)
                    if ideal:
                        self.assertTrue(compatible)
                    self.assertEqual(kind == DClassKind.INCOMPATIBLE, not compatible)

    def test_tallies_partition_the_range(self):
        block = sieve_block(2, 5000)
        a, b = linear_form_block(FnSpec.of('s'), block)
        dclass = DClass(15)
        dclass.tally(block.n, a, b)
        self.assertEqual(dclass.total, 4998)

    def test_compatible_gcd_divides_m(self):
        block = sieve_block(2, 100_001)
        m = block.n
        a, b = linear_form_block(FnSpec.of('s'), block)
        for d in (3, 5, 15, 21, 33, 1155, 9699690 // 2):
            ga, gb = np.gcd(a, d), np.gcd(b, d)
            compat = (ga == gb) & (ga > 1)
            self.assertTrue(np.all(m[compat] % ga[compat] == 0), d)

    def test_cototient_common_primes_divide_m(self):
        block = sieve_block(2, 100_001)
        a, b = linear_form_block(FnSpec.of('cototient'), block)
        self.assertTrue(np.all(block.n % np.gcd(a, b) == 0))


class DCountTests(SimpleTestCase):
    def test_two_sides_agree(self):
        cfg = build_config(10_000, FnSpec.of('s'))
        report = dcount(11, cfg)
        self.assertEqual(report.lhs, report.rhs)
        self.assertGreater(report.omega_count, 0)
        self.assertAlmostEqual(report.expected, report.omega_count / 11)
        self.assertEqual(report.dclass.total, math.ceil(10_000 / cfg.L) - 2)

    def test_lhs_is_a_direct_count(self):
        cfg = build_config(10_000, FnSpec.of('s'))
        block = sieve_block(2, 10_001)
        f = block.sigma - block.n
        omega = cfg.omega_mask(block, f)
        for d in (3, 7, 13):
            report = dcount(d, cfg)
            self.assertEqual(report.lhs, int(np.count_nonzero(f[omega] % d == 0)))

    def test_families_and_moduli(self):
        ds = [2, 3, 7, 15, 77, 263, 1001]
        for fn, shift in (('cototient', 0), ('n+tau', 0), ('n-omega', 0), ('phi+a', 4), ('beta', 0)):
            cfg = build_config(10_000, FnSpec.of(fn, shift))
            for report in dcount_many(ds, cfg, workers=1):
                self.assertEqual(report.lhs, report.rhs, (fn, report.d))

    def test_auto_enumerated_moduli_for_every_family(self):
        check_auto_moduli(self, 10_000, every_spec())

    def test_vanishing_values_are_skipped(self):
        # phi(33) - 20 = 0, and 33 = 3 * 11 lies in the sample space for L = 10
        cfg = build_config(1000, FnSpec.of('phi+a', -20))
        self.assertLess(cfg.L, 11)
        for report in dcount_many([3, 5, 53], cfg):
            self.assertEqual(report.lhs, report.rhs)

    def test_parallel_matches_serial(self):
        cfg = build_config(20_000, FnSpec.of('s'))
        serial = dcount_many([3, 11, 101], cfg, workers=1, segment_size=4096)
        parallel = dcount_many([3, 11, 101], cfg, workers=3, segment_size=4096)
        self.assertEqual([r.as_dict() for r in serial], [r.as_dict() for r in parallel])

    def test_unsolvable_congruence(self):
        primes = primes_upto(1000)
        self.assertEqual(class_counts(primes, 3, 1, [15])[0], 0)
        # 3 divides both: only the class mod 5 matters
        expected = int(np.count_nonzero((primes * 6 + 9) % 15 == 0))
        self.assertEqual(class_counts(primes, 6, 9, [15])[0], expected)

    def test_class_counts_match_direct_check(self):
        primes = primes_upto(5000)
        ds = [3, 5, 7, 15, 105, 1001, 2]
        for a, b in ((4, 7), (10, 24), (25, 120), (7, -14), (1, 1000)):
            counts = class_counts(primes, a, b, ds)
            for d, count in zip(ds, counts):
                self.assertEqual(count, int(np.count_nonzero((primes * a + b) % d == 0)), (a, b, d))

    def test_x_guard(self):
        cfg = build_config(10 ** 8, FnSpec.of('s'))
        with self.assertRaises(ParameterError):
            dcount(11, cfg)

    def test_bad_modulus(self):
        cfg = build_config(10_000, FnSpec.of('s'))
        with self.assertRaises(DomainError):
            dcount(9, cfg)

    def test_summary(self):
        cfg = build_config(10_000, FnSpec.of('s'))
        reports = dcount_many([11, 13], cfg)
        summary = dcount_summary(reports, cfg)
        self.assertAlmostEqual(summary['discrepancy_sum'], reports[0].discrepancy + reports[1].discrepancy)


class EnumerateTests(SimpleTestCase):
    def setUp(self):
        self.window = window_from_primes(10 ** 6, 10, 40, [11, 13, 17, 19, 23, 29, 31, 37])

    def test_matches_subsets(self):
        primes = self.window.primes.tolist()
        expected = sorted(
            math.prod(c)
            for size in (1, 2)
            for c in itertools.combinations(primes, size)
            if math.prod(c) <= 500
        )
        ds, partial = enumerate_d(self.window, 2, cap=500, limit=5000)
        self.assertEqual(ds, expected)
        self.assertFalse(partial)

    def test_three_primes(self):
        ds, _ = enumerate_d(self.window, 3, cap=10 ** 6, limit=5000)
        self.assertEqual(len(ds), 8 + 28 + 56)
        self.assertIn(11 * 13 * 17, ds)

    def test_cut_off_is_flagged(self):
        ds, partial = enumerate_d(self.window, 2, cap=10 ** 6, limit=10)
        self.assertEqual(len(ds), 10)
        self.assertTrue(partial)


class ProgressionTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(progression_error(10, 3), 1.5)
        self.assertEqual(progression_error(2, 3), 0.5)

    def test_matches_brute_force(self):
        for q in (2, 3, 4, 5, 8, 12, 30, 97):
            for T in (2, 3, 10, 50, 211):
                self.assertAlmostEqual(progression_error(T, q), brute_progression_error(T, q), msg=(T, q))

    def test_nondecreasing_in_T(self):
        for q in (3, 10, 17):
            values = [progression_error(T, q) for T in range(2, 400, 7)]
            self.assertTrue(all(a <= b for a, b in zip(values, values[1:])), q)

    def test_large_modulus(self):
        # every prime up to 20 sits alone in its class; the worst is the class of 2 at t = 2
        self.assertAlmostEqual(progression_error(20, 1009), 1 - 1 / 1008, places=12)

    def test_domain(self):
        with self.assertRaises(DomainError):
            progression_error(10, 1)
        with self.assertRaises(ParameterError):
            progression_error(10 ** 9, 3)

    def test_euler_phi(self):
        self.assertEqual([euler_phi(q) for q in (2, 9, 12, 30, 97)], [1, 6, 4, 8, 96])


class HypothesisTests(SimpleTestCase):
    def test_beta_sums_are_empty(self):
        x = 10 ** 4
        result = hypothesis_sums(FnSpec.of('beta'), x, 2, build_window(x))
        self.assertEqual((result.small_prime_sum, result.gcd_sum), (0.0, 0.0))

    def test_n_plus_tau_gcd_sum_is_empty(self):
        x = 10 ** 5
        result = hypothesis_sums(FnSpec.of('n+tau'), x, 2, build_window(x))
        self.assertEqual(result.gcd_sum, 0.0)

    def test_small_prime_sum_matches_double_loop(self):
        x = 10 ** 5
        window = build_window(x)
        block = sieve_block(2, x + 1)
        small = [p for p in primes_upto(int(window.y)).tolist()]
        expected = 0.0
        for m in range(2, x + 1):
            sigma = int(block.sigma[m - 2])
            g = math.gcd(sigma - m, sigma)
            for p in small:
                if g % p == 0:
                    expected += 1 / m
        result = hypothesis_sums(FnSpec.of('s'), x, 2, window)
        self.assertAlmostEqual(result.small_prime_sum, expected, places=9)

    def test_gcd_sum_matches_direct_loop(self):
        x = 10 ** 4
        window = build_window(x)
        result = hypothesis_sums(FnSpec.of('s'), x, 2, window, cap=5000)
        ds, _ = enumerate_d(window, 2, cap=5000)
        block = sieve_block(2, x)
        expected = []
        for m in range(2, x):
            sigma = int(block.sigma[m - 2])
            a, b = sigma - m, sigma
            for d in ds:
                if kind_of(d, a, b) == DClassKind.COMPAT_NOT_IDEAL:
                    expected.append(math.gcd(d, a) / (m * d))
        self.assertEqual(result.d_count, len(ds))
        self.assertAlmostEqual(result.gcd_sum, math.fsum(expected), places=12)

    def test_guard(self):
        with self.assertRaises(ParameterError):
            hypothesis_sums(FnSpec.of('s'), 10 ** 8, 2, build_window(10 ** 6))

    def test_growth_ratios(self):
        payload = run_hypotheses(FnSpec.of('cototient'), [20_000, 10_000], 2)
        self.assertEqual([r['x'] for r in payload['results']], [10_000, 20_000])
        self.assertEqual(len(payload['ratios']), 1)
        self.assertEqual(growth_ratios([]), [])


@tag('slow')
class AcceptanceTests(SimpleTestCase):
    def test_dcount_at_one_million(self):
        cfg = build_config(10 ** 6, FnSpec.of('s'))
        report = dcount(263, cfg, workers=4)
        self.assertEqual(report.lhs, report.rhs)

    def test_auto_moduli_at_larger_x(self):
        check_auto_moduli(self, 10 ** 5, every_spec(), workers=4)
        check_auto_moduli(self, 10 ** 6, [FnSpec.of('s'), FnSpec.of('cototient')], workers=4)

    def test_auto_list_at_one_million(self):
        cfg = build_config(10 ** 6, FnSpec.of('s'))
        ds, _ = enumerate_d(cfg.window, 2, cap=10 ** 5, limit=300)
        reports = dcount_many(ds, cfg, workers=4)
        self.assertTrue(all(r.lhs == r.rhs for r in reports))
        loglog = math.log(math.log(10 ** 6))
        self.assertLess(dcount_summary(reports, cfg)['discrepancy_sum'], loglog ** 3 / math.log(10 ** 6))
