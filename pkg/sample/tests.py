import math

import numpy as np
from django.test import SimpleTestCase, tag

from arith.functions import FnSpec
from arith.sieve import sieve_block
from core.exceptions import DomainError, IdentityViolation, ParameterError
from factor.factorize import factorize
from model.window import build_window

from .config import Population, build_config, m_table_limit
from .records import SampleRecord, check_decomposition, classify, make_record
from .runner import build_m_table, iter_records, run_sample
from .summary import SampleSummary, empirical_moments, small_prime_expectation, summarize


def brute_force_omega(x, L, f):
    count = 0
    for n in range(2, x + 1):
        factors = factorize(n).factors
        P, e = factors[-1]
        if len(factors) == 1 and e == 1:
            continue  # prime
        if P > L and e == 1 and f(n) != 0:
            count += 1
    return count


def aliquot(n):
    return sum(d for d in range(1, n) if n % d == 0)


class ConfigTests(SimpleTestCase):
    def test_default_cutoffs(self):
        window = build_window(100, y=3, z=50)
        cfg = build_config(100, FnSpec.of('s'), window=window)
        self.assertAlmostEqual(cfg.L, 100 ** (1 / 3))
        self.assertEqual(m_table_limit(cfg), 22)

    def test_L_range(self):
        window = build_window(100, y=3, z=50)
        with self.assertRaises(ParameterError):
            build_config(100, FnSpec.of('s'), window=window, L=11)
        with self.assertRaises(ParameterError):
            build_config(100, FnSpec.of('s'), window=window, L=2)
        with self.assertRaises(ParameterError) as ctx:
            build_config(100, FnSpec.of('s'), window=window, l4_floor=1.5)
        self.assertEqual(ctx.exception.flag, '--l4-floor')

    def test_default_window_needs_primes(self):
        with self.assertRaises(ParameterError):
            build_config(100, FnSpec.of('s'))


class ClassifyTests(SimpleTestCase):
    def setUp(self):
        self.window = build_window(100, y=3, z=50)
        self.cfg = build_config(100, FnSpec.of('s'), window=self.window, L=4)
        self.block = sieve_block(2, 101)
        self.table = build_m_table(self.cfg)

    def test_sample_space_member(self):
        record = classify(20, self.cfg, self.block, self.table)
        self.assertTrue(record.in_omega)
        self.assertEqual((record.m, record.P, record.f_value), (4, 5, 22))
        self.assertEqual(record.omega_f, 2)
        self.assertEqual((record.x_small, record.x_window, record.x_large), (1, 1, 0))

    def test_prime(self):
        record = classify(17, self.cfg, self.block, self.table)
        self.assertFalse(record.in_omega)
        self.assertEqual((record.f_value, record.omega_f), (1, 0))
        self.assertFalse(record.degenerate)

    def test_square_of_largest_prime(self):
        record = classify(18, self.cfg, self.block, self.table)
        self.assertFalse(record.in_omega)
        self.assertEqual(record.P, 3)

    def test_record_invariants(self):
        for n in range(2, 101):
            record = classify(n, self.cfg, self.block, self.table)
            self.assertEqual(record.x_small + record.x_window + record.x_large, record.omega_f, n)
            self.assertGreaterEqual(record.omega_prime_f, record.omega_f)
            if record.in_omega:
                self.assertEqual(record.m * record.P, n)
                self.assertGreater(record.m, 1)
                self.assertNotEqual(record.m % record.P, 0)
                self.assertGreater(record.P, self.cfg.L)

    def test_decomposition_mismatch(self):
        with self.assertRaises(IdentityViolation):
            check_decomposition(20, 4, 5, 23, self.table)

    def test_degenerate_record(self):
        cfg = build_config(100, FnSpec.of('n-tau'), window=self.window, L=4)
        record = make_record(2, 2, False, 0, cfg)
        self.assertTrue(record.degenerate)
        self.assertIsNone(record.score)

    def test_phi_shift_excludes_small_m(self):
        cfg = build_config(100, FnSpec.of('phi+a', 4), window=self.window, L=4)
        table = build_m_table(cfg)
        # 60 = 12 * 5 and 12 <= m0 = 12
        self.assertFalse(classify(60, cfg, self.block, table).in_omega)
        # 80 = 16 * 5 with 16 > m0
        record = classify(80, cfg, self.block, table)
        self.assertTrue(record.in_omega)
        self.assertEqual(record.f_value, 36)


class RunSampleTests(SimpleTestCase):
    def test_brute_force_count(self):
        window = build_window(100, y=3, z=50)
        cfg = build_config(100, FnSpec.of('s'), window=window)
        summary = run_sample(cfg).summary
        self.assertEqual(summary.omega_count, brute_force_omega(100, cfg.L, aliquot))
        self.assertEqual(summary.records, 99)

    def test_brute_force_count_for_n_minus_tau(self):
        window = build_window(2000, y=3, z=200)
        cfg = build_config(2000, FnSpec.of('n-tau'), window=window)
        summary = run_sample(cfg).summary
        self.assertEqual(summary.omega_count, brute_force_omega(2000, cfg.L, lambda n: n - len(
            [d for d in range(1, n + 1) if n % d == 0])))

    def test_all_population(self):
        window = build_window(100, y=3, z=50)
        cfg = build_config(100, FnSpec.of('s'), window=window, population=Population.ALL)
        run = run_sample(cfg, keep_records=True)
        self.assertEqual(run.summary.records, 99)
        self.assertEqual(run.summary.scored, 99)
        self.assertEqual([r.n for r in run.records], list(range(2, 101)))

    def test_parallel_runs_match(self):
        window = build_window(50_000, y=10, z=100)
        cfg = build_config(50_000, FnSpec.of('cototient'), window=window)
        serial = run_sample(cfg, workers=1, keep_records=True, segment_size=8192)
        parallel = run_sample(cfg, workers=3, keep_records=True, segment_size=8192)
        single = run_sample(cfg, workers=1, segment_size=1 << 16)
        self.assertEqual(serial.summary, parallel.summary)
        self.assertEqual(serial.summary, single.summary)
        self.assertEqual(serial.records, parallel.records)

    def test_iter_records_matches_run(self):
        window = build_window(5000, y=5, z=100)
        cfg = build_config(5000, FnSpec.of('n+omega'), window=window)
        streamed = list(iter_records(cfg, segment_size=777))
        self.assertEqual(streamed, run_sample(cfg, keep_records=True).records)

    def test_merge_is_commutative(self):
        window = build_window(5000, y=5, z=100)
        cfg = build_config(5000, FnSpec.of('s'), window=window)
        records = list(iter_records(cfg))
        left, right = summarize(records[:2000]), summarize(records[2000:])
        self.assertEqual(left + right, right + left)
        self.assertEqual(left + right, summarize(records))

    def test_merge_needs_one_population(self):
        with self.assertRaises(ValueError):
            SampleSummary(population=Population.ALL) + SampleSummary(population=Population.OMEGA)


class StatisticsTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.x = 10 ** 5
        cls.window = build_window(cls.x, y=10, z=100)
        cls.cfg = build_config(cls.x, FnSpec.of('s'), window=cls.window)
        cls.sample_run = run_sample(cls.cfg, keep_records=True)

    def test_power_sums_match_direct_loop(self):
        block = sieve_block(2, self.x + 1)
        primes = self.window.primes.tolist()
        expected = [0] * len(self.sample_run.summary.power_sums)
        for record in self.sample_run.records:
            if not record.in_omega:
                continue
            s = block.at(record.n).sigma - record.n
            value = sum(1 for p in primes if s % p == 0)
            for j in range(len(expected)):
                expected[j] += value ** j
        self.assertEqual(self.sample_run.summary.power_sums, expected)

    def test_empirical_moments(self):
        moments = empirical_moments(self.sample_run.records, self.window, 4)
        self.assertEqual(moments[0], 1.0)
        np.testing.assert_allclose(moments, self.sample_run.summary.empirical_moments(self.window, 4))

    def test_constant_window_count(self):
        records = [
            SampleRecord(n=n, in_omega=True, m=2, P=n // 2, f_value=1, omega_f=3, omega_prime_f=3,
                         x_window=3, x_small=0, x_large=0, score=0.0)
            for n in (106, 118, 122)
        ]
        window = self.window
        moments = empirical_moments(records, window, 2)
        self.assertAlmostEqual(moments[2], ((3 - window.mu) / window.sigma) ** 2)

    def test_empty_sample_space(self):
        with self.assertRaises(DomainError):
            empirical_moments([], self.window, 2)
        with self.assertRaises(DomainError):
            small_prime_expectation([], 10)

    def test_small_prime_expectation(self):
        block = sieve_block(2, self.x + 1)
        y = self.window.y
        total = count = 0
        for record in self.sample_run.records:
            if record.in_omega:
                count += 1
                s = block.at(record.n).sigma - record.n
                total += sum(1 for p in (2, 3, 5, 7) if s % p == 0)
        value = small_prime_expectation(self.sample_run.records, y)
        self.assertAlmostEqual(value, total / count)
        self.assertAlmostEqual(value, self.sample_run.summary.small_prime_expectation())
        self.assertEqual(small_prime_expectation(self.sample_run.records, 1.5), 0.0)
        self.assertLessEqual(value, small_prime_expectation(self.sample_run.records, 30))

    def test_report(self):
        report = self.sample_run.summary.as_report(self.cfg, k_max=4)
        self.assertEqual(report['omega_count'], self.sample_run.summary.omega_count)
        self.assertEqual(len(report['moments']['empirical']), 4)
        self.assertGreater(report['omega_density'], 0.5)
        self.assertLessEqual(report['ks_distance'], 1.0)
        self.assertGreaterEqual(report['omega_prime_excess'], 0)
        self.assertEqual(sum(report['omega_hist'].values()), self.sample_run.summary.scored)

    def test_multiplicity_histogram(self):
        plain = self.sample_run.summary.score_histogram(self.cfg)
        heavy = self.sample_run.summary.score_histogram(self.cfg, multiplicity=True)
        self.assertEqual(plain.total, heavy.total)
        scores, counts = self.sample_run.summary.score_table(self.cfg)
        loglog = math.log(math.log(self.x))
        self.assertAlmostEqual(scores[0], (min(self.sample_run.summary.omega_hist) - loglog) / math.sqrt(loglog))
        self.assertEqual(int(counts.sum()), self.sample_run.summary.scored)


@tag('slow')
class AcceptanceTests(SimpleTestCase):
    """Sample-space statistics for s(n) at x = 10**7."""
    X = 10 ** 7

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.cfg = build_config(cls.X, FnSpec.of('s'))
        cls.summary = run_sample(cls.cfg, workers=4).summary
        cls.report = cls.summary.as_report(cls.cfg)

    def test_density_at_ten_million(self):
        self.assertGreater(self.summary.omega_count / self.X, 0.9)
        self.assertLess(self.summary.omega_count / self.X, 1.0)
        self.assertLess(self.report['omega_prime_excess'], 4 * self.cfg.log3() ** 2)

    def test_window_scores_are_close_to_normal(self):
        self.assertLess(self.report['ks_window'], 0.15)

    def test_small_prime_expectation_is_bounded(self):
        reference = self.cfg.log3() * self.cfg.log4()
        self.assertEqual(self.report['small_prime_reference'], reference)
        self.assertLess(self.summary.small_prime_expectation(), 3 * reference)

    def test_moment_differences_do_not_grow(self):
        # allowance for sampling noise between neighbouring x
        allowance = 0.05
        diffs = []
        for x in (10 ** 5, 10 ** 6):
            cfg = build_config(x, FnSpec.of('s'))
            report = run_sample(cfg, workers=4).summary.moment_report(cfg.window, 3)
            diffs.append([abs(d) for d in report.diffs[1:]])
        diffs.append([abs(d) for d in self.summary.moment_report(self.cfg.window, 3).diffs[1:]])
        for earlier, later in zip(diffs, diffs[1:]):
            for j in range(3):
                self.assertLessEqual(later[j], earlier[j] + allowance, (j + 1, diffs))
