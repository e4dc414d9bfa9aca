import math

import numpy as np
import scipy.stats
from django.test import SimpleTestCase

from core.exceptions import DomainError

from .ecdf import Ecdf, ks_distance
from .histogram import HEADER, histogram
from .normal import normal_cdf

# Phi(u) to 10 places
REFERENCE = {
    -3.0: 0.0013498980,
    -1.0: 0.1586552539,
    0.5: 0.6914624613,
    1.0: 0.8413447461,
    1.96: 0.9750021049,
    2.5: 0.9937903347,
}


class NormalCdfTests(SimpleTestCase):
    def test_reference_values(self):
        self.assertEqual(normal_cdf(0), 0.5)
        for u, expected in REFERENCE.items():
            self.assertAlmostEqual(normal_cdf(u), expected, delta=1e-7, msg=u)

    def test_symmetry_and_monotonicity(self):
        grid = np.linspace(-8, 8, 10_000)
        values = normal_cdf(grid)
        self.assertTrue(np.all(np.diff(values) >= 0))
        np.testing.assert_allclose(normal_cdf(-grid), 1 - values, atol=1e-7)

    def test_scalar_in_scalar_out(self):
        self.assertIsInstance(normal_cdf(1.0), float)


class EcdfTests(SimpleTestCase):
    def test_single_score(self):
        ecdf = Ecdf.from_scores([0.0])
        self.assertEqual(ecdf.n, 1)
        self.assertEqual(ks_distance(ecdf), 0.5)

    def test_limits(self):
        ecdf = Ecdf.from_scores([0.3, -1.0, 2.0, 0.3])
        self.assertEqual(ecdf(-math.inf), 0.0)
        self.assertEqual(ecdf(math.inf), 1.0)
        self.assertEqual(ecdf(0.3), 0.75)
        self.assertEqual(ecdf.points.tolist(), [-1.0, 0.3, 2.0])

    def test_weighted_matches_raw(self):
        values = [1.5, -0.5, 0.25, 1.5]
        counts = [3, 1, 4, 2]
        raw = np.repeat(values, counts)
        weighted = Ecdf.from_counts(values, counts)
        direct = Ecdf.from_scores(raw)
        np.testing.assert_array_equal(weighted.points, direct.points)
        np.testing.assert_array_equal(weighted.cumulative, direct.cumulative)
        self.assertEqual(ks_distance(weighted), ks_distance(direct))

    def test_empty(self):
        with self.assertRaises(DomainError):
            Ecdf.from_scores([])

    def test_normal_sample(self):
        rng = np.random.default_rng(2024)
        n = 20_000
        distance = ks_distance(Ecdf.from_scores(rng.standard_normal(n)))
        self.assertLess(distance, 1.63 / math.sqrt(n))

    def test_depends_on_values_only(self):
        rng = np.random.default_rng(5)
        scores = rng.standard_normal(500)
        self.assertEqual(
            ks_distance(Ecdf.from_scores(scores)),
            ks_distance(Ecdf.from_scores(rng.permutation(scores))),
        )

    def test_far_from_normal(self):
        self.assertGreater(ks_distance(Ecdf.from_scores(np.full(100, 3.0))), 0.99)

    def test_matches_scipy_kstest(self):
        rng = np.random.default_rng(11)
        scores = np.round(rng.normal(0.2, 1.1, 3000), 2)
        statistic = scipy.stats.kstest(scores, 'norm').statistic
        self.assertAlmostEqual(ks_distance(Ecdf.from_scores(scores)), statistic, places=12)


class HistogramTests(SimpleTestCase):
    def test_all_below(self):
        hist = histogram([-10.0, -7.5, -5.0], bins=4, value_range=(-4, 4))
        self.assertEqual(hist.underflow, 3)
        self.assertEqual(int(hist.counts.sum()), 0)
        self.assertEqual(hist.total, 3)

    def test_single_wide_bin(self):
        scores = np.linspace(-3, 3, 101)
        hist = histogram(scores, bins=1, value_range=(-1e9, 1e9))
        self.assertEqual(hist.counts.tolist(), [101])
        self.assertAlmostEqual(float(hist.normal_mass[0]), 1.0)

    def test_symmetric_masses(self):
        hist = histogram([0.0], bins=40, value_range=(-4, 4))
        np.testing.assert_allclose(hist.normal_mass, hist.normal_mass[::-1], atol=1e-12)

    def test_counts_partition_scores(self):
        rng = np.random.default_rng(9)
        scores = rng.standard_normal(5000) * 2
        hist = histogram(scores)
        self.assertEqual(hist.total, 5000)
        self.assertEqual(len(hist.counts), 40)

    def test_weights(self):
        hist = histogram([-5.0, 0.1, 0.1, 9.0], bins=2, value_range=(-1, 1), weights=[2, 3, 4, 1])
        self.assertEqual((hist.underflow, hist.counts.tolist(), hist.overflow), (2, [0, 7], 1))

    def test_rows(self):
        hist = histogram([-5.0, 0.5, 5.0], bins=2, value_range=(-1, 1))
        rows = list(hist.rows())
        self.assertEqual(len(HEADER), 4)
        self.assertEqual(len(rows), 4)
        self.assertEqual(rows[0][:3], (-math.inf, -1.0, 1))
        self.assertEqual(rows[-1][:3], (1.0, math.inf, 1))
        self.assertAlmostEqual(sum(row[3] for row in rows), 1.0)

    def test_bad_arguments(self):
        with self.assertRaises(DomainError):
            histogram([0.0], bins=0)
        with self.assertRaises(DomainError):
            histogram([0.0], value_range=(1, 1))
