import itertools
import math

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import DomainError, ParameterError
from factor.primes import primes_between, primes_upto

from .moments import (
    bernoulli_cumulants, central_from_cumulants, model_moments, normal_moments,
    standardized_from_power_sums,
)
from .simulate import sample_model
from .window import build_window, default_L, default_y, default_z, iterated_log, window_from_primes


def toy_window(primes):
    primes = list(primes)
    return window_from_primes(100, primes[0] - 1, primes[-1], primes)


def enumerated_moments(primes, k_max):
    """E[Y~^j] by summing over every outcome of the independent Bernoulli(1/p)."""
    q = [1 / p for p in primes]
    mu = sum(q)
    sigma = math.sqrt(sum(v * (1 - v) for v in q))
    moments = [0.0] * (k_max + 1)
    for outcome in itertools.product((0, 1), repeat=len(q)):
        weight = math.prod(v if hit else 1 - v for v, hit in zip(q, outcome))
        score = (sum(outcome) - mu) / sigma
        for j in range(k_max + 1):
            moments[j] += weight * score ** j
    return moments


class WindowTests(SimpleTestCase):
    def test_defaults_at_ten_million(self):
        x = 10 ** 7
        self.assertAlmostEqual(default_y(x), 259.79, places=1)
        self.assertAlmostEqual(iterated_log(x, 3), 1.0225, places=3)
        self.assertAlmostEqual(default_z(x), x ** (1 / 1.5))
        self.assertAlmostEqual(default_L(x), x ** (1 / 3))
        window = build_window(x)
        self.assertEqual(window.y, default_y(x))

    def test_iterated_log_undefined(self):
        self.assertEqual(iterated_log(10, 3), math.log(math.log(math.log(10))))
        self.assertEqual(iterated_log(2, 3), -math.inf)

    def test_override(self):
        window = build_window(10 ** 6, y=10, z=100)
        self.assertEqual(window.primes.tolist(), primes_between(11, 101).tolist())
        self.assertEqual(window.count, 21)
        self.assertAlmostEqual(window.mu, sum(1 / p for p in window.primes.tolist()), places=14)
        self.assertIn(97, window)
        self.assertNotIn(7, window)

    def test_window_is_complete(self):
        window = build_window(10 ** 6)
        sieve = primes_upto(int(window.z))
        expected = sieve[sieve > window.y]
        np.testing.assert_array_equal(window.primes, expected)

    def test_mu_and_sigma2(self):
        window = build_window(10 ** 7)
        self.assertGreater(window.mu, window.sigma2)
        self.assertGreater(window.sigma2, 0)
        self.assertLess(window.mu - window.sigma2, 0.5)

    def test_mertens_estimate(self):
        for x, z in ((10 ** 7, None), (10 ** 7, 10 ** 4), (10 ** 6, 10 ** 5)):
            window = build_window(x, z=z)
            estimate = math.log(math.log(window.z)) - math.log(math.log(window.y))
            self.assertLess(abs(window.mu - estimate), 0.2, (x, z))

    def test_errors(self):
        with self.assertRaises(ParameterError) as ctx:
            build_window(10 ** 6, y=50, z=50)
        self.assertEqual(ctx.exception.flag, '--z')
        with self.assertRaises(ParameterError) as ctx:
            build_window(10)
        self.assertEqual(ctx.exception.flag, '--x')
        with self.assertRaises(ParameterError):
            build_window(10 ** 6, y=24, z=28)  # no prime in (24, 28]
        with self.assertRaises(ParameterError):
            build_window(1000, y=10, z=2000)


class MomentTests(SimpleTestCase):
    def test_normal_moments(self):
        self.assertEqual(normal_moments(8).tolist(), [1, 0, 1, 0, 3, 0, 15, 0, 105])
        with self.assertRaises(DomainError):
            normal_moments(9)

    def test_toy_window(self):
        window = toy_window([3, 5])
        self.assertAlmostEqual(window.mu, 8 / 15)
        self.assertAlmostEqual(window.sigma2, 86 / 225)
        moments = model_moments(window, 4)
        self.assertAlmostEqual(moments[3], (2 / 27 + 12 / 125) / window.sigma ** 3, places=12)
        self.assertAlmostEqual(moments[3], 0.7197, places=4)

    def test_singleton_window(self):
        p = 7
        moments = model_moments(toy_window([p]), 3)
        self.assertAlmostEqual(moments[3], (1 - 2 / p) / math.sqrt((1 / p) * (1 - 1 / p)), places=12)

    def test_standardization(self):
        for window in (toy_window([3, 5]), build_window(10 ** 6)):
            moments = model_moments(window, 8)
            self.assertEqual(moments[0], 1.0)
            self.assertAlmostEqual(moments[1], 0.0, places=12)
            self.assertAlmostEqual(moments[2], 1.0, places=12)

    def test_agrees_with_enumeration(self):
        for primes in ([3], [3, 5, 7], primes_between(11, 60).tolist(), [101, 103, 107, 109]):
            exact = enumerated_moments(primes, 6)
            cumulant = model_moments(toy_window(primes), 6)
            for j in range(7):
                self.assertAlmostEqual(cumulant[j], exact[j], delta=1e-10, msg=(primes, j))

    def test_nested_windows_approach_the_normal(self):
        skew, kurt = [], []
        for j in range(2, 7):
            primes = primes_between(11, 10 ** j + 1)
            moments = model_moments(window_from_primes(10 ** j, 10, 10 ** j, primes), 4)
            skew.append(abs(moments[3]))
            kurt.append(abs(moments[4] - 3))
        self.assertTrue(all(a > b for a, b in zip(skew, skew[1:])), skew)
        self.assertTrue(all(a > b for a, b in zip(kurt, kurt[1:])), kurt)

    def test_cumulant_polynomials(self):
        polys = bernoulli_cumulants(4)
        q = 0.25
        self.assertAlmostEqual(polys[0](q), q)
        self.assertAlmostEqual(polys[1](q), q * (1 - q))
        self.assertAlmostEqual(polys[2](q), q * (1 - q) * (1 - 2 * q))
        self.assertAlmostEqual(polys[3](q), q * (1 - q) * (1 - 6 * q + 6 * q * q))

    def test_central_from_cumulants_for_a_normal(self):
        central = central_from_cumulants([0.0, 0.0, 1.0] + [0.0] * 6)
        self.assertEqual(central, [1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0, 0.0, 105.0])

    def test_k_max_range(self):
        with self.assertRaises(DomainError):
            model_moments(toy_window([3, 5]), 0)
        with self.assertRaises(DomainError):
            model_moments(toy_window([3, 5]), 9)

    def test_standardized_from_power_sums(self):
        values = [0, 1, 1, 2, 5]
        sums = [sum(v ** i for v in values) for i in range(5)]
        mu, sigma = 1.5, 2.0
        moments = standardized_from_power_sums(sums, len(values), mu, sigma, 4)
        for j in range(5):
            direct = sum(((v - mu) / sigma) ** j for v in values) / len(values)
            self.assertAlmostEqual(moments[j], direct, places=12)
        with self.assertRaises(DomainError):
            standardized_from_power_sums(sums, 0, mu, sigma, 4)


class SimulationTests(SimpleTestCase):
    def test_support(self):
        window = toy_window([3, 5])
        draws = sample_model(window, 1, seed=7)
        self.assertIn(int(draws.counts[0]), (0, 1, 2))

    def test_mean_of_toy_window(self):
        draws = sample_model(toy_window([3, 5]), 10 ** 6, seed=1)
        self.assertAlmostEqual(draws.mean, 8 / 15, delta=0.005)

    def test_mean_within_five_sigma(self):
        window = build_window(10 ** 6, y=10, z=1000)
        trials = 20_000
        draws = sample_model(window, trials, seed=3, chunk=1 << 16)
        self.assertLess(abs(draws.mean - window.mu), 5 * window.sigma / math.sqrt(trials))

    def test_same_seed_same_stream(self):
        window = build_window(10 ** 6, y=10, z=1000)
        first = sample_model(window, 5000, seed=42)
        second = sample_model(window, 5000, seed=42)
        np.testing.assert_array_equal(first.counts, second.counts)
        other = sample_model(window, 5000, seed=43)
        self.assertFalse(np.array_equal(first.counts, other.counts))

    def test_trials_must_be_positive(self):
        with self.assertRaises(DomainError):
            sample_model(toy_window([3, 5]), 0, seed=1)
