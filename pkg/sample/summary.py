import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from core.conf import eklab_setting
from core.exceptions import DomainError
from model.moments import MomentReport, model_moments, normal_moments, standardized_from_power_sums
from stats.ecdf import Ecdf, ks_distance
from stats.histogram import histogram

from .config import Population
from .records import is_scored


def _power_sums_size():
    return eklab_setting('K_MAX_LIMIT') + 1


@dataclass
class SampleSummary:
    """Integer tallies of a sample run. ``a + b`` merges two partial runs.

    Everything here is an exact integer or a Counter, so merging is
    commutative and the result does not depend on how n was split up.
    """
    population: str = Population.OMEGA
    records: int = 0
    scored: int = 0
    omega_count: int = 0
    degenerate: int = 0
    power_sums: list = field(default_factory=lambda: [0] * _power_sums_size())
    x_small_sum: int = 0
    x_large_max: int = 0
    excess_sum: int = 0
    omega_hist: Counter = field(default_factory=Counter)
    omega_prime_hist: Counter = field(default_factory=Counter)
    window_hist: Counter = field(default_factory=Counter)

    def add(self, record):
        self.records += 1
        if record.degenerate:
            self.degenerate += 1
            return

        if record.in_omega:
            self.omega_count += 1
            value = record.x_window
            power = 1
            for j in range(len(self.power_sums)):
                self.power_sums[j] += power
                power *= value
            self.x_small_sum += record.x_small
            self.x_large_max = max(self.x_large_max, record.x_large)
            self.window_hist[value] += 1

        if is_scored(record, self.population):
            self.scored += 1
            self.omega_hist[record.omega_f] += 1
            self.omega_prime_hist[record.omega_prime_f] += 1
            self.excess_sum += record.omega_prime_f - record.omega_f

    def __add__(self, other):
        if self.population != other.population:
            raise ValueError("cannot merge summaries of different populations")
        return SampleSummary(
            population=self.population,
            records=self.records + other.records,
            scored=self.scored + other.scored,
            omega_count=self.omega_count + other.omega_count,
            degenerate=self.degenerate + other.degenerate,
            power_sums=[a + b for a, b in zip(self.power_sums, other.power_sums)],
            x_small_sum=self.x_small_sum + other.x_small_sum,
            x_large_max=max(self.x_large_max, other.x_large_max),
            excess_sum=self.excess_sum + other.excess_sum,
            omega_hist=self.omega_hist + other.omega_hist,
            omega_prime_hist=self.omega_prime_hist + other.omega_prime_hist,
            window_hist=self.window_hist + other.window_hist,
        )

    # --- derived statistics, computed once the run is merged ---

    def empirical_moments(self, window, k_max):
        return standardized_from_power_sums(self.power_sums, self.omega_count, window.mu, window.sigma, k_max)

    def moment_report(self, window, k_max):
        return MomentReport(
            k_max=k_max,
            empirical=list(self.empirical_moments(window, k_max)),
            model=list(model_moments(window, k_max)),
            normal=list(normal_moments(k_max)),
        )

    def small_prime_expectation(self):
        if not self.omega_count:
            raise DomainError("the sample space is empty")
        return self.x_small_sum / self.omega_count

    def score_table(self, cfg, multiplicity=False):
        """(scores, counts) of the standardized omega score over the scored population."""
        hist = self.omega_prime_hist if multiplicity else self.omega_hist
        values = sorted(hist)
        loglog = cfg.loglog_x
        scores = (np.array(values, dtype=np.float64) - loglog) / math.sqrt(loglog)
        return scores, np.array([hist[v] for v in values], dtype=np.int64)

    def window_score_table(self, window):
        values = sorted(self.window_hist)
        scores = (np.array(values, dtype=np.float64) - window.mu) / window.sigma
        return scores, np.array([self.window_hist[v] for v in values], dtype=np.int64)

    def score_histogram(self, cfg, bins=None, value_range=None, multiplicity=False):
        scores, counts = self.score_table(cfg, multiplicity)
        return histogram(scores, bins=bins, value_range=value_range, weights=counts)

    def as_report(self, cfg, k_max=4, multiplicity=False):
        if not self.omega_count:
            raise DomainError("the sample space is empty, no statistics to report")
        window = cfg.window
        scores, counts = self.score_table(cfg, multiplicity)
        window_scores, window_counts = self.window_score_table(window)

        return {
            'config': cfg.as_dict(),
            'multiplicity': multiplicity,
            'records': self.records,
            'scored': self.scored,
            'omega_count': self.omega_count,
            'omega_density': self.omega_count / cfg.x,
            'degenerate': self.degenerate,
            'loglog_x': cfg.loglog_x,
            'mu': window.mu,
            'sigma2': window.sigma2,
            'ks_distance': ks_distance(Ecdf.from_counts(scores, counts)),
            'ks_window': ks_distance(Ecdf.from_counts(window_scores, window_counts)),
            'moments': self.moment_report(window, k_max).as_dict(),
            'small_prime_expectation': self.small_prime_expectation(),
            'small_prime_reference': cfg.log3() * cfg.log4(),
            'omega_prime_excess': self.excess_sum / cfg.x,
            'large_prime_max_over_sigma': self.x_large_max / window.sigma,
            'large_prime_bound_over_sigma': 2 * cfg.log3() / window.sigma,
            'omega_hist': {str(k): v for k, v in sorted(self.omega_hist.items())},
            'omega_prime_hist': {str(k): v for k, v in sorted(self.omega_prime_hist.items())},
            'window_hist': {str(k): v for k, v in sorted(self.window_hist.items())},
        }


def summarize(records, population=Population.OMEGA):
    summary = SampleSummary(population=population)
    for record in records:
        summary.add(record)
    return summary


def empirical_moments(records, window, k_max):
    """E[X~^j], j = 0..k_max, over the sample-space records."""
    summary = summarize(records)
    if not summary.omega_count:
        raise DomainError("the sample space is empty")
    return summary.empirical_moments(window, k_max)


def small_prime_expectation(records, y):
    """Mean over the sample space of #{p <= y : p | f(n)}."""
    total = count = 0
    for record in records:
        if record.in_omega:
            count += 1
            total += sum(1 for p in record.f_primes if p <= y)
    if not count:
        raise DomainError("the sample space is empty")
    return total / count
