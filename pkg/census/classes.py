import math
from dataclasses import dataclass, field

import numpy as np
from django.db import models

from arith.linear import linear_form
from arith.sieve import sieve_block
from core.exceptions import DomainError
from factor.factorize import factorize


class DClassKind(models.TextChoices):
    IDEAL = 'ideal', 'gcd(d, a(m) b(m)) = 1'
    COMPAT_NOT_IDEAL = 'compat', 'd-compatible but not d-ideal'
    INCOMPATIBLE = 'incompatible', 'some p | d divides exactly one of a(m), b(m)'


def check_modulus(d):
    """Raise DomainError unless d > 1 is squarefree; return its primes."""
    if d <= 1:
        raise DomainError(f"d must exceed 1, got {d}")
    factorization = factorize(d)
    if any(e > 1 for _, e in factorization.factors):
        raise DomainError(f"d = {d} is not squarefree")
    return factorization.primes


def kind_of(d, a, b):
    """Class of one (a(m), b(m)) pair for a squarefree d.

    For squarefree d, gcd(d, a) is the product of the p | d dividing a,
    so compatibility is exactly gcd(d, a) == gcd(d, b).
    """
    ga = math.gcd(d, a)
    gb = math.gcd(d, b)
    if ga != gb:
        return DClassKind.INCOMPATIBLE
    if ga == 1:
        return DClassKind.IDEAL
    return DClassKind.COMPAT_NOT_IDEAL


def classify_m(d, m, spec):
    check_modulus(d)
    if m < 2:
        raise DomainError(f"m must be at least 2, got {m}")
    a, b = linear_form(spec, m, sieve_block(m, m + 1).at(m))
    return kind_of(d, a, b)


@dataclass
class DClass:
    """Per-d tallies over 1 < m < x/L."""
    d: int
    ideal: int = 0
    compat_not_ideal: int = 0
    incompatible: int = 0
    gcd_terms: list = field(default_factory=list)

    @property
    def total(self):
        return self.ideal + self.compat_not_ideal + self.incompatible

    @property
    def gcd_sum(self):
        return math.fsum(self.gcd_terms)

    def tally(self, m, a, b):
        """Add the m of a block; returns the ideal mask for further use."""
        ga = np.gcd(a, self.d)
        gb = np.gcd(b, self.d)
        compatible = ga == gb
        ideal = compatible & (ga == 1)
        compat = compatible & (ga > 1)
        self.ideal += int(ideal.sum())
        self.compat_not_ideal += int(compat.sum())
        self.incompatible += int((~compatible).sum())
        if compat.any():
            self.gcd_terms.extend((ga[compat] / (m[compat] * float(self.d))).tolist())
        return ideal

    def as_dict(self):
        return {
            'ideal': self.ideal,
            'compat_not_ideal': self.compat_not_ideal,
            'incompatible': self.incompatible,
            'gcd_sum': self.gcd_sum,
        }
