import logging
import math
from dataclasses import dataclass

import numpy as np

from core.conf import eklab_setting
from core.exceptions import ParameterError
from factor.primes import primes_between

logger = logging.getLogger(__name__)


def iterated_log(x, k):
    """log_k x, or -inf once an intermediate value is not positive."""
    value = float(x)
    for _ in range(k):
        if value <= 0:
            return -math.inf
        value = math.log(value)
    return value


def default_y(x):
    return math.log(x) ** 2


def default_z(x, l3_floor=None):
    """x^(1/log_3 x), with log_3 x floored at l3_floor for desk-scale x."""
    l3_floor = eklab_setting('L3_FLOOR', l3_floor)
    return x ** (1.0 / max(iterated_log(x, 3), l3_floor))


def default_L(x, l4_floor=None):
    """x^(1/log_4 x), with log_4 x floored at l4_floor."""
    l4_floor = eklab_setting('L4_FLOOR', l4_floor)
    return x ** (1.0 / max(iterated_log(x, 4), l4_floor))


@dataclass(frozen=True, eq=False)
class PrimeWindow:
    """The primes p with y < p <= z, with mu = sum 1/p and sigma2 = sum (1/p)(1 - 1/p)."""
    x: float
    y: float
    z: float
    primes: np.ndarray
    mu: float
    sigma2: float

    @property
    def count(self):
        return len(self.primes)

    @property
    def sigma(self):
        return math.sqrt(self.sigma2)

    def __contains__(self, p):
        return self.y < p <= self.z

    def as_dict(self):
        return {
            'y': self.y,
            'z': self.z,
            'count': self.count,
            'mu': self.mu,
            'sigma2': self.sigma2,
        }


def window_from_primes(x, y, z, primes):
    primes = np.asarray(primes, dtype=np.int64)
    reciprocals = 1.0 / primes.astype(np.float64)
    # fsum is correctly rounded, so the result does not depend on summation order
    mu = math.fsum(reciprocals)
    sigma2 = math.fsum(reciprocals * (1.0 - reciprocals))
    return PrimeWindow(x=x, y=y, z=z, primes=primes, mu=mu, sigma2=sigma2)


def build_window(x, y=None, z=None, l3_floor=None):
    if x <= 2:
        raise ParameterError(f"x must exceed 2, got {x}", flag='--x')

    if y is None or z is None:
        if iterated_log(x, 3) <= 0:
            raise ParameterError(
                "x is too small for the default window (log_3 x <= 0), pass --y and --z", flag='--x'
            )
        if x < eklab_setting('MIN_DEFAULT_X'):
            logger.warning("default window at x = %s is below the desk-scale range, log floors dominate", x)
    y = default_y(x) if y is None else float(y)
    z = default_z(x, l3_floor) if z is None else float(z)

    if y <= 2:
        raise ParameterError(f"y must exceed 2, got {y}", flag='--y')
    if y >= z:
        raise ParameterError(f"the window needs y < z, got y = {y}, z = {z}", flag='--z')
    if z > x:
        raise ParameterError(f"the window needs z <= x, got z = {z}, x = {x}", flag='--z')

    primes = primes_between(math.floor(y) + 1, math.floor(z) + 1)
    if len(primes) == 0:
        raise ParameterError(f"no primes in ({y}, {z}], widen the window with --y/--z", flag='--z')

    window = window_from_primes(x, y, z, primes)
    logger.info("window (%.1f, %.1f]: %d primes, mu = %.6f, sigma2 = %.6f",
                y, z, window.count, window.mu, window.sigma2)
    return window
