import math
from dataclasses import dataclass

import numpy as np
from django.db import models

from core.conf import eklab_setting
from core.exceptions import ParameterError
from model.window import build_window, default_L, iterated_log


class Population(models.TextChoices):
    OMEGA = 'omega', 'composite n <= x with P+(n) > L and P+(n)^2 not dividing n'
    ALL = 'all', 'every 1 < n <= x'


@dataclass(frozen=True, eq=False)
class SampleConfig:
    x: int
    spec: object
    window: object
    L: float
    population: str = Population.OMEGA
    l3_floor: float = 1.5
    l4_floor: float = 3.0

    @property
    def loglog_x(self):
        return iterated_log(self.x, 2)

    @property
    def m_bound(self):
        """Every n = mP in the sample space has m < x / L."""
        return self.x / self.L

    def log3(self):
        return max(iterated_log(self.x, 3), self.l3_floor)

    def log4(self):
        return max(iterated_log(self.x, 4), self.l4_floor)

    def omega_mask(self, block, f=None):
        """Sample-space membership for every n of a sieve block."""
        n = block.n
        P = block.lpf
        mask = (P != n) & (P > self.L) & ~block.lpf_sq_divides
        if self.spec.m0:
            mask &= n // P > self.spec.m0
        if f is not None:
            mask &= f != 0
        return mask

    def as_dict(self):
        return {
            'x': self.x,
            'fn': self.spec.label,
            'population': str(self.population),
            'L': self.L,
            'l3_floor': self.l3_floor,
            'l4_floor': self.l4_floor,
            'window': self.window.as_dict(),
        }


def build_config(x, spec, window=None, L=None, population=Population.OMEGA,
                 y=None, z=None, l3_floor=None, l4_floor=None):
    l3_floor = eklab_setting('L3_FLOOR', l3_floor)
    l4_floor = eklab_setting('L4_FLOOR', l4_floor)
    if l4_floor < 2:
        raise ParameterError(f"must be at least 2 so that L <= sqrt(x), got {l4_floor}", flag='--l4-floor')
    if x < 4 or x != int(x):
        raise ParameterError(f"x must be an integer >= 4, got {x}", flag='--x')
    x = int(x)

    if window is None:
        window = build_window(x, y=y, z=z, l3_floor=l3_floor)
    if L is None:
        L = default_L(x, l4_floor)
    if not 2 < L <= math.sqrt(x):
        raise ParameterError(f"L must satisfy 2 < L <= sqrt(x), got L = {L}", flag='--l4-floor')

    return SampleConfig(
        x=x,
        spec=spec,
        window=window,
        L=float(L),
        population=Population(population),
        l3_floor=l3_floor,
        l4_floor=l4_floor,
    )


def m_table_limit(cfg):
    """Exclusive upper end for a table of m values covering m < x / L."""
    return int(np.floor(cfg.m_bound)) + 1
