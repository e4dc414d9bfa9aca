import math
from dataclasses import dataclass

from arith.functions import evaluate
from core.exceptions import IdentityViolation
from factor.factorize import factorize, omega_in_window

from .config import Population


@dataclass(frozen=True)
class SampleRecord:
    n: int
    in_omega: bool
    m: int
    P: int
    f_value: int
    omega_f: int
    omega_prime_f: int
    x_window: int
    x_small: int
    x_large: int
    score: float | None  # None for degenerate records
    degenerate: bool = False
    f_primes: tuple = ()

    @property
    def scored(self):
        return not self.degenerate


def make_record(n, P, in_omega, f_value, cfg):
    """Factor f(n) and split its primes at y and z."""
    m = n // P
    if f_value == 0:
        return SampleRecord(
            n=n, in_omega=False, m=m, P=P, f_value=0, omega_f=0, omega_prime_f=0,
            x_window=0, x_small=0, x_large=0, score=None, degenerate=True,
        )

    size = abs(f_value)
    factorization = factorize(size)
    z = cfg.window.z
    x_small = factorization.count_between(0, cfg.window.y)
    x_window = omega_in_window(factorization, cfg.window)
    x_large = factorization.omega - x_small - x_window

    # each prime above z costs a factor > z, so there is room for at most log|f| / log z of them
    if x_large and x_large * math.log(z) > math.log(size) + 1e-9:
        raise IdentityViolation(f"n = {n}: {x_large} primes above z = {z} cannot divide {f_value}")

    loglog = cfg.loglog_x
    return SampleRecord(
        n=n,
        in_omega=in_omega,
        m=m,
        P=P,
        f_value=f_value,
        omega_f=factorization.omega,
        omega_prime_f=factorization.omega_prime,
        x_window=x_window,
        x_small=x_small,
        x_large=x_large,
        score=(factorization.omega - loglog) / math.sqrt(loglog),
        f_primes=factorization.primes,
    )


def check_decomposition(n, m, P, f_value, table):
    a, b = table.at(m)
    if P * a + b != f_value:
        raise IdentityViolation(
            f"n = {n} = {m}*{P}: f(n) = {f_value} but P*a(m) + b(m) = {P * a + b} for {table.spec}"
        )


def classify(n, cfg, block, table):
    """One SampleRecord for 2 <= n <= x.

    ``block`` must cover n and ``table`` (a LinearFormTable) must cover
    every m < x / L.
    """
    values = block.at(n)
    P = values.lpf
    m = n // P
    f_value = evaluate(cfg.spec, n, values)

    in_omega = (
        P != n
        and P > cfg.L
        and not values.lpf_sq_divides
        and m > cfg.spec.m0
        and f_value != 0
    )
    record = make_record(n, P, in_omega, f_value, cfg)
    if in_omega:
        check_decomposition(n, m, P, f_value, table)
    return record


def is_scored(record, population):
    if record.degenerate:
        return False
    return record.in_omega or population == Population.ALL
