"""Counting n in the sample space with d | f(n), once over n and once over m.

Every n = mP in the sample space has m < x/L and P a prime in
(L_m, x/m], L_m = max(L, P+(m)). The right-hand count walks those m and
counts the primes P in the residue class where P a(m) + b(m) = 0 mod d.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from arith.functions import evaluate_block
from arith.sieve import base_primes_for, sieve_block
from core.conf import eklab_setting
from core.exceptions import IdentityViolation, ParameterError
from core.pool import map_ordered, segments
from factor.primes import primes_upto
from sample.runner import build_m_table

from .classes import DClass, check_modulus

logger = logging.getLogger(__name__)

# bound on the entries of one residue matrix (primes x moduli)
_MATRIX_CELLS = 1 << 22


@dataclass
class DCountReport:
    d: int
    lhs: int
    rhs: int
    omega_count: int
    dclass: DClass
    ideal_main_term: float

    @property
    def expected(self):
        return self.omega_count / self.d

    @property
    def discrepancy(self):
        if not self.omega_count:
            return 0.0
        return abs(self.lhs / self.omega_count - 1 / self.d)

    def as_dict(self):
        return {
            'd': self.d,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'omega_count': self.omega_count,
            'expected': self.expected,
            'discrepancy': self.discrepancy,
            'ideal_main_term': self.ideal_main_term,
            'classes': self.dclass.as_dict(),
        }


def enumerate_d(window, k, cap=None, limit=None):
    """Squarefree d built from at most k window primes with d <= cap.

    Returns (sorted list, partial); ``partial`` is set when the list was
    cut off at ``limit`` entries.
    """
    cap = eklab_setting('D_PRODUCT_CAP', cap)
    limit = eklab_setting('D_LIST_CAP', limit)
    primes = [int(p) for p in window.primes]
    found = []

    def walk(start, product, size):
        for i in range(start, len(primes)):
            d = product * primes[i]
            if d > cap:
                return False
            if len(found) >= limit:
                return True
            found.append(d)
            if size + 1 < k and walk(i + 1, d, size + 1):
                return True
        return False

    partial = walk(0, 1, 0)
    if partial:
        logger.warning("d-list cut off at %d entries (k = %d, cap = %d)", limit, k, cap)
    return sorted(found), partial


def euler_phi_squarefree(d):
    return math.prod(p - 1 for p in check_modulus(d))


def check_x(x):
    cap = eklab_setting('DCOUNT_X_CAP')
    if x > cap:
        raise ParameterError(f"exact two-sided counts are limited to x <= {cap:g}", flag='--x')


# --- left side: scan the sample space ---

def _lhs_segment(bounds, shared):
    cfg, ds, segment_size, base = shared
    lo, hi = bounds
    block = sieve_block(lo, hi, segment_size=segment_size, base_primes=base)
    f = evaluate_block(cfg.spec, block)
    values = f[cfg.omega_mask(block, f)]
    return len(values), [int(np.count_nonzero(values % d == 0)) for d in ds]


# --- right side: walk m and solve the congruence for P ---

def class_counts(primes, a, b, ds):
    """#{P in primes : P a + b = 0 mod d} for every d in ds."""
    counts = np.zeros(len(ds), dtype=np.int64)
    moduli, residues, columns = [], [], []
    for i, d in enumerate(ds):
        g = math.gcd(d, a)
        if b % g:
            # some p | d divides a but not b: no P at all
            continue
        reduced = d // g
        if reduced == 1:
            counts[i] = len(primes)
            continue
        moduli.append(reduced)
        residues.append(-b * pow(a, -1, reduced) % reduced)
        columns.append(i)

    if moduli and len(primes):
        width = max(1, _MATRIX_CELLS // len(primes))
        moduli = np.array(moduli, dtype=np.int64)
        residues = np.array(residues, dtype=np.int64)
        columns = np.array(columns)
        for start in range(0, len(moduli), width):
            stop = start + width
            hits = primes[:, None] % moduli[None, start:stop] == residues[None, start:stop]
            counts[columns[start:stop]] = hits.sum(axis=0)
    return counts


def _rhs_chunk(bounds, shared):
    cfg, ds, table, primes = shared
    lo, hi = bounds
    m = np.arange(lo, hi, dtype=np.int64)
    a = table.a[lo - table.lo:hi - table.lo]
    b = table.b[lo - table.lo:hi - table.lo]
    lpf = table.lpf[lo - table.lo:hi - table.lo]

    classes = [DClass(d) for d in ds]
    ideal_masks = [dclass.tally(m, a, b) for dclass in classes]
    counts = np.zeros(len(ds), dtype=np.int64)
    main_terms = [[] for _ in ds]

    for i in range(len(m)):
        mi = int(m[i])
        if mi <= cfg.spec.m0:
            continue
        lower = max(cfg.L, int(lpf[i]))
        upper = cfg.x // mi
        start = int(np.searchsorted(primes, lower, side='right'))
        stop = int(np.searchsorted(primes, upper, side='right'))
        if stop <= start:
            continue
        window = primes[start:stop]
        ai, bi = int(a[i]), int(b[i])
        counts += class_counts(window, ai, bi, ds)

        # P a + b = 0 gives f(n) = 0, which is outside the sample space
        if ai and -bi % ai == 0:
            root = -bi // ai
            j = int(np.searchsorted(window, root))
            if j < len(window) and window[j] == root:
                counts -= 1

        for j, d in enumerate(ds):
            if ideal_masks[j][i]:
                main_terms[j].append(len(window))

    return counts, classes, main_terms


def _merge_classes(parts):
    total = parts[0]
    for part in parts[1:]:
        total.ideal += part.ideal
        total.compat_not_ideal += part.compat_not_ideal
        total.incompatible += part.incompatible
        total.gcd_terms.extend(part.gcd_terms)
    return total


def dcount_many(ds, cfg, workers=1, segment_size=None):
    """Both sides of the d-divisibility count for every d in ds."""
    check_x(cfg.x)
    ds = [int(d) for d in ds]
    for d in ds:
        check_modulus(d)
    segment_size = eklab_setting('SEGMENT_SIZE', segment_size)

    shared = (cfg, ds, segment_size, base_primes_for(cfg.x + 1))
    lhs_parts = map_ordered(_lhs_segment, segments(2, cfg.x + 1, segment_size), workers=workers, shared=shared)
    omega_count = sum(count for count, _ in lhs_parts)
    lhs = [sum(part[1][j] for part in lhs_parts) for j in range(len(ds))]

    table = build_m_table(cfg, segment_size)
    primes = primes_upto(cfg.x // 2)
    m_hi = max(2, math.ceil(cfg.m_bound))
    chunk = max(1, (m_hi - 2) // (4 * max(workers, 1)) + 1)
    rhs_parts = map_ordered(
        _rhs_chunk, segments(2, m_hi, chunk), workers=workers, shared=(cfg, ds, table, primes),
    )

    reports = []
    for j, d in enumerate(ds):
        rhs = int(sum(int(part[0][j]) for part in rhs_parts))
        dclass = _merge_classes([part[1][j] for part in rhs_parts]) if rhs_parts else DClass(d)
        main = sum(sum(part[2][j]) for part in rhs_parts)
        report = DCountReport(
            d=d,
            lhs=lhs[j],
            rhs=rhs,
            omega_count=omega_count,
            dclass=dclass,
            ideal_main_term=main / euler_phi_squarefree(d),
        )
        if report.lhs != report.rhs:
            raise IdentityViolation(
                f"d = {d}, x = {cfg.x}, {cfg.spec}: {report.lhs} n counted directly but {report.rhs} through m"
            )
        reports.append(report)

    logger.info("dcount x = %d, %s: %d moduli, #Omega = %d", cfg.x, cfg.spec, len(ds), omega_count)
    return reports


def dcount(d, cfg, workers=1, segment_size=None):
    return dcount_many([d], cfg, workers=workers, segment_size=segment_size)[0]


def dcount_summary(reports, cfg):
    """Summed discrepancy next to log2(x)/log(x) for scale."""
    return {
        'discrepancy_sum': math.fsum(r.discrepancy for r in reports),
        'gcd_sum': math.fsum(r.dclass.gcd_sum for r in reports),
        'loglog_x': cfg.loglog_x,
        'log_x': math.log(cfg.x),
        'reference': cfg.loglog_x / math.log(cfg.x),
    }
