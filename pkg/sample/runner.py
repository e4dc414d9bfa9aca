import logging
from dataclasses import dataclass

import numpy as np

from arith.functions import evaluate_block
from arith.linear import LinearFormTable
from arith.sieve import base_primes_for, sieve_block, sieve_range
from core.conf import eklab_setting
from core.exceptions import IdentityViolation
from core.pool import map_ordered, segments

from .config import m_table_limit
from .records import make_record
from .summary import SampleSummary

logger = logging.getLogger(__name__)


@dataclass
class SampleRun:
    summary: SampleSummary
    records: list | None = None


def build_m_table(cfg, segment_size=None):
    return LinearFormTable.build(cfg.spec, m_table_limit(cfg), segment_size=segment_size)


def block_records(block, cfg, table):
    """Records for every n of the block, in increasing n."""
    f = evaluate_block(cfg.spec, block)
    n = block.n
    P = block.lpf
    in_omega = cfg.omega_mask(block, f)

    # decomposition check, vectorized: f(mP) == P a(m) + b(m) on the sample space
    if in_omega.any():
        idx = np.flatnonzero(in_omega)
        m = n[idx] // P[idx]
        predicted = P[idx] * table.a[m - table.lo] + table.b[m - table.lo]
        bad = np.flatnonzero(predicted != f[idx])
        if len(bad):
            i = idx[bad[0]]
            raise IdentityViolation(
                f"n = {n[i]}: f(n) = {f[i]} but the linear form of {cfg.spec} gives {predicted[bad[0]]}"
            )

    for i in range(len(block)):
        yield make_record(int(n[i]), int(P[i]), bool(in_omega[i]), int(f[i]), cfg)


def _segment(bounds, shared):
    cfg, table, segment_size, base, keep = shared
    lo, hi = bounds
    block = sieve_block(lo, hi, segment_size=segment_size, base_primes=base)
    summary = SampleSummary(population=cfg.population)
    kept = [] if keep else None
    for record in block_records(block, cfg, table):
        summary.add(record)
        if keep:
            kept.append(record)
    logger.debug("sampled [%d, %d): %d in the sample space", lo, hi, summary.omega_count)
    return summary, kept


def iter_records(cfg, table=None, segment_size=None):
    """Stream one record per 1 < n <= x, in order, in this process."""
    segment_size = eklab_setting('SEGMENT_SIZE', segment_size)
    table = table or build_m_table(cfg, segment_size)
    for block in sieve_range(2, cfg.x + 1, segment_size=segment_size):
        yield from block_records(block, cfg, table)


def run_sample(cfg, workers=1, keep_records=False, segment_size=None):
    segment_size = eklab_setting('SEGMENT_SIZE', segment_size)
    table = build_m_table(cfg, segment_size)
    shared = (cfg, table, segment_size, base_primes_for(cfg.x + 1), keep_records)

    parts = map_ordered(_segment, segments(2, cfg.x + 1, segment_size), workers=workers, shared=shared)

    summary = SampleSummary(population=cfg.population)
    records = [] if keep_records else None
    for part, kept in parts:
        summary = summary + part
        if keep_records:
            records.extend(kept)

    logger.info("x = %d, %s: #Omega = %d of %d records", cfg.x, cfg.spec, summary.omega_count, summary.records)
    return SampleRun(summary=summary, records=records)
