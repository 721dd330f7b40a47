"""Seeded Monte-Carlo survey of line counts on random hypersurfaces.

Sample i always draws from its own RNG substream derived from
(master_seed, i), and the smoothness rejection loop stays inside that
substream, so the report is a pure function of the configuration: thread
count, chunking and scheduling can never change a byte of output.  Timing is
kept out of the deterministic serialization for the same reason.
"""

from __future__ import annotations

import csv
import json
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from decimal import Context, Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from .bounds import expected_line_count
from .errors import CensusConfigError
from .fano import count_lines_batch, get_line_table, table_bytes_estimate, DEFAULT_MEMORY_CAP
from .formring import num_monomials, random_form
from .gf import field_make
from .rng import SplitMix64, substream_seed
from .smoothness import is_smooth

_CHUNK = 512

_SIX = Context(prec=6, rounding=ROUND_HALF_EVEN)
_WIDE = Context(prec=30, rounding=ROUND_HALF_EVEN)


@dataclass(frozen=True)
class CensusConfig:
    q: int
    n: int = 4
    d: int = 3
    samples: int = 10_000
    smooth_only: bool = False
    master_seed: int = 0
    threads: int = 1

    def validate(self) -> None:
        if self.samples < 1:
            raise CensusConfigError("samples must be >= 1")
        if self.threads < 1:
            raise CensusConfigError("threads must be >= 1")
        if self.n < 2:
            raise CensusConfigError("need n >= 2 for a line survey")
        if self.d < 1:
            raise CensusConfigError("need d >= 1")
        if self.master_seed < 0 or self.master_seed >= 1 << 64:
            raise CensusConfigError("master_seed must fit in 64 bits")


@dataclass(frozen=True)
class SampleStats:
    count: int
    min: int
    max: int
    median: Fraction
    mean: Fraction
    sd: Decimal


def render_decimal(x) -> str:
    """6 significant digits, round half to even; exact inputs in, text out."""
    if isinstance(x, Fraction):
        d = _WIDE.divide(Decimal(x.numerator), Decimal(x.denominator))
    else:
        d = Decimal(x)
    return str(_SIX.plus(d))


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def summarize(counts: Sequence[int]) -> SampleStats:
    """Exact order statistics and moments.

    median: mid-average of the two central order statistics for even length;
    sd: sample standard deviation (denominator count-1), 0 for a single
    sample.  Everything except the final square root is exact.
    """
    if not counts:
        raise ValueError("cannot summarize an empty sample list")
    data = sorted(int(c) for c in counts)
    m = len(data)
    if m % 2:
        median = Fraction(data[m // 2])
    else:
        median = Fraction(data[m // 2 - 1] + data[m // 2], 2)
    total = sum(data)
    mean = Fraction(total, m)
    if m == 1:
        sd = Decimal(0)
    else:
        var = (Fraction(sum(c * c for c in data)) - m * mean * mean) / (m - 1)
        sd = _WIDE.divide(Decimal(var.numerator), Decimal(var.denominator)).sqrt(_WIDE)
    return SampleStats(count=m, min=data[0], max=data[-1],
                       median=median, mean=mean, sd=sd)


def histogram(counts: Sequence[int]) -> Dict[int, int]:
    return dict(sorted(Counter(int(c) for c in counts).items()))


def compare_to_formula(stats: SampleStats, q: int) -> Fraction:
    """Signed deviation of the observed mean from the heuristic mean, exact."""
    return stats.mean - expected_line_count(q)


@dataclass(frozen=True)
class CensusReport:
    config: CensusConfig
    stats: SampleStats
    histogram: Dict[int, int]
    rejected: int
    wall_seconds: float = dc_field(compare=False, default=0.0)
    cpu_seconds: float = dc_field(compare=False, default=0.0)

    def to_dict(self) -> dict:
        # threads and timing are deliberately absent: neither may influence
        # (or appear in) the deterministic serialization
        cfg = self.config
        return {
            "config": {
                "q": cfg.q,
                "n": cfg.n,
                "d": cfg.d,
                "samples": cfg.samples,
                "smooth_only": cfg.smooth_only,
                "seed": cfg.master_seed,
            },
            "stats": {
                "count": self.stats.count,
                "min": self.stats.min,
                "max": self.stats.max,
                "median": _fraction_str(self.stats.median),
                "median_decimal": render_decimal(self.stats.median),
                "mean": _fraction_str(self.stats.mean),
                "mean_decimal": render_decimal(self.stats.mean),
                "sd_decimal": render_decimal(self.stats.sd),
            },
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "rejected": self.rejected,
            "formula_mean_decimal": render_decimal(expected_line_count(cfg.q)),
            "formula_deviation_decimal": render_decimal(
                compare_to_formula(self.stats, cfg.q)),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _draw_block(cfg: CensusConfig, field, start: int, stop: int):
    """Coefficient columns plus rejection count for samples [start, stop)."""
    k = num_monomials(cfg.n + 1, cfg.d)
    cols = np.zeros((k, stop - start), dtype=np.int64)
    rejected = 0
    for i in range(start, stop):
        rng = SplitMix64(substream_seed(cfg.master_seed, i))
        f = random_form(field, cfg.n + 1, cfg.d, rng)
        if cfg.smooth_only:
            while not is_smooth(f):
                rejected += 1
                f = random_form(field, cfg.n + 1, cfg.d, rng)
        cols[:, i - start] = f.coeff_vector()
    return cols, rejected


def run_census(cfg: CensusConfig) -> CensusReport:
    cfg.validate()
    field = field_make(cfg.q)
    t_wall = time.perf_counter()
    t_cpu = time.process_time()

    if table_bytes_estimate(cfg.q, cfg.n, cfg.d) <= DEFAULT_MEMORY_CAP:
        get_line_table(field, cfg.n, cfg.d)  # warm once, shared read-only

    spans = [(s, min(s + _CHUNK, cfg.samples))
             for s in range(0, cfg.samples, _CHUNK)]

    def work(span):
        start, stop = span
        cols, rej = _draw_block(cfg, field, start, stop)
        return count_lines_batch(field, cfg.n, cfg.d, cols), rej

    counts = np.zeros(cfg.samples, dtype=np.int64)
    rejected = 0
    if cfg.threads == 1 or len(spans) == 1:
        results = map(work, spans)
    else:
        pool = ThreadPoolExecutor(max_workers=cfg.threads)
        results = pool.map(work, spans)
    for (start, stop), (block_counts, rej) in zip(spans, results):
        counts[start:stop] = block_counts
        rejected += rej
    if cfg.threads > 1 and len(spans) > 1:
        pool.shutdown()

    stats = summarize(counts.tolist())
    return CensusReport(
        config=cfg,
        stats=stats,
        histogram=histogram(counts.tolist()),
        rejected=rejected,
        wall_seconds=time.perf_counter() - t_wall,
        cpu_seconds=time.process_time() - t_cpu,
    )


def write_csv(report: CensusReport, prefix: str) -> List[str]:
    """Write <prefix>_stats.csv and <prefix>_hist.csv; returns the paths."""
    cfg = report.config
    stats_path = f"{prefix}_stats.csv"
    hist_path = f"{prefix}_hist.csv"
    with open(stats_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["q", "n", "d", "samples", "smooth_only", "seed",
                    "min", "max", "median", "mean", "sd"])
        w.writerow([cfg.q, cfg.n, cfg.d, cfg.samples,
                    "true" if cfg.smooth_only else "false", cfg.master_seed,
                    report.stats.min, report.stats.max,
                    render_decimal(report.stats.median),
                    render_decimal(report.stats.mean),
                    render_decimal(report.stats.sd)])
    with open(hist_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["line_count", "frequency"])
        for k, v in sorted(report.histogram.items()):
            w.writerow([k, v])
    return [stats_path, hist_path]
