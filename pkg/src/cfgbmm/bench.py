"""Timing harness for the parse-based multiplication pipeline."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from .bmatrix import naive_bmm, random_matrix
from .reduction import DEFAULT_ELL, run_reduction

CSV_HEADER = ("m", "variant", "parser", "build_ns", "parse_ns", "extract_ns",
              "grammar_size", "string_len", "verified")
TIMING_COLUMNS = ("build_ns", "parse_ns", "extract_ns")

# (variant, parser) pairs measured for every size
CONFIGS = (("general", "general"), ("cnf", "cky"))


class VerificationError(AssertionError):
    pass


@dataclass(frozen=True)
class BenchRecord:
    m: int
    variant: str
    parser: str
    build_ns: int
    parse_ns: int
    extract_ns: int
    grammar_size: int
    string_len: int
    verified: bool

    @property
    def total_ns(self) -> int:
        return self.build_ns + self.parse_ns + self.extract_ns


def instance_seeds(seed: int, m: int, rep: int) -> tuple[int, int]:
    base = (seed * 1_000_003 + m * 7919 + rep) * 2
    return base, base + 1


def run_bench(
    sizes: Sequence[int],
    reps: int = 1,
    density: float = 0.5,
    seed: int = 0,
    ell=DEFAULT_ELL,
    abort_on_failure: bool = True,
) -> list[BenchRecord]:
    records = []
    for m in sizes:
        if m < 1:
            raise ValueError(f"sizes must be >= 1, got {m}")
        for rep in range(reps):
            sa, sb = instance_seeds(seed, m, rep)
            a, b = random_matrix(m, density, sa), random_matrix(m, density, sb)
            expected = naive_bmm(a, b)
            for variant, parser in CONFIGS:
                run = run_reduction(a, b, variant, parser, ell=ell)
                ok = run.product == expected
                rec = BenchRecord(m, variant, parser, run.build_ns, run.parse_ns,
                                  run.extract_ns, run.grammar_size,
                                  run.artifacts.plan.string_length, ok)
                records.append(rec)
                if not ok and abort_on_failure:
                    raise VerificationError(f"m={m} rep={rep} {variant}/{parser}: product mismatch")
    return records


def loglog_slope(records: Iterable[BenchRecord], variant: str) -> float:
    """Least-squares slope of log(mean total time) against log(m)."""
    by_m: dict[int, list[int]] = {}
    for r in records:
        if r.variant == variant:
            by_m.setdefault(r.m, []).append(r.total_ns)
    if len(by_m) < 2:
        return math.nan
    ms = sorted(by_m)
    x = np.log(ms)
    y = np.log([max(1.0, float(np.mean(by_m[m]))) for m in ms])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def summary_lines(records: Sequence[BenchRecord]) -> list[str]:
    lines = []
    for variant, _ in CONFIGS:
        s = loglog_slope(records, variant)
        text = "n/a" if math.isnan(s) else f"{s:.3f}"
        lines.append(f"# loglog_slope variant={variant} total_time_vs_m={text}")
    return lines


def format_csv(records: Sequence[BenchRecord], with_summary: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    assert tuple(f.name for f in fields(BenchRecord)) == CSV_HEADER
    for r in records:
        row = list(astuple(r))
        row[-1] = "true" if r.verified else "false"
        writer.writerow(row)
    if with_summary:
        buf.write("\n".join(summary_lines(records)) + "\n")
    return buf.getvalue()
