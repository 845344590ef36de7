import math

import pytest

from cfgbmm.bench import BenchRecord, format_csv, loglog_slope, run_bench


def rec(m, total, variant="cnf"):
    return BenchRecord(m, variant, "cky", total, 0, 0, 1, 9, True)


def test_slope_recovers_power_law():
    records = [rec(m, 5 * m**3) for m in (10, 20, 40, 80)]
    assert loglog_slope(records, "cnf") == pytest.approx(3.0)


def test_slope_averages_reps():
    records = [rec(10, 100), rec(10, 300), rec(100, 20000)]
    assert loglog_slope(records, "cnf") == pytest.approx(2.0)


def test_slope_needs_two_sizes():
    assert math.isnan(loglog_slope([rec(8, 10)], "cnf"))
    assert "n/a" in format_csv([rec(8, 10)])


def test_run_bench_verifies_every_row():
    records = run_bench([1, 5], reps=2, density=0.5, seed=1)
    assert len(records) == 8
    assert all(r.verified for r in records)
    assert {r.variant for r in records} == {"general", "cnf"}
