"""The ten-check acceptance suite, one test (and one pass/fail line) per
criterion.

The full battery runs once per session; each test then asserts its own
criterion record, so a failure points at exactly one claim.  Runtime
budgets are asserted per criterion as well: the suite is meant to stay
usable on a laptop, not just on a build machine.
"""

import os

import pytest

from repnorm import acceptance

BUDGET_MS = {
    "1": 10_000,
    "2": 60_000,
    "3": 30_000,
    "4": 20_000,
    "5": 60_000,
    "6": 180_000,
    "7": 300_000,
    "8": 120_000,
    "9": 1_000,
    "10": 5_000,
}


@pytest.fixture(scope="session")
def records():
    threads = min(4, os.cpu_count() or 1)
    recs = acceptance.run_all(threads=threads)
    return {r.criterion_id.split("-")[0]: r for r in recs}


def check(records, key):
    rec = records[key]
    assert rec.runtime_ms < BUDGET_MS[key], (
        f"criterion {key} exceeded its runtime budget: {rec.summary_line()}")
    assert rec.passed, rec.summary_line()


def test_criterion_01_hypergeometric_identities(records):
    check(records, "1")


def test_criterion_02_coefficient_dual_paths(records):
    check(records, "2")


def test_criterion_03_parseval(records):
    check(records, "3")


def test_criterion_04_collapsed_integral(records):
    check(records, "4")


def test_criterion_05_series_quadrature_identity(records):
    check(records, "5")


def test_criterion_06_integral_decay_exponent(records):
    check(records, "6")


def test_criterion_07_minimal_norm_decay(records):
    check(records, "7")


def test_criterion_08_sobolev_gap(records):
    check(records, "8")


def test_criterion_09_structural_constants(records):
    check(records, "9")


def test_criterion_10_asymptotic_lemmas(records):
    check(records, "10")


def test_report_is_complete(records):
    assert sorted(records, key=int) == [str(k) for k in range(1, 11)]
    for rec in records.values():
        d = rec.as_dict()
        assert set(d) == {"criterion_id", "expected", "observed",
                          "tolerance", "pass", "runtime_ms"}
