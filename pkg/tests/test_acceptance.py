"""Acceptance gate: one test per shipped guarantee, one PASS/FAIL line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines. The
random-suite criteria share a single 500-economy run (seed 1000) so the
whole gate stays fast; the suite is regenerated, never loaded from disk.
"""

import time

import numpy as np
import pytest

from okishio_lab import (
    Verdict,
    apply_change,
    augmented_inputs,
    oracle_spectral_radius,
    run_suite,
)
from okishio_lab.worked_example import replay

SUITE_SEED = 1000
SUITE_COUNT = 500
SUITE_BUDGET_SECONDS = 60.0
REPLAY_BUDGET_SECONDS = 1.0

# Published three-sector example, rounded to 7 digits. Keyed by replay
# check name; REPLAY_TOL in the package is the same 1e-5.
GOLDEN = {
    "profit_rate": 0.1764706,
    "price_1": 1.0,
    "price_2": 0.9090909,
    "price_3": 1.090909,
    "labor_value_1": 0.5714286,
    "labor_value_2": 0.5,
    "labor_value_3": 0.6428571,
    "bundle_value": 0.5714286,
    "max_price_value_ratio": 1.8181818,
    "new_labor_value_1": 0.5511364,
    "new_labor_value_2": 0.4797078,
    "new_labor_value_3": 0.5752165,
    "cost_before": 0.9272727,
    "cost_after": 0.9172727,
    "break_even_wage": 1.0555556,
    "price_intercept_1": 1.0555556,
    "price_intercept_2": 1.1611111,
    "price_intercept_3": 0.9675926,
    "value_intercept_1": 1.0368189,
    "value_intercept_2": 1.1912014,
    "value_intercept_3": 0.9934149,
    "new_bundle_value": 0.5714286,
    "new_profit_rate": 0.1604551,
    "new_price_1": 0.9288424,
    "new_price_2": 0.8398318,
    "new_price_3": 0.9956171,
    "new_max_price_value_ratio": 1.750715,
}
GOLDEN_TOL = 1e-5


def _report(number: int, ok: bool, text: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")


@pytest.fixture(scope="module")
def suite():
    start = time.perf_counter()
    records = run_suite(seed=SUITE_SEED, count=SUITE_COUNT, n_range=(2, 8))
    elapsed = time.perf_counter() - start
    return records, elapsed


def test_criterion_1_golden_replay():
    start = time.perf_counter()
    report = replay()
    elapsed = time.perf_counter() - start
    actuals = {check.name: check.actual for check in report.checks}
    mismatches = [
        name
        for name, expected in GOLDEN.items()
        if abs(actuals[name] - expected) > GOLDEN_TOL
    ]
    ok = report.passed and not mismatches and elapsed < REPLAY_BUDGET_SECONDS
    _report(
        1,
        ok,
        f"golden replay, {len(GOLDEN)} published values within {GOLDEN_TOL:g} "
        f"({elapsed:.3f} s)",
    )
    assert report.passed, "embedded replay reported a mismatch"
    assert not mismatches, f"values off published table: {mismatches}"
    assert elapsed < REPLAY_BUDGET_SECONDS


def test_criterion_2_constant_exploitation_pipeline(suite):
    records, elapsed = suite
    sizes = {record.n for record in records}
    violations = [
        record.index
        for record in records
        if not (
            record.scenario.post_profit < record.scenario.pre_profit - 1e-12
            and abs(
                record.scenario.post_exploitation
                - record.scenario.pre_exploitation
            )
            <= 1e-9
        )
    ]
    ok = (
        len(records) >= 500
        and sizes == set(range(2, 9))
        and not violations
        and elapsed < SUITE_BUDGET_SECONDS
    )
    _report(
        2,
        ok,
        f"{len(records)} economies (n 2..8): profit falls > 1e-12, "
        f"exploitation matches within 1e-9 ({elapsed:.2f} s)",
    )
    assert len(records) >= 500
    assert sizes == set(range(2, 9)), f"sector sizes drawn: {sorted(sizes)}"
    assert not violations, f"violating economies: {violations[:10]}"
    assert elapsed < SUITE_BUDGET_SECONDS


def test_criterion_3_synthesis_guarantee(suite):
    records, _ = suite
    bad_flags = [
        record.index
        for record in records
        if not (
            record.scenario.flags.viable
            and record.scenario.flags.culs
            and record.scenario.flags.ratio_condition
        )
    ]
    disagreements = [
        record.index
        for record in records
        if record.scenario.flags.ratio_condition
        != record.scenario.flags.region_feasible
    ]
    ok = not bad_flags and not disagreements
    _report(
        3,
        ok,
        "every synthesized change viable + culs, ratio condition holds, "
        "both feasibility forms agree on all "
        f"{len(records)} economies",
    )
    assert not bad_flags, f"flag failures: {bad_flags[:10]}"
    assert not disagreements, f"feasibility disagreement: {disagreements[:10]}"


def test_criterion_4_okishio_control(suite):
    records, _ = suite
    violations = [
        record.index
        for record in records
        if record.okishio.post_profit < record.okishio.pre_profit - 1e-9
    ]
    rises = sum(
        1 for record in records if record.okishio.verdict is Verdict.OKISHIO_RISE
    )
    ok = not violations
    _report(
        4,
        ok,
        f"fixed-bundle control never drops the profit rate ({rises}/"
        f"{len(records)} strict rises)",
    )
    assert not violations, f"okishio violations: {violations[:10]}"


def test_criterion_5_rising_exploitation_pipeline(suite):
    records, _ = suite
    violations = [
        record.index
        for record in records
        if not (
            record.rising.post_exploitation
            > record.rising.pre_exploitation + 1e-12
            and record.rising.post_profit < record.rising.pre_profit - 1e-12
        )
    ]
    ok = not violations
    _report(
        5,
        ok,
        f"rising-exploitation samples: exploitation up > 1e-12 and profit "
        f"down > 1e-12 on all {len(records)} economies",
    )
    assert not violations, f"rising violations: {violations[:10]}"


def test_criterion_6_value_chain_residuals_oracle(suite):
    records, _ = suite
    chain_failures = []
    max_residual = 0.0
    worst_oracle_gap = 0.0
    oracle_checked = 0
    for record in records:
        scenario = record.scenario
        if not (
            np.all(scenario.pre_prices > scenario.pre_values)
            and np.all(scenario.pre_values >= scenario.post_values)
        ):
            chain_failures.append(record.index)
        m_pre = augmented_inputs(record.tech, record.bundle)
        m_post = augmented_inputs(
            apply_change(record.tech, record.synthesized.change),
            record.constant_bundle,
        )
        for matrix, profit, prices in (
            (m_pre, scenario.pre_profit, scenario.pre_prices),
            (m_post, scenario.post_profit, scenario.post_prices),
        ):
            residual = float(
                np.max(np.abs(prices - (1.0 + profit) * (prices @ matrix)))
            )
            max_residual = max(max_residual, residual)
            if record.n <= 6:
                gap = abs(
                    oracle_spectral_radius(matrix) - 1.0 / (1.0 + profit)
                )
                worst_oracle_gap = max(worst_oracle_gap, gap)
        if record.n <= 6:
            oracle_checked += 1
    ok = (
        not chain_failures
        and max_residual <= 1e-9
        and worst_oracle_gap <= 1e-8
        and oracle_checked > 0
    )
    _report(
        6,
        ok,
        f"prices above values above post-change values on all economies; "
        f"max residual {max_residual:.2e} <= 1e-9; oracle within "
        f"{worst_oracle_gap:.2e} on {oracle_checked} small economies",
    )
    assert not chain_failures, f"chain failures: {chain_failures[:10]}"
    assert max_residual <= 1e-9
    assert worst_oracle_gap <= 1e-8
    assert oracle_checked > 0
