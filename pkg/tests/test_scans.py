from fractions import Fraction
from math import log, sqrt

import pytest

from analysis.scans import (
    collision_bound_check, conjecture_scan, fqn_chain_check, large_support_bound, really_big_closure_check,
    smoothness_scan, uncovered_regime, width_check,
)

from conftest import P


def test_conjecture_scan_n8():
    report = conjecture_scan(8)
    assert report.finite
    assert report.big_count > 0
    # |chi/d| <= 1 caps every root at sqrt(n)
    assert 0 < report.a_emp <= sqrt(8) * (1 + 1e-9)
    assert report.a_emp_restricted <= report.a_emp
    assert report.restricted_count <= report.big_count
    assert report.a_emp == max(row.root for row in report.class_ratios)


@pytest.mark.parametrize("n", range(3, 11))
def test_big_cycles_characters_vanish(n):
    report = conjecture_scan(n)
    assert report.forced_zero_violations == []


def test_forced_zero_check_runs_at_n8():
    assert conjecture_scan(8).forced_zero_checked > 0


def test_conjecture_scan_process_pool_matches_serial(restore_config):
    serial = conjecture_scan(6, jobs=1)
    parallel = conjecture_scan(6, jobs=2)
    assert serial.a_emp == parallel.a_emp
    assert [row.to_json() for row in serial.class_ratios] == [row.to_json() for row in parallel.class_ratios]


def test_uncovered_regime_bounds():
    n = 10
    report = conjecture_scan(n, beta=0.5)
    lower, upper = log(n) ** 0.5, sqrt(n) * log(n)
    for row in report.uncovered:
        assert lower <= row.support <= upper
        assert row.cycle_type[0] < 8 * upper
    assert uncovered_regime(report.class_ratios, 1) == []


@pytest.mark.parametrize("n", range(3, 9))
def test_large_support_bound(n):
    report = large_support_bound(n)
    assert report.passed
    assert all(row[-1] for row in report.rows)


@pytest.mark.parametrize("n", range(3, 16))
def test_big_diagrams_are_narrow(n):
    report = width_check(n)
    assert report.passed
    assert report.max_width <= n


def test_width_check_n1_has_no_big_irreps():
    report = width_check(1)
    assert (report.max_width, report.max_height) == (0, 0)
    assert report.passed


def test_smoothness_scan_n3():
    report = smoothness_scan(3)
    assert report.max_smoothness == 6
    assert report.argmax in (P("3"), P("1+1+1"))


def test_smoothness_scan_n10():
    report = smoothness_scan(10)
    # sum |chi/d|^4 <= n!/d^2 for the largest irrep
    assert report.max_dimension_smoothness < 10 * sqrt(10)
    assert 1 <= report.max_dimension_smoothness <= report.max_smoothness


def test_smoothness_scan_without_big_irreps():
    with pytest.raises(ValueError):
        smoothness_scan(1)


@pytest.mark.parametrize("n", [3, 5])
def test_smoothness_chain(n):
    report = fqn_chain_check(n)
    assert report.passed
    assert report.max_smoothness >= 1


def test_really_big_closure():
    assert really_big_closure_check(3).max_escaping_mass == 0
    report = really_big_closure_check(6)
    assert 0 <= report.max_escaping_mass <= 1
    assert report.pairs > 0


def test_really_big_closure_n10():
    report = really_big_closure_check(10)
    assert report.max_escaping_mass < Fraction(1, 20)


@pytest.mark.parametrize("n", range(2, 8))
def test_collision_bounds(n):
    report = collision_bound_check(n)
    assert report.passed
    assert 0 < report.max_collision <= 1


def test_collision_report_json():
    data = collision_bound_check(3).to_json()
    assert data["violations"] == [] and data["envelope_violations"] == []
    assert Fraction(data["max_collision"]) > 0
