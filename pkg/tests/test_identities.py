import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invpower.identities import (
    ALTERNATING_CONVOLUTION_CLOSED,
    IDENTITY_IDS,
    SuiteRanges,
    check_alternating_convolution,
    check_alternating_row_prefix,
    check_convolution_shift,
    check_factorial_dominance,
    check_hockey_stick,
    check_weighted_convolution,
    check_weighted_shift,
    run_suite,
)

from _oracles import comb0


# ---------------------------------------------------------------------------
# spot values (each side worked out by hand or direct summation)
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("m,k,lhs,rhs", [
    (5, 0, 1, 1),
    (5, 2, 6, 6),        # 1 - 5 + 10
    (3, 1, -2, -2),      # 1 - 3
])
def test_alternating_row_prefix_values(m, k, lhs, rhs):
    case = check_alternating_row_prefix(m, k)
    assert (case.lhs, case.rhs, case.passed) == (lhs, rhs, True)


@pytest.mark.parametrize("m,k,value", [
    (0, 5, 1),
    (2, 4, 3),           # 1 - 8 + 10
    (5, 3, 0),           # right side vanishes by the zero convention
])
def test_alternating_convolution_values(m, k, value):
    case = check_alternating_convolution(m, k)
    assert case.passed and case.lhs == value == case.rhs


@pytest.mark.parametrize("m,k,value", [
    (1, 3, 3),
    (2, 2, 0),
    (3, 2, 0),
])
def test_weighted_convolution_values(m, k, value):
    case = check_weighted_convolution(m, k)
    assert case.passed and case.lhs == value == case.rhs


@pytest.mark.parametrize("m,k,n,lhs,rhs", [
    (1, 3, 0, 6, 1),
    (2, 4, 2, 24, 10),
    (0, 2, 0, 2, 1),     # smallest admissible tuple
])
def test_factorial_dominance_values(m, k, n, lhs, rhs):
    case = check_factorial_dominance(m, k, n)
    assert (case.lhs, case.rhs, case.passed) == (lhs, rhs, True)


@pytest.mark.parametrize("m,k,a", [(3, 2, 0), (3, 2, 3), (4, 1, 2)])
def test_convolution_shift_values(m, k, a):
    assert check_convolution_shift(m, k, a).passed


@pytest.mark.parametrize("m,k,a", [(3, 3, 1), (5, 4, 3), (4, 2, 2)])
def test_weighted_shift_values(m, k, a):
    assert check_weighted_shift(m, k, a).passed


@pytest.mark.parametrize("k,m,lhs", [
    (2, 4, 4),           # 1+1+1+1 = C(4,1)
    (3, 1, 1),           # single term
    (4, 3, 10),          # 1+3+6 = C(5,3)
])
def test_hockey_stick_values(k, m, lhs):
    case = check_hockey_stick(k, m)
    assert case.passed and case.lhs == lhs


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("call", [
    lambda: check_alternating_row_prefix(3, 3),
    lambda: check_alternating_row_prefix(0, 0),
    lambda: check_alternating_convolution(2, 0),
    lambda: check_weighted_convolution(0, 3),
    lambda: check_weighted_convolution(3, 1),
    lambda: check_factorial_dominance(2, 3, 0),   # k must exceed m+1
    lambda: check_factorial_dominance(2, 5, 3),   # n must not exceed m
    lambda: check_convolution_shift(3, 2, 4),
    lambda: check_weighted_shift(3, 2, 2),
    lambda: check_hockey_stick(1, 3),
])
def test_inadmissible_parameters_rejected(call):
    with pytest.raises(ValueError):
        call()


# ---------------------------------------------------------------------------
# cross checks against test-local summation
# ---------------------------------------------------------------------------


@settings(max_examples=80)
@given(st.integers(min_value=0, max_value=18), st.integers(min_value=1, max_value=18))
def test_alternating_convolution_against_local_sum(m, k):
    case = check_alternating_convolution(m, k)
    local = sum((-1) ** n * comb0(m, n) * comb0(k + n - 1, n) for n in range(m + 1))
    assert case.lhs == local
    assert case.rhs == (-1) ** m * comb0(k - 1, m)
    assert case.passed


@settings(max_examples=80)
@given(st.integers(min_value=0, max_value=15), st.integers(min_value=1, max_value=15))
def test_shift_family_right_side_independent_of_a(m, k):
    """Every shift depth gives the same right side; the deepest one is the
    closed form."""
    values = [check_convolution_shift(m, k, a).rhs for a in range(m + 1)]
    assert len(set(values)) == 1
    assert values[0] == check_alternating_convolution(m, k).rhs


# ---------------------------------------------------------------------------
# the suite runner
# ---------------------------------------------------------------------------


def test_suite_small_ranges_all_pass():
    report = run_suite(SuiteRanges(tuple(range(11)), tuple(range(11))))
    assert report.failed == 0
    assert report.failures == []
    assert report.passed == report.total
    assert report.total > 0
    assert report.skipped > 0


def test_suite_empty_ranges():
    report = run_suite(SuiteRanges((), ()))
    assert report.total == 0
    assert report.passed == 0
    assert report.failed == 0


def test_suite_inadmissible_tuples_are_skipped_not_failed():
    # every (m, k) in this range is inadmissible for most identities
    report = run_suite(SuiteRanges((0,), (0,)))
    assert report.failed == 0
    assert report.skipped >= 5


def test_suite_report_serializes_with_contract_fields():
    report = run_suite(SuiteRanges(tuple(range(4)), tuple(range(4))))
    payload = report.to_json_dict()
    text = json.dumps(payload)
    assert json.loads(text) == payload
    assert set(payload) == {"total", "passed", "failed", "skipped", "failures"}
    case = check_alternating_convolution(2, 4).to_json_dict()
    assert set(case) == {"identity_id", "params", "lhs", "rhs", "pass"}
    assert case["identity_id"] == ALTERNATING_CONVOLUTION_CLOSED
    assert case["identity_id"] in IDENTITY_IDS
    assert case["pass"] is True
    assert isinstance(case["lhs"], str)
