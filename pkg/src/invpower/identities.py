"""Executable checks for the binomial identities behind the convergence
argument.

Each check evaluates one identity at one parameter tuple: the left side by
literal term-by-term summation, the right side by its closed form (or its
own independent summation for the two re-indexing families).  The two
sides deliberately share no helper code, so a bug in one route cannot hide
in the other.  All arithmetic is over Python big integers; the
``binom(a, b) == 0`` convention for out-of-range lower indices is load
bearing (several right sides vanish only because of it).

The identity families:

* FACTORIAL_DOMINANCE          (m+1)! * C(k, m+1)  >  C(k+n-1, n)
                               for k > m+1, 0 <= n <= m.
* ALTERNATING_ROW_PREFIX       sum_{n<=k} (-1)^n C(m,n) = (-1)^k C(m-1,k)
                               for m >= 1, 0 <= k <= m-1.
* CONVOLUTION_SHIFT_FAMILY     the alternating binomial convolution equals
                               an a-shifted re-indexed sum, 0 <= a <= m.
* ALTERNATING_CONVOLUTION_CLOSED  its endpoint: the convolution collapses
                               to (-1)^m C(k-1, m).
* HOCKEY_STICK                 column partial sums of the triangle.
* WEIGHTED_SHIFT_FAMILY        the weighted convolution equals an a-shifted
                               sum plus a correction, 1 <= a <= m-2.
* WEIGHTED_CONVOLUTION_CLOSED  its endpoint:
                               (-1)^(m-1) { m C(k-1,m) + C(k-2,m-1) }.

``run_suite`` enumerates every admissible tuple over rectangular m/k
ranges and reports pass/fail counts plus the failing tuples (there should
never be any: these are theorems, so a failure is an implementation bug).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Sequence

from .scalar import binom

FACTORIAL_DOMINANCE = "FACTORIAL_DOMINANCE"
ALTERNATING_ROW_PREFIX = "ALTERNATING_ROW_PREFIX"
CONVOLUTION_SHIFT_FAMILY = "CONVOLUTION_SHIFT_FAMILY"
ALTERNATING_CONVOLUTION_CLOSED = "ALTERNATING_CONVOLUTION_CLOSED"
HOCKEY_STICK = "HOCKEY_STICK"
WEIGHTED_SHIFT_FAMILY = "WEIGHTED_SHIFT_FAMILY"
WEIGHTED_CONVOLUTION_CLOSED = "WEIGHTED_CONVOLUTION_CLOSED"

IDENTITY_IDS = (
    FACTORIAL_DOMINANCE,
    ALTERNATING_ROW_PREFIX,
    CONVOLUTION_SHIFT_FAMILY,
    ALTERNATING_CONVOLUTION_CLOSED,
    HOCKEY_STICK,
    WEIGHTED_SHIFT_FAMILY,
    WEIGHTED_CONVOLUTION_CLOSED,
)


@dataclass(frozen=True)
class IdentityCase:
    identity_id: str
    params: dict[str, int]
    lhs: int
    rhs: int
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "params": dict(self.params),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "pass": self.passed,
        }


def check_factorial_dominance(m: int, k: int, n: int) -> IdentityCase:
    """Strict inequality (m+1)! * C(k, m+1) > C(k+n-1, n)."""
    if m < 0 or n < 0 or k <= m + 1 or n > m:
        raise ValueError(f"need k > m+1 >= 1 and 0 <= n <= m, got m={m} k={k} n={n}")
    lhs = factorial(m + 1) * binom(k, m + 1)
    rhs = binom(k + n - 1, n)
    return IdentityCase(FACTORIAL_DOMINANCE, {"m": m, "k": k, "n": n}, lhs, rhs, lhs > rhs)


def check_alternating_row_prefix(m: int, k: int) -> IdentityCase:
    """Partial alternating row sum against the signed previous-row value."""
    if m < 1 or k < 0 or k > m - 1:
        raise ValueError(f"need m >= 1 and 0 <= k <= m-1, got m={m} k={k}")
    lhs = 0
    for n in range(k + 1):
        lhs += (-1) ** n * binom(m, n)
    rhs = (-1) ** k * binom(m - 1, k)
    return IdentityCase(ALTERNATING_ROW_PREFIX, {"m": m, "k": k}, lhs, rhs, lhs == rhs)


def check_convolution_shift(m: int, k: int, a: int) -> IdentityCase:
    """Alternating binomial convolution vs its a-fold re-indexed form.

    The right side is independent of a; a = m collapses it to the closed
    form checked by :func:`check_alternating_convolution`.
    """
    if m < 0 or k < 1 or a < 0 or a > m:
        raise ValueError(f"need m >= 0, k >= 1, 0 <= a <= m, got m={m} k={k} a={a}")
    lhs = 0
    for n in range(m + 1):
        lhs += (-1) ** n * binom(m, n) * binom(k + n - 1, n)
    rhs_sum = 0
    for r in range(1, m + 2 - a):
        rhs_sum += (-1) ** (r - 1) * binom(k + r - 2, r - 1 + a) * binom(m - a, r - 1)
    rhs = (-1) ** a * rhs_sum
    return IdentityCase(CONVOLUTION_SHIFT_FAMILY, {"m": m, "k": k, "a": a}, lhs, rhs, lhs == rhs)


def check_alternating_convolution(m: int, k: int) -> IdentityCase:
    """sum (-1)^n C(m,n) C(k+n-1,n) == (-1)^m C(k-1, m)."""
    if m < 0 or k < 1:
        raise ValueError(f"need m >= 0 and k >= 1, got m={m} k={k}")
    lhs = 0
    for n in range(m + 1):
        lhs += (-1) ** n * binom(m, n) * binom(k + n - 1, n)
    rhs = (-1) ** m * binom(k - 1, m)
    return IdentityCase(ALTERNATING_CONVOLUTION_CLOSED, {"m": m, "k": k}, lhs, rhs, lhs == rhs)


def check_hockey_stick(k: int, m: int) -> IdentityCase:
    """Column partial sum: sum_{z<m} C(k+z-2, k-2) == C(k+m-2, k-1)."""
    if k < 2 or m < 1:
        raise ValueError(f"need k >= 2 and m >= 1, got k={k} m={m}")
    lhs = 0
    for z in range(m):
        lhs += binom(k + z - 2, k - 2)
    rhs = binom(k + m - 2, k - 1)
    return IdentityCase(HOCKEY_STICK, {"k": k, "m": m}, lhs, rhs, lhs == rhs)


def check_weighted_shift(m: int, k: int, a: int) -> IdentityCase:
    """Weighted convolution vs its a-fold shifted form plus correction."""
    if m <= 1 or k < 2 or a < 1 or a > m - 2:
        raise ValueError(f"need m > 1, k >= 2, 1 <= a <= m-2, got m={m} k={k} a={a}")
    lhs = 0
    for n in range(1, m):
        lhs += (-1) ** n * binom(m, n + 1) * binom(k + n - 1, k - 1)
    shifted = 0
    for n in range(1, m - a):
        shifted += (-1) ** n * binom(m - a, n + 1) * binom(k + n - 1, k - 1 - a)
    correction = 0
    for r in range(1, a + 1):
        correction += (-1) ** r * (m - r) * binom(k, r)
    rhs = (-1) ** a * shifted + correction
    return IdentityCase(WEIGHTED_SHIFT_FAMILY, {"m": m, "k": k, "a": a}, lhs, rhs, lhs == rhs)


def check_weighted_convolution(m: int, k: int) -> IdentityCase:
    """sum { C(m,n+1) - m C(m,n) } (-1)^n C(k+n-1,n)
    == (-1)^(m-1) { m C(k-1,m) + C(k-2,m-1) }."""
    if m < 1 or k < 2:
        raise ValueError(f"need m >= 1 and k >= 2, got m={m} k={k}")
    lhs = 0
    for n in range(1, m + 1):
        lhs += (binom(m, n + 1) - m * binom(m, n)) * (-1) ** n * binom(k + n - 1, n)
    rhs = (-1) ** (m - 1) * (m * binom(k - 1, m) + binom(k - 2, m - 1))
    return IdentityCase(WEIGHTED_CONVOLUTION_CLOSED, {"m": m, "k": k}, lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class SuiteRanges:
    """Rectangular m/k enumeration ranges; inner parameters (n, a) always
    run over their full admissible span for each (m, k)."""

    m_values: Sequence[int] = tuple(range(0, 26))
    k_values: Sequence[int] = tuple(range(0, 26))


@dataclass
class SuiteReport:
    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list[IdentityCase] = field(default_factory=list)

    def record(self, case: IdentityCase) -> None:
        self.total += 1
        if case.passed:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(case)

    def to_json_dict(self) -> dict:
        return {
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "failures": [c.to_json_dict() for c in self.failures],
        }


def run_suite(ranges: SuiteRanges = SuiteRanges()) -> SuiteReport:
    """Exhaustively check every identity over all admissible tuples.

    (m, k) pairs outside an identity's precondition are counted as
    skipped for that identity; admissible pairs expand to all admissible
    inner parameters.
    """
    report = SuiteReport()
    ms, ks = ranges.m_values, ranges.k_values
    for m in ms:
        for k in ks:
            # factorial dominance: k > m+1, all 0 <= n <= m
            if m >= 0 and k > m + 1:
                for n in range(m + 1):
                    report.record(check_factorial_dominance(m, k, n))
            else:
                report.skipped += 1
            # alternating prefix: uses k as the prefix length
            if m >= 1 and 0 <= k <= m - 1:
                report.record(check_alternating_row_prefix(m, k))
            else:
                report.skipped += 1
            # shift family and its closed endpoint
            if m >= 0 and k >= 1:
                for a in range(m + 1):
                    report.record(check_convolution_shift(m, k, a))
                report.record(check_alternating_convolution(m, k))
            else:
                report.skipped += 2
            # hockey stick
            if k >= 2 and m >= 1:
                report.record(check_hockey_stick(k, m))
            else:
                report.skipped += 1
            # weighted family and its closed endpoint
            if m > 1 and k >= 2 and m - 2 >= 1:
                for a in range(1, m - 1):
                    report.record(check_weighted_shift(m, k, a))
            else:
                report.skipped += 1
            if m >= 1 and k >= 2:
                report.record(check_weighted_convolution(m, k))
            else:
                report.skipped += 1
    return report
