"""Convergence tables and limit estimation for the two leading terms.

For each dimension m the leading approximant coefficients are

    q0(m) = sum_{n=0..m} C(m,n) c_n
    q1(m) = sum_{n=1..m} ( C(m,n+1) - m*C(m,n) ) c_n            (m >= 1)

and, for a function with the right large-x behaviour, q0(m) -> q0 and
q1(m) -> q1 with f(x) = q0 + q1/x + O(1/x**2).  Only these two rows are
evaluated here (each row costs O(m), the whole table O(m_max**2)).

No convergence rate is known in general, so estimation is deliberately
plain: the estimate is the last row and the error indicator is the last
step-to-step delta.  The convergence flag demands the last TWO deltas
below tolerance, which guards against a single accidental agreement of an
oscillating sequence; it is a heuristic, not a bound.  No extrapolation
(Aitken, Richardson, ...) is applied -- users who want acceleration can
run it on the emitted table.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .corpus import CorpusFunction, evaluate_at, taylor_coeffs
from .scalar import CancellationWarning, Scalar, binom, cancellation_bits, cancellation_hazard
from .series import TaylorSeries


@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    q0: Scalar
    q1: Scalar | None
    delta0: Scalar | None
    delta1: Scalar | None


@dataclass(frozen=True)
class ConvergenceTable:
    rows: tuple[ConvergenceRow, ...]
    m_max: int

    def row(self, m: int) -> ConvergenceRow:
        return self.rows[m]


@dataclass(frozen=True)
class AsymptoticEstimate:
    q0: Scalar
    q1: Scalar | None
    error_indicator_q0: Scalar
    error_indicator_q1: Scalar | None
    q0_converged: bool
    q1_converged: bool
    m_used: int


def _q0_row(c: tuple[Scalar, ...], m: int) -> Scalar:
    acc = Scalar.rational(0)
    for n in range(m + 1):
        acc = acc + binom(m, n) * c[n]
    return acc


def _q1_row(c: tuple[Scalar, ...], m: int) -> Scalar:
    acc = Scalar.rational(0)
    for n in range(1, m + 1):
        acc = acc + (binom(m, n + 1) - m * binom(m, n)) * c[n]
    return acc


def convergence_table(series: TaylorSeries, m_max: int) -> ConvergenceTable:
    """Rows m = 0..m_max of the two leading coefficients with deltas."""
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    series.require_coefficients(m_max + 1)
    prec = series.float_precision
    if prec is not None and cancellation_hazard(m_max, prec):
        warnings.warn(CancellationWarning(
            f"convergence table to dimension {m_max} at {prec}-bit floats: "
            f"binomial weights consume ~{cancellation_bits(m_max)} bits and "
            f"cancellation will dominate; use exact mode"))
    c = series.coeffs
    rows: list[ConvergenceRow] = []
    prev0: Scalar | None = None
    prev1: Scalar | None = None
    for m in range(m_max + 1):
        q0 = _q0_row(c, m)
        q1 = _q1_row(c, m) if m >= 1 else None
        delta0 = abs(q0 - prev0) if prev0 is not None else None
        delta1 = abs(q1 - prev1) if (q1 is not None and prev1 is not None) else None
        rows.append(ConvergenceRow(m, q0, q1, delta0, delta1))
        prev0, prev1 = q0, q1
    return ConvergenceTable(tuple(rows), m_max)


def estimate_limits(table: ConvergenceTable, tol: Scalar) -> AsymptoticEstimate:
    """Read limits off the table: last row value, last delta as indicator.

    A component is flagged converged only when its final two deltas are
    both within tolerance; a single row can never claim convergence.
    """
    if len(table.rows) < 3:
        raise ValueError(
            f"limit estimation needs at least 3 table rows, got {len(table.rows)}")
    last = table.rows[-1]
    deltas0 = [r.delta0 for r in table.rows if r.delta0 is not None]
    deltas1 = [r.delta1 for r in table.rows if r.delta1 is not None]
    q0_ok = len(deltas0) >= 2 and all(d <= tol for d in deltas0[-2:])
    q1_ok = len(deltas1) >= 2 and all(d <= tol for d in deltas1[-2:])
    return AsymptoticEstimate(
        q0=last.q0,
        q1=last.q1,
        error_indicator_q0=deltas0[-1] if deltas0 else None,
        error_indicator_q1=deltas1[-1] if deltas1 else None,
        q0_converged=q0_ok,
        q1_converged=q1_ok,
        m_used=table.m_max,
    )


@dataclass(frozen=True)
class CenterInvarianceReport:
    """Two tables of the same function at different centers, compared."""

    center_a: Scalar
    center_b: Scalar
    table_a: ConvergenceTable
    table_b: ConvergenceTable
    estimate_a: AsymptoticEstimate
    estimate_b: AsymptoticEstimate
    q0_difference: Scalar
    q1_difference: Scalar
    q0_agrees: bool
    q1_agrees: bool

    @property
    def agrees(self) -> bool:
        return self.q0_agrees and self.q1_agrees


def center_invariance_check(
    f: CorpusFunction,
    x0_a: Scalar,
    x0_b: Scalar,
    m_max: int,
    tol: Scalar,
) -> CenterInvarianceReport:
    """Expand f at two centers and compare the limit estimates.

    The two leading coefficients do not depend on the expansion center;
    higher ones do.  Both full tables are reported so disagreement can be
    inspected row by row.
    """
    series_a = taylor_coeffs(f, x0_a, m_max + 1)
    series_b = taylor_coeffs(f, x0_b, m_max + 1)
    table_a = convergence_table(series_a, m_max)
    table_b = convergence_table(series_b, m_max)
    est_a = estimate_limits(table_a, tol)
    est_b = estimate_limits(table_b, tol)
    d0 = abs(est_a.q0 - est_b.q0)
    d1 = abs(est_a.q1 - est_b.q1)
    return CenterInvarianceReport(
        center_a=x0_a,
        center_b=x0_b,
        table_a=table_a,
        table_b=table_b,
        estimate_a=est_a,
        estimate_b=est_b,
        q0_difference=d0,
        q1_difference=d1,
        q0_agrees=d0 <= tol,
        q1_agrees=d1 <= tol,
    )


@dataclass(frozen=True)
class ResidualPoint:
    x: Scalar
    residual: Scalar


@dataclass(frozen=True)
class ResidualScanReport:
    """Scaled remainders r(x) = x**2 * |f(x) - q0 - q1/x| over a grid.

    If (q0, q1) really are the leading terms, r stays bounded (it tends
    to the next expansion coefficient); a wrong q0 makes it grow like
    x**2, a wrong q1 like x.  ``growth_flagged`` compares the top decade
    of the grid: failure when r at the largest point exceeds
    ``growth_factor`` times r at the start of the decade.
    """

    points: tuple[ResidualPoint, ...]
    growth_flagged: bool
    growth_factor: int


def asymptotic_residual_scan(
    f: CorpusFunction,
    q0: Scalar,
    q1: Scalar,
    grid: tuple[Scalar, ...],
    growth_factor: int = 4,
) -> ResidualScanReport:
    if not grid:
        raise ValueError("empty residual grid")
    points = []
    for x in grid:
        if x.is_zero:
            raise ValueError("residual scan grid must avoid x = 0")
        r = abs(evaluate_at(f, x) - q0 - q1 / x) * x * x
        points.append(ResidualPoint(x, r))
    points.sort(key=lambda p: p.x.as_fraction())
    x_max = points[-1].x
    decade = [p for p in points if 10 * p.x >= x_max]
    first, last = decade[0].residual, decade[-1].residual
    flagged = last > growth_factor * first if not first.is_zero else not last.is_zero
    return ResidualScanReport(tuple(points), flagged, growth_factor)
