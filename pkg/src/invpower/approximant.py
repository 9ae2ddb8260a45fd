"""Inverse-power approximants matched to a Taylor series.

Given coefficients c_0..c_m of f about a finite center x0, the dimension-m
approximant is

    R(x) = q_0 + sum_{k=1..m} q_k / (x - x0 + 1)**k,

the unique function of that shape whose own expansion about x0 reproduces
c_0..c_m.  Three independent constructions are provided and must agree
bit-for-bit in exact mode:

* :func:`coeffs_closed_form`   -- explicit double binomial sums over c;
* :func:`coeffs_via_matrix`    -- binomial convolution of c followed by a
  signed-binomial matrix product;
* :func:`coeffs_oracle_solve`  -- brute-force fraction-free elimination on
  the raw (m+1) x (m+1) matching system; exact mode only, used as the
  ground-truth oracle for the other two.

Only q_0 and q_1 stabilize to center-independent limits as m grows; the
entries q_k for k >= 2 are reported but depend on the chosen center and
must not be read as asymptotic-expansion coefficients.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import ExactnessError, PoleError
from .scalar import CancellationWarning, Scalar, binom, cancellation_bits, cancellation_hazard
from .series import TaylorSeries
from .transforms import binomial_convolve


@dataclass(frozen=True)
class InversePowerApproximant:
    """Dimension m, expansion center, and coefficients q_0..q_m."""

    dimension: int
    center: Scalar
    coeffs: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.dimension + 1:
            raise ValueError(
                f"dimension {self.dimension} approximant needs exactly "
                f"{self.dimension + 1} coefficients, got {len(self.coeffs)}")

    @property
    def is_exact(self) -> bool:
        return self.center.exact and all(q.exact for q in self.coeffs)

    @property
    def pole(self) -> Scalar:
        """The one point where R(x) is undefined: x = x0 - 1."""
        return self.center - 1


@dataclass(frozen=True)
class SignedBinomialMatrix:
    """Upper-triangular matrix with entries (-1)**i * C(j, i).

    Maps binomial-convolved Taylor coefficients to approximant
    coefficients; it is involutory (its own inverse), so the same matrix
    also maps back.  The determinant is the product of the alternating
    diagonal, hence always +1 or -1.
    """

    dimension: int
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    @property
    def determinant(self) -> int:
        det = 1
        for i in range(self.dimension + 1):
            det *= self.entries[i][i]
        return det

    def multiply(self, other: "SignedBinomialMatrix") -> tuple[tuple[int, ...], ...]:
        n = self.dimension + 1
        if other.dimension != self.dimension:
            raise ValueError("dimension mismatch")
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(sum(self.entries[i][t] * other.entries[t][j] for t in range(n)))
            rows.append(tuple(row))
        return tuple(rows)

    def apply(self, vector: tuple[Scalar, ...]) -> tuple[Scalar, ...]:
        n = self.dimension + 1
        if len(vector) != n:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(n):
            acc = Scalar.rational(0)
            for j in range(n):
                e = self.entries[i][j]
                if e:
                    acc = acc + e * vector[j]
            out.append(acc)
        return tuple(out)


def signed_binomial_matrix(m: int) -> SignedBinomialMatrix:
    if m < 0:
        raise ValueError(f"dimension must be >= 0, got {m}")
    rows = tuple(
        tuple((-1) ** i * binom(j, i) for j in range(m + 1))
        for i in range(m + 1)
    )
    return SignedBinomialMatrix(m, rows)


def _check_input(series: TaylorSeries, m: int) -> None:
    if m < 0:
        raise ValueError(f"dimension must be >= 0, got {m}")
    series.require_coefficients(m + 1)


def _warn_if_cancelling(series: TaylorSeries, m: int) -> None:
    prec = series.float_precision
    if prec is not None and cancellation_hazard(m, prec):
        warnings.warn(CancellationWarning(
            f"dimension {m} binomial sums consume ~{cancellation_bits(m)} of "
            f"{prec} float bits; expect catastrophic cancellation, use exact mode"))


def coeffs_closed_form(series: TaylorSeries, m: int) -> InversePowerApproximant:
    """Approximant coefficients by the explicit binomial-sum formulas."""
    _check_input(series, m)
    _warn_if_cancelling(series, m)
    c = series.coeffs
    q = []
    q0 = Scalar.rational(0)
    for s in range(m + 1):
        q0 = q0 + binom(m, s) * c[s]
    q.append(q0)
    if m >= 1:
        q1 = Scalar.rational(0)
        for s in range(1, m + 1):
            q1 = q1 + (m * binom(m, s) - binom(m, s + 1)) * c[s]
        q.append(-q1)
    for k in range(2, m + 1):
        acc = Scalar.rational(0)
        for s in range(1, m + 1):
            inner = 0
            for n in range(k + 1):
                inner += (-1) ** n * binom(m - n, k - n) * binom(m, s + n)
            acc = acc + inner * c[s]
        q.append((-1) ** k * acc)
    return InversePowerApproximant(m, series.center, tuple(q))


def coeffs_via_matrix(series: TaylorSeries, m: int) -> InversePowerApproximant:
    """Approximant coefficients via binomial convolution followed by the
    signed-binomial matrix."""
    _check_input(series, m)
    _warn_if_cancelling(series, m)
    convolved = binomial_convolve(series, m)
    matrix = signed_binomial_matrix(m)
    return InversePowerApproximant(m, series.center, matrix.apply(convolved.values))


def coeffs_oracle_solve(series: TaylorSeries, m: int) -> InversePowerApproximant:
    """Solve the raw coefficient-matching linear system directly.

    Fraction-free Bareiss elimination over big integers (first nonzero
    pivot, no magnitude heuristics), so reruns are bit-identical.  The
    system matrix is integer; right-hand-side denominators are cleared up
    front and restored after back substitution.
    """
    _check_input(series, m)
    if not series.is_exact:
        raise ExactnessError("the oracle solver works in exact mode only")
    n = m + 1
    c = [x.as_fraction() for x in series.coeffs[:n]]

    grid = [[0] * n for _ in range(n)]
    for k in range(n):
        grid[0][k] = 1
    for i in range(1, n):
        for k in range(1, n):
            grid[i][k] = (-1) ** i * binom(k + i - 1, i)
    scale = lcm(*(x.denominator for x in c))
    aug = [grid[i] + [int(c[i] * scale)] for i in range(n)]

    prev = 1
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise ArithmeticError("structurally impossible: singular matching system")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        for r in range(col + 1, n):
            for cc in range(col + 1, n + 1):
                aug[r][cc] = (aug[r][cc] * aug[col][col] - aug[r][col] * aug[col][cc]) // prev
            aug[r][col] = 0
        prev = aug[col][col]

    solution = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * solution[j]
        solution[i] = acc / aug[i][i]

    q = tuple(Scalar.rational(x / scale) for x in solution)
    return InversePowerApproximant(m, series.center, q)


def evaluate(approx: InversePowerApproximant, x: Scalar) -> Scalar:
    """Evaluate R(x); raises :class:`PoleError` at x = x0 - 1.

    A dimension-0 approximant is a constant with no pole at all.
    """
    base = x - approx.center + 1
    if base.is_zero and approx.dimension >= 1:
        raise PoleError(f"approximant has a pole at x = {approx.center - 1}")
    result = approx.coeffs[0]
    if approx.dimension == 0:
        return result
    inv = 1 / base
    power = inv
    for k in range(1, approx.dimension + 1):
        result = result + approx.coeffs[k] * power
        power = power * inv
    return result


def expand_to_taylor(approx: InversePowerApproximant, n_terms: int) -> TaylorSeries:
    """Re-expand R(x) in powers of (x - x0).

    The first m+1 output coefficients reproduce the source series exactly:
    this inverts the construction, and the test suite closes the loop.
    """
    if n_terms < 1:
        raise ValueError(f"need at least one term, got {n_terms}")
    q = approx.coeffs
    m = approx.dimension
    coeffs = []
    c0 = Scalar.rational(0)
    for k in range(m + 1):
        c0 = c0 + q[k]
    coeffs.append(c0)
    for n in range(1, n_terms):
        acc = Scalar.rational(0)
        for k in range(1, m + 1):
            acc = acc + binom(k + n - 1, n) * q[k]
        coeffs.append((-1) ** n * acc)
    return TaylorSeries(approx.center, tuple(coeffs))
