"""Exact-rational / high-precision-float scalars and big-integer binomials.

Everything else in the package is built on two primitives:

* :class:`Scalar` -- an immutable number that is either an exact big
  rational (the default) or a binary float of declared precision.  The
  exactness flag propagates through arithmetic: any operation touching an
  inexact operand produces an inexact result.

* :func:`binom` -- big-integer binomial coefficients under the convention
  ``binom(a, b) == 0`` for ``b < 0`` or ``b > a``.  The binomial sums used
  throughout the package rely on that convention to kill out-of-range
  terms.

Exact mode is the default because the binomial weights in the coefficient
sums reach ``binom(m, m//2)`` (roughly ``2**m``), which makes fixed
precision summation cancel catastrophically; float mode is opt-in and the
rest of the package attaches a :class:`CancellationWarning` when it is
pushed past the safe range.

Float precision is declared as an IEEE-equivalent storage width in bits
(64 = double, 128 = quad, ...); the significand actually carried follows
the IEEE binary interchange rule, so ``precision=64`` computes with 53
significand bits exactly like a hardware double.  The minimum accepted
width is 64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp
from mpmath.libmp import (
    from_rational,
    from_str,
    mpf_abs,
    mpf_add,
    mpf_div,
    mpf_mul,
    mpf_neg,
    mpf_pow_int,
    mpf_sub,
    to_rational,
)

MIN_PRECISION = 64

ScalarLike = Union["Scalar", int, Fraction]


class CancellationWarning(UserWarning):
    """Raised via ``warnings.warn`` when a float-mode binomial sum is
    expected to lose most of its significand to cancellation."""


def significand_bits(precision: int) -> int:
    """Significand width of an IEEE-style binary float of total width
    ``precision`` (64 -> 53, 128 -> 113, 256 -> 237)."""
    if precision < MIN_PRECISION:
        raise ValueError(f"float precision must be >= {MIN_PRECISION} bits, got {precision}")
    return precision - round(4 * math.log2(precision)) + 13


def binom(a: int, b: int) -> int:
    """Binomial coefficient C(a, b) by the multiplicative formula.

    Returns 0 when ``b < 0`` or ``b > a``.  A negative upper index is a
    domain error: no computation in this package ever needs one.
    """
    if a < 0:
        raise ValueError(f"binom: negative upper index a={a}")
    if b < 0 or b > a:
        return 0
    b = min(b, a - b)
    result = 1
    # each partial product is divisible by i, so // is exact
    for i in range(1, b + 1):
        result = result * (a - b + i) // i
    return result


class PascalCache:
    """Memoized rows of Pascal's triangle, built by the additive recurrence.

    This is a second, structurally independent route to the same numbers
    as :func:`binom`; the test suite cross-checks the two.  Rows are
    immutable tuples inserted whole, so concurrent readers never observe
    a partially built row.
    """

    def __init__(self) -> None:
        self._rows: dict[int, tuple[int, ...]] = {}

    def row(self, a: int) -> tuple[int, ...]:
        if a < 0:
            raise ValueError(f"PascalCache.row: negative row index {a}")
        cached = self._rows.get(a)
        if cached is not None:
            return cached
        start = a
        while start > 0 and (start - 1) not in self._rows:
            start -= 1
        prev = self._rows[start - 1] if start > 0 else None
        for n in range(start, a + 1):
            if n == 0:
                fresh: tuple[int, ...] = (1,)
            else:
                assert prev is not None
                fresh = (1, *(prev[i] + prev[i + 1] for i in range(n - 1)), 1)
            self._rows[n] = fresh
            prev = fresh
        return self._rows[a]

    def binom(self, a: int, b: int) -> int:
        if a < 0:
            raise ValueError(f"PascalCache.binom: negative upper index a={a}")
        if b < 0 or b > a:
            return 0
        return self.row(a)[b]

    def cached_rows(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))


def _raw(x: mpmath.mpf):
    return x._mpf_


def _wrap(raw) -> mpmath.mpf:
    return mp.make_mpf(raw)


def _fraction_to_mpf(f: Fraction, precision: int) -> mpmath.mpf:
    return _wrap(from_rational(f.numerator, f.denominator, significand_bits(precision), "n"))


def _mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    p, q = to_rational(_raw(x))
    return Fraction(int(p), int(q))


@dataclass(frozen=True, eq=False)
class Scalar:
    """An immutable number carrying its own exactness.

    ``value`` is a ``Fraction`` when ``exact`` and an ``mpmath.mpf``
    otherwise; ``precision`` is the declared IEEE-equivalent width of the
    inexact representation and ``None`` in exact mode.  Fractions are in
    lowest terms with positive denominator by construction.
    """

    value: Union[Fraction, mpmath.mpf]
    exact: bool
    precision: int | None = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def rational(numerator: int | Fraction, denominator: int = 1) -> "Scalar":
        return Scalar(Fraction(numerator, denominator), True)

    @staticmethod
    def parse(text: str, exact: bool = True, precision: int = MIN_PRECISION) -> "Scalar":
        """Parse ``"p/q"``, plain decimal, or scientific notation.

        In exact mode decimal strings become exact rationals
        ("0.25" -> 1/4); in float mode the value is correctly rounded to
        the significand implied by ``precision``.
        """
        text = text.strip()
        if exact:
            try:
                return Scalar(Fraction(text), True)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"cannot parse {text!r} as an exact rational: {exc}") from None
        bits = significand_bits(precision)
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                raw = from_rational(int(num), int(den), bits, "n")
            else:
                raw = from_str(text, bits, "n")
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {text!r} as a float: {exc}") from None
        return Scalar(_wrap(raw), False, precision)

    @staticmethod
    def approx(value: Union[int, Fraction, "Scalar"], precision: int = MIN_PRECISION) -> "Scalar":
        """Round a value to float mode at the given IEEE-equivalent width."""
        if isinstance(value, Scalar):
            if not value.exact and value.precision == precision:
                return value
            value = value.as_fraction()
        return Scalar(_fraction_to_mpf(Fraction(value), precision), False, precision)

    def __post_init__(self) -> None:
        if self.exact:
            if not isinstance(self.value, Fraction):
                raise TypeError("exact Scalar requires a Fraction value")
            if self.precision is not None:
                raise ValueError("exact Scalar carries no precision")
        else:
            if self.precision is None or self.precision < MIN_PRECISION:
                raise ValueError(f"inexact Scalar requires precision >= {MIN_PRECISION}")

    # -- views ----------------------------------------------------------

    def as_fraction(self) -> Fraction:
        """The exact value; for float mode, the (dyadic) rational the
        float represents exactly."""
        if self.exact:
            return self.value
        return _mpf_to_fraction(self.value)

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def is_integer(self) -> bool:
        return self.as_fraction().denominator == 1

    def __float__(self) -> float:
        return float(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        if self.exact:
            return f"Scalar({self.value})"
        return f"Scalar({mpmath.nstr(self.value, 17)}, prec={self.precision})"

    def __str__(self) -> str:
        return self.render_ratio() if self.exact else mpmath.nstr(self.value, self._dps())

    def _dps(self) -> int:
        assert self.precision is not None
        return int(significand_bits(self.precision) * 0.30103) + 2

    def render_ratio(self) -> str:
        """Render as "p/q" (bare "p" for integers); exact mode only."""
        f = self.as_fraction()
        if f.denominator == 1:
            return str(f.numerator)
        return f"{f.numerator}/{f.denominator}"

    def render_decimal(self, digits: int = 30) -> str:
        """Decimal rendering with a significant-digit budget."""
        if digits < 1:
            raise ValueError("digit budget must be positive")
        if self.exact:
            f = self.value
            with localcontext() as ctx:
                ctx.prec = digits
                d = Decimal(f.numerator) / Decimal(f.denominator)
            return str(d)
        return mpmath.nstr(self.value, min(digits, self._dps()))

    # -- arithmetic -----------------------------------------------------

    def _pair(self, other: "Scalar"):
        """Common representation and result metadata for a binary op."""
        if self.exact and other.exact:
            return self.value, other.value, True, None
        precs = [s.precision for s in (self, other) if not s.exact]
        prec = min(p for p in precs if p is not None)
        bits = significand_bits(prec)
        x = _raw(self.value) if not self.exact else from_rational(
            self.value.numerator, self.value.denominator, bits, "n")
        y = _raw(other.value) if not other.exact else from_rational(
            other.value.numerator, other.value.denominator, bits, "n")
        return x, y, False, prec

    @staticmethod
    def _coerce(other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(Fraction(other), True)
        return NotImplemented

    def _binary(self, other, exact_op, mpf_op):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        x, y, exact, prec = self._pair(other)
        if exact:
            return Scalar(exact_op(x, y), True)
        bits = significand_bits(prec)
        return Scalar(_wrap(mpf_op(x, y, bits, "n")), False, prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b, mpf_add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b, mpf_sub)

    def __rsub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b, mpf_mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("scalar division by zero")
        return self._binary(other, lambda a, b: a / b, mpf_div)

    def __rtruediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __neg__(self) -> "Scalar":
        if self.exact:
            return Scalar(-self.value, True)
        return Scalar(_wrap(mpf_neg(_raw(self.value))), False, self.precision)

    def __abs__(self) -> "Scalar":
        if self.exact:
            return Scalar(abs(self.value), True)
        return Scalar(_wrap(mpf_abs(_raw(self.value))), False, self.precision)

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            raise TypeError("scalar exponent must be an integer")
        if exponent < 0 and self.is_zero:
            raise ZeroDivisionError("zero cannot be raised to a negative power")
        if self.exact:
            return Scalar(self.value ** exponent, True)
        bits = significand_bits(self.precision)
        return Scalar(_wrap(mpf_pow_int(_raw(self.value), exponent, bits, "n")), False, self.precision)

    def to_inexact(self, precision: int = MIN_PRECISION) -> "Scalar":
        return Scalar.approx(self, precision)

    # -- comparisons (exact, via the dyadic value of floats) ------------

    def _cmp(self, other) -> int:
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.as_fraction(), other.as_fraction()
        return (a > b) - (a < b)

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c == 0

    def __ne__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c != 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    __hash__ = None  # type: ignore[assignment]  # mutable-free but numeric eq


ZERO = Scalar.rational(0)
ONE = Scalar.rational(1)


def cancellation_bits(m: int) -> int:
    """Bits of significand a dimension-m binomial sum can cancel away:
    the bit length of the central coefficient binom(m, m//2)."""
    return binom(m, m // 2).bit_length()


def cancellation_hazard(m: int, precision: int) -> bool:
    """True when more than half the declared float width would be
    consumed by the central binomial weight at dimension ``m``."""
    return cancellation_bits(m) > precision // 2
