"""Test functions with analytically known large-x behaviour.

Every corpus function is a finite sum of shifted reciprocals

    f(x) = offset + sum_i  weight_i / (x + shift_i),

which keeps three things computable in closed form: exact Taylor
coefficients at any non-pole center, the true limits (q0, q1) at
infinity, and the analyticity radius of the transplanted function
v(t) = f(1/t + x0 - 1).  That radius is the sufficient condition the
convergence theory asks for (radius > 2); it is reported, never
enforced, because the coefficient formulas demonstrably converge for
some functions that violate it (x/(x+1) expanded at 1 being the shipped
example).

Mobius quotients (a*x + b)/(c*x + d) with c != 0 are accepted and
normalized to the same shape.

Coefficient files are JSON with every scalar carried as a string
("p/q" or decimal), so exact values survive a save/load round trip
bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import CoefficientFileError, PoleError
from .scalar import Scalar
from .series import TaylorSeries


def _scalar(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar.rational(x)


@dataclass(frozen=True)
class ShiftedReciprocal:
    """f(x) = offset + weight / (x + shift)."""

    offset: Scalar
    weight: Scalar
    shift: Scalar


@dataclass(frozen=True)
class Mobius:
    """f(x) = (a*x + b) / (c*x + d) with c != 0."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __post_init__(self) -> None:
        if self.c.is_zero:
            raise ValueError("mobius quotient needs a degree-1 denominator (c != 0)")


@dataclass(frozen=True)
class TailSum:
    """A finite sum of shifted-reciprocal terms."""

    terms: tuple[ShiftedReciprocal, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("tail sum needs at least one term")


CorpusFunction = Union[ShiftedReciprocal, Mobius, TailSum]


def shifted_reciprocal(offset, weight, shift) -> ShiftedReciprocal:
    return ShiftedReciprocal(_scalar(offset), _scalar(weight), _scalar(shift))


def mobius(a, b, c, d) -> Mobius:
    return Mobius(_scalar(a), _scalar(b), _scalar(c), _scalar(d))


def tail_sum(*terms: ShiftedReciprocal) -> TailSum:
    return TailSum(tuple(terms))


def as_tail_terms(f: CorpusFunction) -> tuple[ShiftedReciprocal, ...]:
    """Normal form: every corpus function as a sum of shifted reciprocals."""
    if isinstance(f, ShiftedReciprocal):
        return (f,)
    if isinstance(f, Mobius):
        return (ShiftedReciprocal(
            f.a / f.c,
            (f.b * f.c - f.a * f.d) / (f.c * f.c),
            f.d / f.c,
        ),)
    if isinstance(f, TailSum):
        return f.terms
    raise TypeError(f"not a corpus function: {f!r}")


def poles(f: CorpusFunction) -> tuple[Scalar, ...]:
    return tuple(-t.shift for t in as_tail_terms(f) if not t.weight.is_zero)


def evaluate_at(f: CorpusFunction, x: Scalar) -> Scalar:
    result = Scalar.rational(0)
    for t in as_tail_terms(f):
        result = result + t.offset
        if not t.weight.is_zero:
            base = x + t.shift
            if base.is_zero:
                raise PoleError(f"pole at x = {x}")
            result = result + t.weight / base
    return result


def known_asymptote(f: CorpusFunction) -> tuple[Scalar, Scalar]:
    """The exact limit at infinity and the exact 1/x coefficient."""
    q0 = Scalar.rational(0)
    q1 = Scalar.rational(0)
    for t in as_tail_terms(f):
        q0 = q0 + t.offset
        q1 = q1 + t.weight
    return q0, q1


def hypothesis_radius(f: CorpusFunction, x0: Scalar) -> Scalar | None:
    """Analyticity radius of v(t) = f(1/t + x0 - 1) about t = 0.

    Each weighted term puts a pole of v at t = -1/(shift + x0 - 1); the
    radius is the distance to the nearest one.  ``None`` means no finite
    pole, i.e. unbounded radius.
    """
    radius: Scalar | None = None
    for t in as_tail_terms(f):
        if t.weight.is_zero:
            continue
        offset = t.shift + x0 - 1
        if offset.is_zero:
            continue
        candidate = 1 / abs(offset)
        if radius is None or candidate < radius:
            radius = candidate
    return radius


@dataclass(frozen=True)
class HypothesisReport:
    """Radius of the transplanted function and whether it clears the
    sufficient bound (> 2).  Informational only."""

    center: Scalar
    radius: Scalar | None
    satisfied: bool


def hypothesis_report(f: CorpusFunction, x0: Scalar) -> HypothesisReport:
    radius = hypothesis_radius(f, x0)
    satisfied = radius is None or radius > 2
    return HypothesisReport(x0, radius, satisfied)


def taylor_coeffs(f: CorpusFunction, x0: Scalar, n: int) -> TaylorSeries:
    """Exact coefficients c_0..c_{n-1} of f about x0.

    Per term, c_0 = offset + weight/(x0+shift) and
    c_k = weight * (-1)**k / (x0+shift)**(k+1).
    """
    if n < 1:
        raise ValueError(f"need at least one coefficient, got n={n}")
    coeffs = [Scalar.rational(0) for _ in range(n)]
    for t in as_tail_terms(f):
        coeffs[0] = coeffs[0] + t.offset
        if t.weight.is_zero:
            continue
        base = x0 + t.shift
        if base.is_zero:
            raise PoleError(f"expansion center x0 = {x0} is a pole")
        inv = 1 / base
        coeffs[0] = coeffs[0] + t.weight * inv
        power = inv
        for k in range(1, n):
            power = power * inv
            coeffs[k] = coeffs[k] + (-1) ** k * t.weight * power
    return TaylorSeries(x0, tuple(coeffs), radius_hint=hypothesis_radius(f, x0))


def describe(f: CorpusFunction) -> str:
    parts = []
    for t in as_tail_terms(f):
        if not t.offset.is_zero or t.weight.is_zero:
            parts.append(t.offset.render_ratio() if t.offset.exact else str(t.offset))
        if not t.weight.is_zero:
            w = t.weight.render_ratio() if t.weight.exact else str(t.weight)
            s = t.shift.render_ratio() if t.shift.exact else str(t.shift)
            denom = "x" if t.shift.is_zero else f"x + {s}"
            parts.append(f"({w})/({denom})")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# shipped corpus and selector grammar
# ---------------------------------------------------------------------------

NAMED_FUNCTIONS: dict[str, CorpusFunction] = {
    "one-over-x": shifted_reciprocal(0, 1, 0),
    "reciprocal-quarter": shifted_reciprocal(0, 1, Fraction(1, 4)),
    "x-over-x-plus-1": mobius(1, 0, 1, 1),
}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    function: CorpusFunction
    center: Scalar


SHIPPED_CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("one-over-x", NAMED_FUNCTIONS["one-over-x"], Scalar.rational(1)),
    CorpusEntry("one-over-x", NAMED_FUNCTIONS["one-over-x"], Scalar.rational(5, 4)),
    CorpusEntry("reciprocal-quarter", NAMED_FUNCTIONS["reciprocal-quarter"], Scalar.rational(1)),
    CorpusEntry("x-over-x-plus-1", NAMED_FUNCTIONS["x-over-x-plus-1"], Scalar.rational(1)),
    CorpusEntry("mobius-2-3-1-2", mobius(2, 3, 1, 2), Scalar.rational(1)),
    CorpusEntry("mobius-2-3-1-2", mobius(2, 3, 1, 2), Scalar.rational(3, 2)),
)


def resolve_function(selector: str, params: str | None = None) -> CorpusFunction:
    """Turn a CLI selector into a corpus function.

    Accepted forms: a registered name ("one-over-x"), a dashed mobius
    pattern with nonnegative integer entries ("mobius-2-3-1-2"), or a
    family name plus explicit parameters ("mobius" with "2,3,1,2";
    "shifted-reciprocal" with "c,a,b", rationals allowed).
    """
    if params is not None:
        values = [Scalar.parse(p.strip()) for p in params.split(",")]
        if selector == "mobius":
            if len(values) != 4:
                raise ValueError("mobius takes 4 parameters: a,b,c,d")
            return Mobius(*values)
        if selector == "shifted-reciprocal":
            if len(values) != 3:
                raise ValueError("shifted-reciprocal takes 3 parameters: offset,weight,shift")
            return ShiftedReciprocal(*values)
        raise ValueError(f"--params is only valid with 'mobius' or 'shifted-reciprocal', got {selector!r}")
    if selector in NAMED_FUNCTIONS:
        return NAMED_FUNCTIONS[selector]
    if selector.startswith("mobius-"):
        pieces = selector.split("-")[1:]
        if len(pieces) == 4 and all(p.isdigit() for p in pieces):
            return mobius(*(int(p) for p in pieces))
    raise ValueError(
        f"unknown corpus function {selector!r}; known names: "
        + ", ".join(sorted(NAMED_FUNCTIONS)) + ", mobius-<a>-<b>-<c>-<d>")


# ---------------------------------------------------------------------------
# coefficient files
# ---------------------------------------------------------------------------


def coefficient_file_payload(series: TaylorSeries, description: str = "") -> dict:
    """The JSON object a coefficient file holds, scalars as strings."""

    def render(s: Scalar) -> str:
        return s.render_ratio() if s.exact else str(s)

    radius = series.radius_hint
    return {
        "center": render(series.center),
        "coeffs": [render(c) for c in series.coeffs],
        "exact": series.is_exact,
        "meta": {
            "hypothesis_radius": render(radius) if radius is not None else None,
            "description": description,
        },
    }


def save_coefficient_file(series: TaylorSeries, path: str, description: str = "") -> None:
    """Write a series as JSON; all scalars as strings, LF line endings."""
    payload = coefficient_file_payload(series, description)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_coefficient_file(path: str, precision: int = 64) -> TaylorSeries:
    """Read a coefficient file; exact files parse to exact rationals.

    ``precision`` applies only when the file declares ``"exact": false``.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CoefficientFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise CoefficientFileError(f"{path}: {exc}") from None

    if not isinstance(raw, dict):
        raise CoefficientFileError(f"{path}: top level must be an object")
    for field in ("center", "coeffs"):
        if field not in raw:
            raise CoefficientFileError(f"{path}: missing field {field!r}")
    exact = raw.get("exact", True)
    if not isinstance(exact, bool):
        raise CoefficientFileError(f"{path}: field 'exact' must be true or false")
    if not isinstance(raw["coeffs"], list) or not raw["coeffs"]:
        raise CoefficientFileError(f"{path}: field 'coeffs' must be a nonempty list")

    def parse(field: str, text) -> Scalar:
        if not isinstance(text, str):
            raise CoefficientFileError(
                f"{path}: field {field}: scalars must be strings, got {type(text).__name__}")
        try:
            return Scalar.parse(text, exact=exact, precision=precision)
        except ValueError as exc:
            hint = "; declare \"exact\": false to load as floats" if exact else ""
            raise CoefficientFileError(f"{path}: field {field}: {exc}{hint}") from None

    center = parse("'center'", raw["center"])
    coeffs = tuple(parse(f"'coeffs'[{i}]", t) for i, t in enumerate(raw["coeffs"]))
    radius = None
    meta = raw.get("meta") or {}
    if isinstance(meta, dict) and meta.get("hypothesis_radius") is not None:
        radius = parse("'meta.hypothesis_radius'", meta["hypothesis_radius"])
    return TaylorSeries(center, coeffs, radius_hint=radius)
