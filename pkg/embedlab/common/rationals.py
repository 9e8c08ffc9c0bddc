"""Exact rational parsing and the canonical ``p/q`` text form."""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError

Rational = Fraction | int


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal such as ``"0.25"``."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"Not a rational number: {text!r}") from None


def parse_positive_rational(text: str | int | Fraction, name: str = "value") -> Fraction:
    value = parse_rational(text)
    if value <= 0:
        raise ValidationError(f"{name} must be positive, got {format_rational(value)}")
    return value


def format_rational(value: Rational) -> str:
    """Always ``p/q`` with gcd(p, q) = 1 and q > 0, so 6/6 renders as ``1/1``."""
    frac = Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"


def format_number(value: Rational | float) -> str:
    """``p/q`` for exact values, fixed 10-decimal text for floats."""
    if isinstance(value, float):
        if value == float("inf"):
            return "inf"
        return f"{value:.10f}"
    return format_rational(value)
