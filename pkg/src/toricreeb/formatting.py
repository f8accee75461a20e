"""Exact rational text: always ``"p/q"`` in lowest terms, integers as ``"3/1"``."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence


def rational_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer; decimals are refused to keep input exact."""
    s = text.strip()
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def parse_point(text: str) -> List[Fraction]:
    """Parse a comma-separated list of rationals such as ``"1/2,1/3"``."""
    return [parse_rational(part) for part in text.split(",")]


def point_str(p: Sequence) -> List[str]:
    return [rational_str(x) for x in p]
