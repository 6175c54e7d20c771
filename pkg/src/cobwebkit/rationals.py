"""Strict parsing and formatting of exact rationals (``"p/q"`` or ``"n"``)."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class RationalParseError(ValueError):
    pass


def parse_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to a Fraction.

    Strings must look like ``"p/q"`` or ``"n"``; decimals and floats are
    rejected so that nothing inexact leaks into the core.
    """
    if isinstance(value, bool):
        raise RationalParseError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise RationalParseError(f"not a rational literal: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise RationalParseError(f"zero denominator: {value!r}")
        return Fraction(num, den)
    raise RationalParseError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))
