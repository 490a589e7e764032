"""Exact rational scalars.

Every state value, coefficient and invariant in the package is a
:class:`fractions.Fraction`.  Fractions are always kept in canonical form
(positive denominator, gcd 1, zero as 0/1), which is what makes equality
checks across the package exact and cheap.

The helpers here add the few things ``Fraction`` does not give directly: a
strict ``p/q`` text format, errors named after what went wrong, and a
canonical-form validator used by the tests.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Union

ExactRational = Fraction

RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class ZeroDenominator(ValueError):
    """Raised when a rational is built with a zero denominator."""


class DivisionByZero(ZeroDivisionError):
    """Raised when zero is inverted."""


class RationalParseError(ValueError):
    """Raised for text that is not of the form ``p`` or ``p/q``."""


def normalize(num: int, den: int) -> Fraction:
    if den == 0:
        raise ZeroDenominator(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def reciprocal(r: Fraction) -> Fraction:
    if r == 0:
        raise DivisionByZero("reciprocal of zero")
    return Fraction(r.denominator, r.numerator)


def int_pow(r: Fraction, k: int) -> Fraction:
    """Exact ``r**k`` for any signed integer ``k``."""
    if r == 0 and k < 0:
        raise DivisionByZero(f"zero raised to negative power {k}")
    return Fraction(r) ** k


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``p/q`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` (optional leading ``-``, no whitespace)."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise RationalParseError(f"not a rational of the form p or p/q: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return normalize(num, den)


def format_rational(r: Fraction) -> str:
    """Always ``p/q``, including ``1/1`` for integers."""
    return f"{r.numerator}/{r.denominator}"


def is_canonical(r: Fraction) -> bool:
    if r.denominator <= 0:
        return False
    if r.numerator == 0:
        return r.denominator == 1
    return gcd(abs(r.numerator), r.denominator) == 1
