"""
Exact rational helpers.

Every fractional quantity in hetpir (storage budgets, partition shares,
download costs) is a :class:`fractions.Fraction`. Text is accepted either as
``p/q`` or as a finite decimal, which converts exactly.
"""

import re
from decimal import Decimal
from fractions import Fraction
from numbers import Integral

from hetpir.core.exceptions import DomainError

__all__ = ["as_rational", "parse_rational", "format_rational",
           "parse_rational_list", "format_rational_list"]

_ratio = re.compile(r"^[+-]?\d+(/\d+)?$")
_decimal = re.compile(r"^[+-]?(\d+\.\d*|\.\d+)$")


def parse_rational(text):
    """
    Parses a rational from text.

    Args:
        text (str): a string of the form ``p``, ``p/q`` or a finite decimal
            such as ``0.75``.

    Returns:
        :class:`Fraction`: the exact value.

    Raises:
        DomainError: if the text is not an exact rational.
    """
    stripped = text.strip()
    if _ratio.match(stripped):
        if re.search(r"/0+$", stripped):
            raise DomainError(f"Zero denominator in '{text}'")
        return Fraction(stripped)
    if _decimal.match(stripped):
        return Fraction(stripped)
    raise DomainError(f"'{text}' is not an exact rational (use p/q or a decimal)")


def as_rational(value):
    """
    Converts a number or a string into an exact :class:`Fraction`.

    Floats are converted through their shortest decimal representation, so
    that 0.1 becomes 1/10 rather than its binary expansion.

    Args:
        value (Fraction, int, str, Decimal or float): the value to convert.

    Returns:
        :class:`Fraction`: the exact value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not rationals")
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise DomainError(f"{value} is not finite")
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise DomainError(f"{value} is not finite")
        return Fraction(repr(value))
    raise TypeError(f"Cannot interpret {type(value).__name__} as a rational")


def format_rational(value):
    """Formats a rational as ``p/q`` (the denominator is always written)."""
    value = as_rational(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational_list(text):
    """Parses a comma-separated list of rationals, e.g. ``9/10,6/10,3/10``."""
    items = [item for item in text.split(",")]
    if any(not item.strip() for item in items):
        raise DomainError(f"Empty entry in rational list '{text}'")
    return [parse_rational(item) for item in items]


def format_rational_list(values):
    return ",".join(format_rational(v) for v in values)
