"""
Tests the exact parsing and formatting of rationals.
"""
from decimal import Decimal
from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from hetpir.core.exceptions import DomainError
from hetpir.core.rationals import (as_rational, format_rational,
                                   format_rational_list, parse_rational,
                                   parse_rational_list)


@pytest.mark.parametrize("text, expected", [
    ("9/10", Fraction(9, 10)),
    ("6/10", Fraction(3, 5)),
    ("0.75", Fraction(3, 4)),
    (".5", Fraction(1, 2)),
    ("-2", Fraction(-2)),
    (" 3/6 ", Fraction(1, 2)),
    ("1", Fraction(1)),
])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected, f"'{text}' parsed incorrectly"


@pytest.mark.parametrize("text", ["1/0", "3/00", "abc", "1.2.3", "", "1/2/3", "1e-3", "nan"])
def test_parse_rational_rejects(text):
    with pytest.raises(DomainError):
        parse_rational(text)


def test_as_rational():
    assert as_rational(0.1) == Fraction(1, 10), "floats should convert through their repr"
    assert as_rational(Decimal("0.25")) == Fraction(1, 4)
    assert as_rational(3) == Fraction(3)
    assert as_rational("2/4") == Fraction(1, 2)
    half = Fraction(1, 2)
    assert as_rational(half) is half

    with pytest.raises(TypeError):
        as_rational(True)
    with pytest.raises(DomainError):
        as_rational(float("nan"))
    with pytest.raises(DomainError):
        as_rational(float("inf"))


def test_format_rational():
    assert format_rational(2) == "2/1", "the denominator should always be written"
    assert format_rational(Fraction(6, 10)) == "3/5"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


def test_rational_lists():
    assert parse_rational_list("9/10,6/10,3/10") == [Fraction(9, 10), Fraction(3, 5), Fraction(3, 10)]
    assert format_rational_list([Fraction(1, 2), 1]) == "1/2,1/1"
    with pytest.raises(DomainError):
        parse_rational_list("1,,2")


@given(st.fractions())
def test_format_then_parse_is_exact(value):
    assert parse_rational(format_rational(value)) == value
