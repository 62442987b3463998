from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathauction import FormatError, format_cost, parse_cost


def test_parse_integer_and_fraction():
    assert parse_cost("7") == Fraction(7)
    assert parse_cost("3/2") == Fraction(3, 2)
    assert parse_cost("-5") == Fraction(-5)
    assert parse_cost("0") == Fraction(0)


@pytest.mark.parametrize(
    "bad",
    ["1/0", "2/4", "1.5", "", " 3", "3 ", "+3", "03", "1/-2", "-1/-2", "a", "1/", "0/3"],
)
def test_parse_rejects_malformed(bad):
    with pytest.raises(FormatError):
        parse_cost(bad)


def test_parse_rejects_non_strings():
    with pytest.raises(FormatError):
        parse_cost(3)  # type: ignore[arg-type]


def test_format_is_canonical():
    assert format_cost(Fraction(3, 2)) == "3/2"
    assert format_cost(Fraction(4, 2)) == "2"
    assert format_cost(Fraction(-7, 2)) == "-7/2"
    assert format_cost(Fraction(0)) == "0"


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
def test_round_trip(num, den):
    value = Fraction(num, den)
    assert parse_cost(format_cost(value)) == value
