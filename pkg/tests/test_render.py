from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from projcache.render import fmt_decimal, fmt_rational, parse_rational, to_decimal


def test_half_even():
    assert fmt_decimal(Fraction(1, 8), 2) == "0.12"
    assert fmt_decimal(Fraction(3, 8), 2) == "0.38"
    assert fmt_decimal(Fraction(4, 7)) == "0.5714"


def test_rational():
    assert fmt_rational(Fraction(4, 7)) == "4/7 (≈0.5714)"
    assert fmt_rational(Fraction(3)) == "3"


@pytest.mark.parametrize("text,value", [("9/21", Fraction(3, 7)), ("0.2", Fraction(1, 5)), ("1", Fraction(1))])
def test_parse(text, value):
    assert parse_rational(text) == value


@given(st.fractions(min_value=-1000, max_value=1000))
def test_decimal_close(x):
    assert abs(Fraction(to_decimal(x)) - x) <= Fraction(1, 20000)
