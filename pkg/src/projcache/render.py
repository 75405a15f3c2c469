"""Presentation helpers for exact rationals."""
from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction


def to_decimal(x, places=4):
    """Round an exact rational half-even to the given number of places."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)


def fmt_decimal(x, places=4):
    return str(to_decimal(x, places))


def fmt_rational(x, places=4):
    """`p/q (≈x.xxxx)` for non-integers, the bare integer otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator} (≈{fmt_decimal(x, places)})"


def parse_rational(text):
    """Accept `p/q`, integers and decimal strings."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
