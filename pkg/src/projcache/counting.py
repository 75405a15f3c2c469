"""Exact counting over F_q: Gaussian binomials and independent-set counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from .errors import ArgumentError


def _check_q(q):
    if not isinstance(q, int) or q < 2:
        raise ArgumentError(f"q must be an integer >= 2, got {q!r}")


def gaussian_binomial(k, m, q):
    """Number of m-dim subspaces of F_q^k."""
    _check_q(q)
    if k < 0 or m < 0 or m > k:
        raise ArgumentError(f"need 0 <= m <= k, got k={k}, m={m}")
    num = den = 1
    for i in range(m):
        num *= q ** (k - i) - 1
        den *= q ** (m - i) - 1
    return num // den


def theta(k, q):
    """Number of 1-dim subspaces of F_q^k.  theta(0) = 0 is allowed as a convenience."""
    _check_q(q)
    if k < 0:
        raise ArgumentError(f"k must be >= 0, got {k}")
    return (q ** k - 1) // (q - 1)


def count_independent_sets(k, a, b, q):
    """Unordered b-sets of 1-dim subspaces independent of each other and of a fixed a-dim space.

    Equals (1/b!) * prod_{i<b} (theta(k) - theta(a+i)).
    """
    _check_q(q)
    if a < 0 or b < 0 or a + b > k or a + b < 1:
        raise ArgumentError(f"need 1 <= a+b <= k with a,b >= 0, got k={k}, a={a}, b={b}")
    num = 1
    for i in range(b):
        num *= theta(k, q) - theta(a + i, q)
    return num // factorial(b)


def count_independent_subspace_sets(k, a, b, l, q):
    """Unordered b-sets of l-dim subspaces whose sum, together with a fixed a-dim space, is direct.

    The i-th member is picked among l-dim subspaces meeting an (a+il)-dim space
    trivially, of which there are q^{(a+il)l} [k-a-il, l].
    """
    _check_q(q)
    if min(a, b, l) < 0 or l < 1 or a + b * l > k:
        raise ArgumentError(f"need a + b*l <= k, got k={k}, a={a}, b={b}, l={l}")
    num = 1
    for i in range(b):
        s = a + i * l
        num *= q ** (s * l) * gaussian_binomial(k - s, l, q)
    return num // factorial(b)


@dataclass(frozen=True)
class GaussianBounds:
    """Envelopes around [a b], [a b]/[f b] and [a b]/[a f].

    The two ratio envelopes are only valid on part of the parameter range:
    the first needs b <= f <= a, the second needs f <= b <= a.  Outside that
    range the corresponding fields are None.
    """

    lower: int
    value: int
    upper: int
    ratio_f_lower: Optional[Fraction]
    ratio_f: Optional[Fraction]
    ratio_f_upper: Optional[Fraction]
    ratio_af_lower: Optional[Fraction]
    ratio_af: Optional[Fraction]
    ratio_af_upper: Optional[Fraction]

    def holds(self):
        ok = self.lower <= self.value <= self.upper
        if self.ratio_f is not None:
            ok = ok and self.ratio_f_lower <= self.ratio_f <= self.ratio_f_upper
        if self.ratio_af is not None:
            ok = ok and self.ratio_af_lower <= self.ratio_af <= self.ratio_af_upper
        return ok


def _qpow(q, e):
    return Fraction(q) ** e


def gb_bounds(a, b, f, q):
    _check_q(q)
    if min(a, b, f) < 0:
        raise ArgumentError(f"a, b, f must be non-negative, got {(a, b, f)}")
    if b > a:
        raise ArgumentError(f"need b <= a, got a={a}, b={b}")
    value = gaussian_binomial(a, b, q)
    lower = q ** ((a - b) * b)
    upper = q ** ((a - b + 1) * b)
    r1 = r1_lo = r1_hi = None
    if b <= f <= a:
        r1 = Fraction(value, gaussian_binomial(f, b, q))
        r1_lo = _qpow(q, (a - f - 1) * b)
        r1_hi = _qpow(q, (a - f + 1) * b)
    r2 = r2_lo = r2_hi = None
    if f <= b:
        delta = max(b, f) - min(b, f)
        r2 = Fraction(value, gaussian_binomial(a, f, q))
        r2_lo = _qpow(q, (a - f - b - 1) * delta)
        r2_hi = _qpow(q, (a - f - b + 1) * delta)
    return GaussianBounds(lower, value, upper, r1_lo, r1, r1_hi, r2_lo, r2, r2_hi)
