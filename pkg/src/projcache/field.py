"""Arithmetic in GF(q) for prime powers q <= 2**16.

Elements are the integers 0..q-1.  For an extension field GF(p^e) the label
of an element is the base-p encoding of its polynomial coefficients,
sum(c_i * p**i), reduced modulo a fixed monic irreducible polynomial.

All arithmetic methods accept python ints or numpy integer arrays and work
elementwise.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import ArgumentError

MAX_ORDER = 2 ** 16


def prime_power(q):
    """Return (p, e) with q = p**e, or raise ArgumentError."""
    if not isinstance(q, (int, np.integer)) or q < 2:
        raise ArgumentError(f"field order must be an integer >= 2, got {q!r}")
    q = int(q)
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ArgumentError(f"{q} is not a prime power")
    return p, e


def is_prime_power(q):
    try:
        prime_power(q)
    except ArgumentError:
        return False
    return True


def _poly_mod(a, m, p):
    """Remainder of a modulo monic m, coefficient lists low -> high."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(degree, p):
    for low in product(range(p), repeat=degree):
        # low is high -> low order among the non-leading coefficients
        yield list(reversed(low)) + [1]


def is_irreducible(poly, p):
    """Exhaustive factor check: no monic divisor of degree 1..deg//2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(poly, f, p):
                return False
    return True


def smallest_irreducible(p, e):
    """Lexicographically smallest monic irreducible of degree e over F_p.

    Coefficients are compared from x^(e-1) down to x^0.
    """
    for poly in _monic_polys(e, p):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("an irreducible polynomial of every degree exists")


class FiniteField:
    """GF(q).  Use :func:`GF` to get a shared instance."""

    def __init__(self, q):
        p, e = prime_power(q)
        if q > MAX_ORDER:
            raise ArgumentError(f"field order {q} above supported maximum {MAX_ORDER}")
        self.p, self.e, self.q = p, e, q
        self.modulus = smallest_irreducible(p, e) if e > 1 else ()
        self._pw = p ** np.arange(e, dtype=np.int64)
        self._digits = (np.arange(q, dtype=np.int64)[:, None] // self._pw) % p
        if e > 1:
            self._build_log_tables()

    # -- construction helpers -------------------------------------------------
    def _mul_slow(self, a, b):
        da = [int(x) for x in self._digits[a]]
        db = [int(x) for x in self._digits[b]]
        prod_ = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod_[i + j] = (prod_[i + j] + x * y) % self.p
        r = _poly_mod(prod_, self.modulus, self.p)
        return sum(c * self.p ** i for i, c in enumerate(r))

    def _build_log_tables(self):
        q = self.q
        n = q - 1
        for g in range(2, q):
            exp = [1]
            x = 1
            for _ in range(n - 1):
                x = self._mul_slow(x, g)
                exp.append(x)
            if len(set(exp)) == n:
                break
        else:  # pragma: no cover - multiplicative group is cyclic
            raise AssertionError("no primitive element found")
        self._exp = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(exp, dtype=np.int64)] = np.arange(n, dtype=np.int64)
        self._log = log

    # -- arithmetic -----------------------------------------------------------
    def add(self, a, b):
        if self.e == 1:
            return (np.asarray(a) + b) % self.p if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b) if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else a ^ b
        r = ((self._digits[a] + self._digits[b]) % self.p) @ self._pw
        return r if np.ndim(r) else int(r)

    def neg(self, a):
        if self.e == 1:
            return (-np.asarray(a)) % self.p if isinstance(a, np.ndarray) else (-a) % self.p
        if self.p == 2:
            return a
        r = ((-self._digits[a]) % self.p) @ self._pw
        return r if np.ndim(r) else int(r)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (np.asarray(a) * b) % self.p if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else (a * b) % self.p
        a_arr, b_arr = np.asarray(a), np.asarray(b)
        r = np.where((a_arr == 0) | (b_arr == 0), 0, self._exp[self._log[a_arr] + self._log[b_arr]])
        return r if np.ndim(r) else int(r)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("0 has no inverse in a field")
        if self.e == 1:
            if isinstance(a, np.ndarray):
                return np.array([pow(int(x), -1, self.p) for x in a.ravel()]).reshape(a.shape)
            return pow(int(a), -1, self.p)
        r = self._exp[(self.q - 1 - self._log[np.asarray(a)]) % (self.q - 1)]
        return r if np.ndim(r) else int(r)

    def elements(self):
        return range(self.q)

    # -- identity -------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def GF(q):
    return FiniteField(q)
