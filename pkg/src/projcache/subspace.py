"""Subspaces of F_q^k in canonical reduced row-echelon form."""
from __future__ import annotations

from functools import cached_property
from itertools import combinations, product

import numpy as np

from .counting import gaussian_binomial
from .errors import ArgumentError, CapExceededError
from .field import GF, FiniteField

DEFAULT_CAP = 2_000_000

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def as_field(field):
    return field if isinstance(field, FiniteField) else GF(field)


def rref(field, rows, ncols=None):
    """Reduced row-echelon form with unit pivots; zero rows are dropped."""
    M = np.array(rows, dtype=np.int64)
    if M.size == 0:
        return np.zeros((0, ncols if ncols is not None else (M.shape[1] if M.ndim == 2 else 0)), dtype=np.int64)
    M = M.reshape(-1, M.shape[-1]).copy()
    nrows, ncols = M.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        lead = int(M[r, c])
        if lead != 1:
            M[r] = field.mul(M[r], field.inv(lead))
        for i in np.flatnonzero(M[:, c]):
            if i != r:
                M[i] = field.sub(M[i], field.mul(M[r], int(M[i, c])))
        r += 1
    return M[:r]


def rank(field, rows):
    return rref(field, rows).shape[0]


class Subspace:
    """A subspace of F_q^k held by its canonical RREF basis.

    Two instances compare equal iff they denote the same set of vectors.
    """

    __slots__ = ("field", "ambient_dim", "basis", "__dict__")

    def __init__(self, field, ambient_dim, basis, _canonical=False):
        field = as_field(field)
        self.field = field
        self.ambient_dim = int(ambient_dim)
        if _canonical:
            self.basis = tuple(tuple(int(x) for x in row) for row in basis)
        else:
            rows = np.array(basis, dtype=np.int64).reshape(-1, self.ambient_dim) if len(basis) else np.zeros((0, self.ambient_dim), dtype=np.int64)
            if rows.size and (rows.min() < 0 or rows.max() >= field.q):
                raise ArgumentError("basis entries must be field labels 0..q-1")
            self.basis = tuple(tuple(int(x) for x in row) for row in rref(field, rows, self.ambient_dim))

    @classmethod
    def span(cls, field, ambient_dim, vectors):
        return cls(field, ambient_dim, list(vectors))

    @classmethod
    def zero(cls, field, ambient_dim):
        return cls(field, ambient_dim, (), _canonical=True)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def q(self):
        return self.field.q

    @cached_property
    def matrix(self):
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.ambient_dim)

    @cached_property
    def points(self):
        """Sorted array of encoded vectors (base-q integers) in the subspace."""
        return _span_points(self.field, self.matrix, self.ambient_dim)

    @cached_property
    def mask(self):
        """Bitmask over encoded vectors; bit 0 (the zero vector) is always set."""
        return _mask(self.points)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.q == other.q and self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.q, self.ambient_dim, self.basis))

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    @property
    def sort_key(self):
        return tuple(x for row in self.basis for x in row)

    def __contains__(self, other):
        return contains(self, other)

    def __add__(self, other):
        return subspace_sum(self, other)

    def label(self, prefix=""):
        return f"{prefix}[{basis_string(self)}]"

    def __repr__(self):
        return f"Subspace(q={self.q}, k={self.ambient_dim}, [{basis_string(self)}])"


def basis_string(s):
    if s.q <= len(_DIGITS):
        rows = ["".join(_DIGITS[x] for x in row) for row in s.basis]
    else:
        rows = [".".join(str(x) for x in row) for row in s.basis]
    return "|".join(rows)


def encode(vectors, q, k):
    weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return np.asarray(vectors, dtype=np.int64) @ weights


def decode(code, q, k):
    out = []
    for _ in range(k):
        out.append(code % q)
        code //= q
    return tuple(reversed(out))


def _span_points(field, B, k):
    pts = np.zeros((1, k), dtype=np.int64)
    scalars = np.arange(field.q, dtype=np.int64)
    for row in B:
        multiples = field.mul(scalars[:, None], row[None, :])
        pts = field.add(pts[None, :, :], multiples[:, None, :]).reshape(-1, k)
    return np.sort(encode(pts, field.q, k))


def _mask(points):
    m = 0
    for x in points.tolist():
        m |= 1 << x
    return m


def _check_same_space(a, b):
    if a.q != b.q or a.ambient_dim != b.ambient_dim:
        raise ArgumentError(f"subspaces live in different spaces: GF({a.q})^{a.ambient_dim} vs GF({b.q})^{b.ambient_dim}")


def subspace_sum(*spaces):
    """Smallest subspace containing all arguments."""
    if not spaces:
        raise ArgumentError("need at least one subspace")
    first = spaces[0]
    for s in spaces[1:]:
        _check_same_space(first, s)
    rows = [row for s in spaces for row in s.basis]
    if not rows:
        return Subspace.zero(first.field, first.ambient_dim)
    return Subspace(first.field, first.ambient_dim, rows)


def contains(outer, inner):
    """True iff inner is a subspace of outer."""
    _check_same_space(outer, inner)
    if inner.dim == 0:
        return True
    if inner.dim > outer.dim:
        return False
    return rank(outer.field, list(outer.basis) + list(inner.basis)) == outer.dim


def intersection_dim(a, b):
    _check_same_space(a, b)
    if a.dim == 0 or b.dim == 0:
        return 0
    return a.dim + b.dim - rank(a.field, list(a.basis) + list(b.basis))


def is_direct_sum(a, b):
    return intersection_dim(a, b) == 0


def enumerate_subspaces(k, d, field, cap=DEFAULT_CAP):
    """All d-dim subspaces of F_q^k, ordered by their flattened RREF basis."""
    field = as_field(field)
    if not (0 <= d <= k):
        raise ArgumentError(f"need 0 <= d <= k, got d={d}, k={k}")
    count = gaussian_binomial(k, d, field.q)
    if cap is not None and count > cap:
        raise CapExceededError(f"{d}-dim subspaces of GF({field.q})^{k}", count, cap)
    if d == 0:
        return [Subspace.zero(field, k)]
    q = field.q
    mats = []
    for pivots in combinations(range(k), d):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, k) if j not in pivots]
        base = np.zeros((d, k), dtype=np.int64)
        base[np.arange(d), list(pivots)] = 1
        if not free:
            mats.append(base[None])
            continue
        vals = np.array(list(product(range(q), repeat=len(free))), dtype=np.int64)
        block = np.repeat(base[None], len(vals), axis=0)
        rows_idx = np.array([i for i, _ in free])
        cols_idx = np.array([j for _, j in free])
        block[:, rows_idx, cols_idx] = vals
        mats.append(block)
    allm = np.concatenate(mats).reshape(-1, d * k)
    order = np.lexsort(allm.T[::-1])
    out = [Subspace(field, k, allm[i].reshape(d, k), _canonical=True) for i in order]
    assert len(out) == count
    return out


def combine(field, coeffs, basis):
    """Rows of coeffs @ basis computed in the field."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    basis = np.asarray(basis, dtype=np.int64)
    if field.e == 1:
        return (coeffs @ basis) % field.p
    out = np.zeros((coeffs.shape[0], basis.shape[1]), dtype=np.int64)
    for j in range(basis.shape[0]):
        out = field.add(out, field.mul(coeffs[:, j][:, None], basis[j][None, :]))
    return out


def subspaces_of(x, d, cap=DEFAULT_CAP):
    """All d-dim subspaces contained in x, sorted canonically."""
    if not (0 <= d <= x.dim):
        raise ArgumentError(f"need 0 <= d <= dim(x) = {x.dim}, got {d}")
    local = enumerate_subspaces(x.dim, d, x.field, cap=cap)
    out = [Subspace(x.field, x.ambient_dim, combine(x.field, s.matrix, x.matrix)) for s in local]
    out.sort()
    return out
