import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from projcache.counting import gaussian_binomial
from projcache.errors import ArgumentError, CapExceededError
from projcache.field import GF
from projcache.subspace import (Subspace, contains, enumerate_subspaces, intersection_dim, is_direct_sum, rank,
                                rref, subspace_sum, subspaces_of)


def brute_subspaces(k, d, q):
    """Point sets of all d-dim subspaces of F_q^k (q prime), from spans of every d-tuple of vectors."""
    vecs = list(itertools.product(range(q), repeat=k))
    found = set()
    for tup in itertools.combinations(vecs, d):
        pts = set()
        for coeffs in itertools.product(range(q), repeat=d):
            pts.add(tuple(sum(c * v[i] for c, v in zip(coeffs, tup)) % q for i in range(k)))
        if len(pts) == q ** d:
            found.add(frozenset(pts))
    return found


def point_set(s):
    F = s.field
    pts = set()
    for coeffs in itertools.product(range(F.q), repeat=s.dim):
        v = [0] * s.ambient_dim
        for c, row in zip(coeffs, s.basis):
            v = [F.add(a, F.mul(c, b)) for a, b in zip(v, row)]
        pts.add(tuple(v))
    return frozenset(pts)


@pytest.mark.parametrize("k,d,q", [(3, 1, 2), (3, 2, 2), (4, 2, 2), (4, 1, 3), (3, 2, 3), (4, 3, 2), (2, 1, 5)])
def test_enumeration_matches_brute_force(k, d, q):
    ours = enumerate_subspaces(k, d, q)
    assert len(ours) == gaussian_binomial(k, d, q)
    assert {point_set(s) for s in ours} == brute_subspaces(k, d, q)


@pytest.mark.parametrize("k,d,q", [(3, 1, 4), (3, 2, 4), (4, 2, 4), (2, 1, 9)])
def test_enumeration_count_extension_fields(k, d, q):
    ours = enumerate_subspaces(k, d, q)
    assert len(ours) == gaussian_binomial(k, d, q)
    assert len({point_set(s) for s in ours}) == len(ours)
    assert all(len(point_set(s)) == q ** d for s in ours)


def test_enumeration_is_sorted_and_canonical():
    subs = enumerate_subspaces(4, 2, 2)
    assert subs == sorted(subs)
    for s in subs:
        assert Subspace(GF(2), 4, list(s.basis)[::-1]) == s


def test_cap():
    with pytest.raises(CapExceededError):
        enumerate_subspaces(6, 3, 2, cap=100)


def test_bad_dimension():
    with pytest.raises(ArgumentError):
        enumerate_subspaces(3, 4, 2)


def test_rref_and_rank():
    F = GF(3)
    M = rref(F, [[1, 2, 0], [2, 1, 0], [0, 0, 2]])
    assert M.tolist() == [[1, 2, 0], [0, 0, 1]]
    assert rank(F, [[1, 1, 1], [2, 2, 2]]) == 1


def test_example_containment():
    F = GF(2)
    x1 = Subspace.span(F, 3, [(0, 0, 1), (0, 1, 0)])
    v1 = Subspace.span(F, 3, [(0, 0, 1)])
    x3 = Subspace.span(F, 3, [(0, 1, 0), (1, 0, 0)])
    assert contains(x1, v1)
    assert not contains(x3, v1)


def test_label_and_mask():
    F = GF(2)
    s = Subspace.span(F, 3, [(0, 1, 1), (0, 0, 1)])
    assert s.label("X") == "X[010|001]"
    # points 000, 001, 010, 011 -> codes 0..3, mask bit 0 always set
    assert s.mask == 0b1111


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(2, 4), st.data())
def test_dimension_formula(q, k, data):
    F = GF(q)
    def rand_space():
        n = data.draw(st.integers(1, k))
        rows = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=k, max_size=k), min_size=n, max_size=n))
        return Subspace(F, k, rows)
    a, b = rand_space(), rand_space()
    s = subspace_sum(a, b)
    inter = point_set(a) & point_set(b)
    # dim(a + b) = dim a + dim b - dim(a meet b), with the meet measured on point sets
    meet_dim = round(np.log(len(inter)) / np.log(q))
    assert intersection_dim(a, b) == meet_dim
    assert s.dim == a.dim + b.dim - meet_dim
    assert contains(s, a) and contains(s, b)
    assert is_direct_sum(a, b) == (len(inter) == 1)
    assert (a.mask & b.mask == 1) == (len(inter) == 1)


def test_subspaces_of():
    x = Subspace.span(GF(2), 4, [(1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)])
    inside = subspaces_of(x, 2)
    assert len(inside) == gaussian_binomial(3, 2, 2)
    assert all(contains(x, s) for s in inside)
    assert len(set(inside)) == len(inside)
