from fractions import Fraction

import pytest

from projcache.counting import count_independent_subspace_sets
from projcache.errors import ArgumentError
from projcache.graph import verify_biregular, verify_cover
from projcache.scheme_b import (SchemeBParams, algorithm1_transcript, build_scheme_b, plan, plan_csv,
                                scheme_b_params, scheme_b_params_general, scheme_b_params_l1, scheme_c_params)
from projcache.subspace import rank

import small_instances as si


def test_3_1_2():
    r = scheme_b_params(3, 1, 2, 1, 2)
    assert (r.K, r.F, r.cache_fraction, r.rate, r.gain, r.S) == (7, 21, Fraction(9, 21), Fraction(28, 21), 3, 28)


@pytest.mark.parametrize("args,K,F,mn,gain", [
    ((4, 2, 1, 1, 2), 105, 15, Fraction(1, 5), 3),
    ((5, 2, 2, 1, 2), 465, 465, Fraction(43, 155), 6),
    ((7, 2, 4, 1, 2), 8001, 9921240, Fraction(125, 381), 15),
    ((7, 2, 2, 1, 2), 8001, 8001, Fraction(187, 2667), 6),
    ((4, 1, 2, 1, 3), 40, 780, Fraction(1, 10), 3),
])
def test_closed_forms(args, K, F, mn, gain):
    r = scheme_b_params(*args)
    assert (r.K, r.F, r.cache_fraction, r.gain) == (K, F, mn, gain)


def test_4_1_1():
    r = scheme_b_params(4, 1, 1, 1, 2)
    assert (r.K, r.F, r.D, r.S, r.g) == (15, 15, 14, 105, 2)


def test_scheme_b_420_transmissions():
    assert scheme_b_params(4, 2, 1, 1, 2).S == 420


@pytest.mark.parametrize("k,n,m,q", [(4, 2, 1, 2), (5, 2, 2, 2), (6, 3, 2, 3), (7, 2, 4, 2)])
def test_general_form_reduces_to_l1(k, n, m, q):
    assert scheme_b_params_general(k, n, m, 1, q) == scheme_b_params_l1(k, n, m, q)


@pytest.mark.parametrize("args", [(4, 1, 1, 2, 2), (5, 1, 1, 2, 2), (4, 1, 1, 2, 3), (6, 1, 2, 2, 2)])
def test_general_l_counts(args):
    k, n, m, l, q = args
    r = scheme_b_params(*args)
    assert r.K == count_independent_subspace_sets(k, 0, n, l, q)
    assert r.F == count_independent_subspace_sets(k, 0, m, l, q)
    assert r.D == count_independent_subspace_sets(k, n * l, m, l, q)
    assert r.S == count_independent_subspace_sets(k, 0, n + m, l, q)


@pytest.mark.parametrize("args", [(4, 1, 1, 2, 2), (5, 1, 1, 2, 2), (4, 1, 1, 2, 3)])
def test_general_l_built(args):
    g, cover = build_scheme_b(*args)
    assert verify_cover(g, cover) == scheme_b_params(*args)


def test_invalid():
    for args in [(3, 2, 2, 1, 2), (4, 0, 1, 1, 2), (4, 1, 1, 3, 2), (4, 1, 1, 1, 10)]:
        with pytest.raises(ArgumentError):
            SchemeBParams(*args)


def _gen_index(s):
    return {i: s.gens.index(si.point(i)) for i in si.POINTS}


def test_hand_listed_caches():
    s = build_scheme_b(3, 1, 2, 1, 2, return_scheme=True)
    gid = _gen_index(s)
    u1 = s.user_index([gid[1]])
    cached = {frozenset(s.subfiles[f]) for f in s.graph.cached(u1)}
    assert cached == {frozenset(gid[i] for i in pair) for pair in si.T1_CACHED}
    # dependent triples are exactly the collinear ones
    collinear = {frozenset(gid[i] for i in t) for t in si.COLLINEAR}
    import itertools

    all_triples = {frozenset(c) for c in itertools.combinations(range(7), 3)}
    assert {frozenset(z) for z in s.zsets} == all_triples - collinear


def test_dependent_sum_has_dim_2():
    from projcache.subspace import subspace_sum

    assert subspace_sum(si.point(1), si.point(2), si.point(6)).dim == 2


def test_transcript():
    s = build_scheme_b(3, 1, 2, 1, 2, return_scheme=True)
    gid = _gen_index(s)
    demands = list(range(7))
    tr = algorithm1_transcript(None, demands, scheme=s)
    assert len(tr) == 28
    z = tuple(sorted(gid[i] for i in (1, 2, 3)))
    row = tr[s.zsets.index(z)]
    got = {(s.users[u][0], s.subfiles[f]) for u, _, f in row}
    expect = {(gid[a], tuple(sorted(gid[b] for b in (1, 2, 3) if b != a))) for a in (1, 2, 3)}
    assert got == expect
    for u, d, f in row:
        assert d == demands[u]
    with pytest.raises(ArgumentError):
        algorithm1_transcript(None, {0: 1}, scheme=s)


def test_biregular():
    g, _ = build_scheme_b(3, 1, 2, 1, 2)
    assert verify_biregular(g)[0] == 12


@pytest.mark.parametrize("q,lam", [(2, Fraction(1, 2)), (4, Fraction(1, 4)), (4, Fraction(1, 2)),
                                   (5, Fraction(1, 5)), (5, Fraction(2, 5))])
def test_scheme_c(q, lam):
    c = scheme_c_params(q, lam)
    assert c.all_hold()
    assert c.report.K == c.report.F


def test_scheme_c_small():
    c = scheme_c_params(2, Fraction(1, 2))
    assert (c.report.K, c.report.F, c.report.cache_fraction, c.report.gain) == (3, 3, Fraction(1, 3), 2)


def test_scheme_c_invalid():
    with pytest.raises(ArgumentError):
        scheme_c_params(3, Fraction(1, 2))
    with pytest.raises(ArgumentError):
        scheme_c_params(2, 1)


def test_plan():
    rows = plan(100, Fraction(1, 5), limit=5)
    assert rows[0].params.as_tuple() == (4, 2, 1, 1, 2)
    assert rows[0].K == 105
    assert plan_csv(rows).splitlines()[0].startswith("q,k,n,m,l")
