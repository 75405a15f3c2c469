import json

import pytest

from projcache.errors import (IrregularGraphError, NotAMatchingError, NotInducedError, PartitionError,
                              SizeMismatchError)
from projcache.graph import (CachingGraph, MatchingCover, SchemeReport, check_matching, dumps, loads, toy_cover,
                             toy_graph, uncoded_cover, verify_biregular, verify_cover, verify_left_regular)
from projcache.scheme_a import build_scheme_a
from projcache.scheme_b import build_scheme_b, right_degree, scheme_b_params


def test_toy_graph_left_regular_not_right_regular():
    g = toy_graph()
    assert (g.K, g.F) == (4, 5)
    assert verify_left_regular(g) == 3
    assert g.subfile_degrees()[0] == 1
    with pytest.raises(IrregularGraphError):
        verify_biregular(g)


def test_complete_bipartite():
    g = CachingGraph(range(3), range(4), [(u, f) for u in range(3) for f in range(4)])
    assert verify_biregular(g) == (4, 3)


def test_irregular_names_users():
    g = CachingGraph(["a", "b"], ["x", "y"], [(0, 0), (0, 1), (1, 0)])
    with pytest.raises(IrregularGraphError, match="a.*b"):
        verify_left_regular(g)


def test_toy_cover():
    rep = verify_cover(toy_graph(), toy_cover())
    assert (rep.S, rep.g) == (6, 2)
    assert rep.rate == pytest.approx(6 / 5)
    assert str(rep.rate) == "6/5"


def test_uncoded_cover_always_valid():
    g = toy_graph()
    rep = verify_cover(g, uncoded_cover(g))
    assert rep.g == 1 and rep.S == len(g.edges)


def test_cover_errors():
    g = toy_graph()
    cls = [list(m) for m in toy_cover()]
    # user 0 misses subfiles 0 and 1, so pairing those two edges is not a matching
    with pytest.raises(NotAMatchingError):
        check_matching(g, [(0, 0), (0, 1)])
    # users 0 and 1 both miss subfile 1: {(0,0),(1,1)} has cross edge (0,1)
    with pytest.raises(NotInducedError) as info:
        check_matching(g, [(0, 0), (1, 1)])
    assert info.value.cross_edge in [(0, 1), (1, 0)]
    with pytest.raises(PartitionError):
        check_matching(g, [(0, 4)])
    with pytest.raises(PartitionError):
        verify_cover(g, MatchingCover(cls[:-1]))
    with pytest.raises(PartitionError):
        verify_cover(g, MatchingCover(cls + [cls[0]]))
    bad = cls[:-1] + [[cls[-1][0]], [cls[-1][1]]]
    with pytest.raises(SizeMismatchError):
        verify_cover(g, MatchingCover(bad))


def test_json_round_trip():
    g, cover = toy_graph(), toy_cover()
    text = dumps(g, cover)
    obj = json.loads(text)
    assert set(obj) == {"users", "subfiles", "missed_edges", "cover"}
    g2, c2 = loads(text)
    assert g2.edges == g.edges
    assert verify_cover(g2, c2) == verify_cover(g, cover)


def test_report_invariant():
    with pytest.raises(ValueError):
        SchemeReport.from_counts(7, 7, 3, 7, 2)
    r = SchemeReport.from_counts(7, 7, 3, 7, 3)
    r.check()
    assert r.line() == "K=7 F=7 M/N=4/7 (≈0.5714) R=1 gain=3"


@pytest.mark.parametrize("args,expected", [
    ((3, 1, 1, 2), (3, 3)),        # right degree [m+t, t] = [2, 1] = 3
    ((4, 1, 1, 2), (7, 3)),
])
def test_biregular_scheme_a(args, expected):
    g, _ = build_scheme_a(*args)
    assert verify_biregular(g) == expected


@pytest.mark.parametrize("args", [(3, 1, 2, 1, 2), (4, 2, 1, 1, 2), (4, 1, 2, 1, 2), (4, 1, 1, 2, 2)])
def test_biregular_scheme_b(args):
    g, _ = build_scheme_b(*args)
    rep = scheme_b_params(*args)
    D, right = verify_biregular(g)
    assert D == rep.D
    assert right == right_degree(*args)
    assert right * g.F == D * g.K


def test_scheme_b_4_2_1_right_degree():
    # q^{nm} / n! * q^{n(n-1)/2} * [k-m, 1][k-m-1, 1] = 4/2 * 2 * 7 * 3 = 84
    assert right_degree(4, 2, 1, 1, 2) == 84
