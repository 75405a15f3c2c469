import json
from fractions import Fraction

import numpy as np
import pytest
import xxhash

from projcache.delivery import (FileLibrary, UserCache, decode_all, decode_user, deliver, make_demands, measure,
                                place_caches, simulate)
from projcache.errors import ArgumentError, DecodeError
from projcache.graph import CachingGraph, MatchingCover, toy_cover, toy_graph, uncoded_cover
from projcache.scheme_a import build_scheme_a
from projcache.scheme_b import build_scheme_b

import small_instances as si


def _listed_point_user_cover():
    s = build_scheme_a(3, 1, 1, 2, return_scheme=True)
    uid = {i: s.users.index(si.point(i)) for i in si.POINTS}
    fid = {j: s.subfiles.index(si.plane(j)) for j in si.PLANES}
    cover = MatchingCover([[(uid[u], fid[f]) for u, f in t] for t in si.POINT_USER_TRANSMISSIONS])
    return s, uid, cover


def test_listed_delivery_decodes_and_v1_uses_2_3_4():
    s, uid, cover = _listed_point_user_cover()
    lib = FileLibrary(7, 7, 32, rng_seed=1)
    demands = make_demands("worst-case", 7, 7, seed=0)
    tr = deliver(s.graph, cover, lib, demands)
    rep = decode_all(s.graph, cover, lib, demands, tr)
    assert rep.all_ok and tr.S == 7
    assert all(len(t.participants) == 3 for t in tr.transmissions)
    assert rep.users[uid[1]].consumed == [2, 3, 4]
    assert measure(tr, lib, 7, Fraction(4, 7)) == (1, 3)


def test_caches():
    s, uid, _ = _listed_point_user_cover()
    lib = FileLibrary(3, 7, 4)
    caches = place_caches(s.graph, lib)
    fid = {j: s.subfiles.index(si.plane(j)) for j in si.PLANES}
    assert set(caches[uid[1]].indices.tolist()) == {fid[j] for j in si.POINT_USER_CACHED[1]}
    with pytest.raises(DecodeError):
        caches[uid[1]].read(0, [fid[1]])


def test_empty_edge_set_caches_everything():
    g = CachingGraph([0, 1], [0, 1, 2], [])
    lib = FileLibrary(2, 3, 4)
    assert all(c.cached_mask.all() for c in place_caches(g, lib))


def test_single_user_singleton_cover_sends_in_clear():
    g = CachingGraph([0], [0, 1, 2], [(0, 0), (0, 2)])
    lib = FileLibrary(2, 3, 8, rng_seed=5)
    tr = deliver(g, uncoded_cover(g), lib, [1])
    assert (tr.transmissions[0].payload == lib.content[1, 0]).all()
    assert (tr.transmissions[1].payload == lib.content[1, 2]).all()


def test_toy_graph_delivery():
    g, cover = toy_graph(), toy_cover()
    tr, rep, lib, d = simulate(g, cover, n_files=4, seed=3)
    assert tr.S == 6 and rep.all_ok
    assert measure(tr, lib, 4, Fraction(2, 5)) == (Fraction(6, 5), 2)


def test_uncoded_rate():
    g = toy_graph()
    tr, rep, lib, _ = simulate(g, uncoded_cover(g), n_files=4)
    assert measure(tr, lib, 4, Fraction(2, 5)) == (Fraction(12, 5), 1)


def test_scheme_b_3_1_2():
    g, cover = build_scheme_b(3, 1, 2, 1, 2)
    tr, rep, lib, _ = simulate(g, cover, seed=7)
    assert rep.all_ok
    assert measure(tr, lib, 7, Fraction(9, 21)) == (Fraction(28, 21), 3)


def test_same_demand_decodes():
    g, cover = build_scheme_b(3, 1, 2, 1, 2)
    tr, rep, _, _ = simulate(g, cover, mode="constant:0")
    assert rep.all_ok and tr.S == 28


def test_hundred_random_demands():
    g, cover = build_scheme_b(4, 2, 1, 1, 2)
    lib = FileLibrary(20, g.F, 16, rng_seed=0)
    caches = place_caches(g, lib)
    for seed in range(100):
        d = make_demands("random", g.K, 20, seed)
        tr = deliver(g, cover, lib, d)
        assert decode_all(g, cover, lib, d, tr, caches).all_ok


def test_tampered_payload_is_caught():
    g, cover = build_scheme_b(3, 1, 2, 1, 2)
    lib = FileLibrary(7, g.F, 16)
    d = make_demands("worst-case", 7, 7)
    tr = deliver(g, cover, lib, d)
    tr.transmissions[5].payload = tr.transmissions[5].payload.copy()
    tr.transmissions[5].payload[0] ^= 1
    with pytest.raises(DecodeError):
        decode_all(g, cover, lib, d, tr)


def test_missing_transmission_is_caught():
    g, cover = build_scheme_b(3, 1, 2, 1, 2)
    lib = FileLibrary(7, g.F, 16)
    d = make_demands("worst-case", 7, 7)
    tr = deliver(g, cover, lib, d)
    del tr.transmissions[0]
    with pytest.raises(DecodeError):
        decode_all(g, cover, lib, d, tr)


def test_transcript_format():
    g, cover = toy_graph(), toy_cover()
    lib = FileLibrary(4, 5, 8)
    tr = deliver(g, cover, lib, [0, 1, 2, 3])
    lines = tr.to_jsonl(dump_payloads=True).splitlines()
    assert len(lines) == 6
    rec = json.loads(lines[0])
    assert rec["m"] == 1 and len(rec["participants"]) == 2
    payload = bytes.fromhex(rec["payload"])
    assert rec["payload_xxh3"] == xxhash.xxh3_64_hexdigest(payload)
    assert "payload" not in json.loads(tr.to_jsonl().splitlines()[0])
    assert tr.bits_sent == 6 * 8 * 8


def test_demand_modes():
    assert sorted(make_demands("worst-case", 5, 5, 1).tolist()) == list(range(5))
    assert make_demands("constant:2", 3, 4).tolist() == [2, 2, 2]
    r = make_demands("random", 50, 3, 0)
    assert r.min() >= 0 and r.max() < 3
    with pytest.raises(ArgumentError):
        make_demands("worst-case", 5, 4)
    with pytest.raises(ArgumentError):
        make_demands("bogus", 5, 4)


def test_determinism():
    g, cover = build_scheme_b(3, 1, 2, 1, 2)
    a = simulate(g, cover, seed=11)[0].to_jsonl(True)
    b = simulate(g, cover, seed=11)[0].to_jsonl(True)
    assert a == b
