"""Bipartite caching graphs, induced matching covers and their verification.

An edge (u, f) means user u does NOT cache subfile f.  Each induced matching
of the graph becomes one coded XOR transmission.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ArgumentError,
    IrregularGraphError,
    NotAMatchingError,
    NotInducedError,
    PartitionError,
    SizeMismatchError,
)
from .render import fmt_rational


class CachingGraph:
    """Users x subfiles, with the set of missed (uncached) pairs as edges."""

    def __init__(self, users, subfiles, edges):
        self.users = tuple(users)
        self.subfiles = tuple(subfiles)
        if len(set(self.users)) != len(self.users):
            raise ArgumentError("duplicate user labels")
        if len(set(self.subfiles)) != len(self.subfiles):
            raise ArgumentError("duplicate subfile labels")
        K, F = len(self.users), len(self.subfiles)
        masks = [0] * K
        for u, f in edges:
            u, f = int(u), int(f)
            if not (0 <= u < K and 0 <= f < F):
                raise ArgumentError(f"edge {(u, f)} out of range for K={K}, F={F}")
            masks[u] |= 1 << f
        self._masks = tuple(masks)
        self.edges = tuple((u, f) for u in range(K) for f in _bits(masks[u]))

    @property
    def K(self):
        return len(self.users)

    @property
    def F(self):
        return len(self.subfiles)

    def has_edge(self, u, f):
        return (self._masks[u] >> f) & 1 == 1

    def missed_mask(self, u):
        """Bitmask of subfiles user u does not cache."""
        return self._masks[u]

    def neighbors(self, u):
        return _bits(self._masks[u])

    def cached(self, u):
        full = (1 << self.F) - 1
        return _bits(full & ~self._masks[u])

    def user_degrees(self):
        return [m.bit_count() for m in self._masks]

    def subfile_degrees(self):
        deg = [0] * self.F
        for _, f in self.edges:
            deg[f] += 1
        return deg

    def __len__(self):
        return len(self.edges)

    def __repr__(self):
        return f"CachingGraph(K={self.K}, F={self.F}, |E|={len(self.edges)})"


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class MatchingCover:
    """A sequence of matchings, each a tuple of (user, subfile) index pairs."""

    def __init__(self, matchings):
        self.matchings = tuple(tuple((int(u), int(f)) for u, f in m) for m in matchings)

    @property
    def S(self):
        return len(self.matchings)

    def __len__(self):
        return len(self.matchings)

    def __iter__(self):
        return iter(self.matchings)

    def __getitem__(self, i):
        return self.matchings[i]

    def __repr__(self):
        return f"MatchingCover(S={self.S})"


@dataclass(frozen=True)
class SchemeReport:
    K: int
    F: int
    D: int
    S: int
    g: int
    cache_fraction: Fraction
    rate: Fraction
    gain: int

    @classmethod
    def from_counts(cls, K, F, D, S, g):
        K, F, D, S, g = int(K), int(F), int(D), int(S), int(g)
        if S * g != K * D:
            raise ArgumentError(f"S*g = {S * g} differs from K*D = {K * D}")
        return cls(K, F, D, S, g, 1 - Fraction(D, F), Fraction(S, F), g)

    def check(self):
        assert self.rate == Fraction(self.S, self.F)
        assert self.cache_fraction == 1 - Fraction(self.D, self.F)
        assert self.gain * self.rate == self.K * (1 - self.cache_fraction)

    def line(self):
        return (
            f"K={self.K} F={self.F} M/N={fmt_rational(self.cache_fraction)} "
            f"R={fmt_rational(self.rate)} gain={self.gain}"
        )

    def as_dict(self):
        return {
            "K": self.K,
            "F": self.F,
            "D": self.D,
            "S": self.S,
            "g": self.g,
            "M/N": str(self.cache_fraction),
            "R": str(self.rate),
            "gain": self.gain,
        }


def verify_left_regular(g):
    if g.K == 0 or g.F == 0:
        raise ArgumentError("empty graph")
    deg = g.user_degrees()
    for u in range(1, g.K):
        if deg[u] != deg[0]:
            raise IrregularGraphError(
                f"user {g.users[0]!s} has degree {deg[0]} but user {g.users[u]!s} has degree {deg[u]}"
            )
    return deg[0]


def verify_biregular(g):
    D = verify_left_regular(g)
    deg = g.subfile_degrees()
    for f in range(1, g.F):
        if deg[f] != deg[0]:
            raise IrregularGraphError(
                f"subfile {g.subfiles[0]!s} has degree {deg[0]} but subfile {g.subfiles[f]!s} has degree {deg[f]}"
            )
    return D, deg[0]


def check_matching(g, matching):
    """Raise unless matching is an induced matching of g."""
    seen_u, seen_f = set(), set()
    fmask = 0
    for u, f in matching:
        if not (0 <= u < g.K and 0 <= f < g.F) or not g.has_edge(u, f):
            raise PartitionError(f"pair {(u, f)} is not an edge of the graph")
        if u in seen_u or f in seen_f:
            raise NotAMatchingError(f"matching {list(matching)} reuses user {u} or subfile {f}")
        seen_u.add(u)
        seen_f.add(f)
        fmask |= 1 << f
    for u, f in matching:
        extra = g.missed_mask(u) & fmask & ~(1 << f)
        if extra:
            f2 = _bits(extra)[0]
            raise NotInducedError(list(matching), (u, f2))


def verify_cover(g, cover):
    """Check every class is an induced matching, sizes agree and the classes partition E."""
    D = verify_left_regular(g)
    if cover.S == 0:
        raise PartitionError("empty cover")
    for m in cover:
        check_matching(g, m)
    size = len(cover[0])
    for i, m in enumerate(cover):
        if len(m) != size:
            raise SizeMismatchError(f"matching 0 has size {size} but matching {i} has size {len(m)}")
    covered = [0] * g.K
    for i, m in enumerate(cover):
        for u, f in m:
            if (covered[u] >> f) & 1:
                raise PartitionError(f"edge {(u, f)} covered twice (again in matching {i})")
            covered[u] |= 1 << f
    for u in range(g.K):
        missing = g.missed_mask(u) & ~covered[u]
        if missing:
            raise PartitionError(f"edge {(u, _bits(missing)[0])} is not covered")
    return SchemeReport.from_counts(g.K, g.F, D, cover.S, size)


def uncoded_cover(g):
    return MatchingCover([[e] for e in g.edges])


# -- JSON -----------------------------------------------------------------------

def to_json_obj(g, cover=None):
    obj = {
        "users": [str(u) for u in g.users],
        "subfiles": [str(f) for f in g.subfiles],
        "missed_edges": [list(e) for e in g.edges],
    }
    if cover is not None:
        obj["cover"] = [[list(e) for e in m] for m in cover]
    return obj


def dumps(g, cover=None):
    return json.dumps(to_json_obj(g, cover), separators=(",", ":"))


def from_json_obj(obj):
    g = CachingGraph(obj["users"], obj["subfiles"], [tuple(e) for e in obj["missed_edges"]])
    cover = MatchingCover(obj["cover"]) if "cover" in obj else None
    return g, cover


def loads(text):
    return from_json_obj(json.loads(text))


# -- a small hand-made instance --------------------------------------------------

def toy_graph():
    """4 users, 5 subfiles, each user missing 3 subfiles; not right-regular."""
    missing = {1: (1, 2, 3), 2: (2, 4, 5), 3: (2, 3, 5), 4: (3, 4, 5)}
    edges = [(u - 1, f - 1) for u, fs in missing.items() for f in fs]
    return CachingGraph([1, 2, 3, 4], [f"f{i}" for i in range(1, 6)], edges)


def toy_cover():
    """Six induced matchings of size 2 partitioning the edges of toy_graph()."""
    classes = [
        [(1, 1), (3, 5)],
        [(1, 2), (4, 5)],
        [(1, 3), (2, 5)],
        [(2, 2), (4, 3)],
        [(2, 4), (3, 3)],
        [(3, 2), (4, 4)],
    ]
    return MatchingCover([[(u - 1, f - 1) for u, f in m] for m in classes])
