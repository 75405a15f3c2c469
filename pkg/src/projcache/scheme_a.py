"""Scheme A: users are t-dim subspaces, subfiles are (m+t)-dim subspaces of F_q^k.

User V misses subfile X exactly when V is contained in X.  Inside each X the
t-dim and m-dim subspaces are paired off by a perfect matching with
V + T = X a direct sum; all edges sharing the same partner T form one
induced matching, giving one transmission per m-dim subspace T.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .counting import gaussian_binomial
from .errors import ArgumentError, CapExceededError
from .field import is_prime_power
from .graph import CachingGraph, MatchingCover, SchemeReport
from .subspace import DEFAULT_CAP, as_field, enumerate_subspaces, subspaces_of


@dataclass(frozen=True)
class SchemeAParams:
    k: int
    m: int
    t: int
    q: int

    def __post_init__(self):
        if not is_prime_power(self.q):
            raise ArgumentError(f"q={self.q} is not a prime power")
        if self.m < 1 or self.t < 1:
            raise ArgumentError(f"need m >= 1 and t >= 1, got m={self.m}, t={self.t}")
        if self.m + self.t > self.k:
            raise ArgumentError(f"need m + t <= k, got m={self.m}, t={self.t}, k={self.k}")


def _params(p, args):
    if isinstance(p, SchemeAParams):
        return p
    return SchemeAParams(p, *args)


def scheme_a_params(p, *args):
    """Closed-form report; accepts a SchemeAParams or (k, m, t, q)."""
    p = _params(p, args)
    k, m, t, q = p.k, p.m, p.t, p.q
    K = gaussian_binomial(k, t, q)
    F = gaussian_binomial(k, m + t, q)
    D = gaussian_binomial(k - t, m, q)
    S = gaussian_binomial(k, m, q)
    g = gaussian_binomial(k - m, t, q)
    return SchemeReport.from_counts(K, F, D, S, g)


def matching_subspaces(x, m, t):
    """Bijection V -> T from t-dim to m-dim subspaces of x with V + T = x direct.

    Found as a maximum matching of the bipartite graph joining V and T when
    they meet trivially; that graph is regular, so the matching is perfect.
    """
    if x.dim != m + t:
        raise ArgumentError(f"dim(x) = {x.dim} but m + t = {m + t}")
    vs = subspaces_of(x, t)
    ts = subspaces_of(x, m)
    return dict(_perfect_matching(vs, ts))


def _perfect_matching(vs, ts):
    rows, cols = [], []
    for i, v in enumerate(vs):
        vm = v.mask
        for j, s in enumerate(ts):
            if vm & s.mask == 1:
                rows.append(i)
                cols.append(j)
    adj = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(vs), len(ts)))
    match = maximum_bipartite_matching(adj, perm_type="column")
    if len(vs) != len(ts) or (match < 0).any():
        raise AssertionError("complement graph has no perfect matching")
    return [(v, ts[int(j)]) for v, j in zip(vs, match)]


class SchemeA:
    """A built instance: graph, cover and the partner of every edge."""

    def __init__(self, params, users, subfiles, tspaces, graph, cover, labels):
        self.params = params
        self.users = users
        self.subfiles = subfiles
        self.tspaces = tspaces
        self.graph = graph
        self.cover = cover
        self.labels = labels  # edge (u, f) -> index of its partner T

    def report(self):
        return scheme_a_params(self.params)


def build_scheme_a(p, *args, cap=DEFAULT_CAP, return_scheme=False):
    """Construct the caching graph and cover; returns (graph, cover)."""
    p = _params(p, args)
    rep = scheme_a_params(p)
    if cap is not None and rep.K * rep.F > cap:
        raise CapExceededError(f"scheme A {p}: K*F", rep.K * rep.F, cap)
    field = as_field(p.q)
    users = enumerate_subspaces(p.k, p.t, field, cap=cap)
    subfiles = enumerate_subspaces(p.k, p.m + p.t, field, cap=cap)
    tspaces = enumerate_subspaces(p.k, p.m, field, cap=cap)
    uidx = {v: i for i, v in enumerate(users)}
    tidx = {s: i for i, s in enumerate(tspaces)}

    edges = []
    classes = [[] for _ in tspaces]
    labels = {}
    for f, x in enumerate(subfiles):
        for v, s in _perfect_matching(subspaces_of(x, p.t), subspaces_of(x, p.m)):
            u = uidx[v]
            edges.append((u, f))
            j = tidx[s]
            classes[j].append((u, f))
            labels[(u, f)] = j
    for c in classes:
        c.sort()
    graph = CachingGraph([v.label("V") for v in users], [x.label("X") for x in subfiles], edges)
    cover = MatchingCover(classes)
    if return_scheme:
        return SchemeA(p, users, subfiles, tspaces, graph, cover, labels)
    return graph, cover
