"""Scheme B and its l-dim generalization, plus the linear-subpacketization case.

Generators are l-dim subspaces of F_q^k.  Users are unordered n-sets of
independent generators, subfiles are m-sets, and every independent
(n+m)-set Z gives one transmission serving the pairs (X, Z minus X) for the
n-subsets X of Z.  A user X misses subfile Y exactly when X and Y together
are independent.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .counting import count_independent_subspace_sets, gaussian_binomial
from .errors import ArgumentError, CapExceededError
from .field import is_prime_power
from .graph import CachingGraph, MatchingCover, SchemeReport
from .subspace import DEFAULT_CAP, as_field, basis_string, enumerate_subspaces, subspace_sum


@dataclass(frozen=True)
class SchemeBParams:
    k: int
    n: int
    m: int
    l: int
    q: int

    def __post_init__(self):
        if not is_prime_power(self.q):
            raise ArgumentError(f"q={self.q} is not a prime power")
        if self.n < 1 or self.m < 1 or self.l < 1:
            raise ArgumentError(f"need n, m, l >= 1, got n={self.n}, m={self.m}, l={self.l}")
        if (self.n + self.m) * self.l > self.k:
            raise ArgumentError(f"need (n+m)*l <= k, got n={self.n}, m={self.m}, l={self.l}, k={self.k}")

    def as_tuple(self):
        return (self.k, self.n, self.m, self.l, self.q)


def make_params(k, n, m, l=1, q=2):
    return SchemeBParams(k, n, m, l, q)


def _params(p, args):
    if isinstance(p, SchemeBParams):
        return p
    if len(args) == 3:  # (k, n, m, q) with l = 1
        n, m, q = args
        return SchemeBParams(p, n, m, 1, q)
    return SchemeBParams(p, *args)


def scheme_b_params(p, *args):
    """Closed-form report.  Accepts SchemeBParams, (k, n, m, q) or (k, n, m, l, q)."""
    p = _params(p, args)
    k, n, m, l, q = p.as_tuple()
    K = count_independent_subspace_sets(k, 0, n, l, q)
    F = count_independent_subspace_sets(k, 0, m, l, q)
    D = count_independent_subspace_sets(k, n * l, m, l, q)
    S = count_independent_subspace_sets(k, 0, n + m, l, q)
    return SchemeReport.from_counts(K, F, D, S, comb(n + m, n))


def scheme_b_params_l1(k, n, m, q):
    """The l = 1 formulas written with theta(k) = [k 1]_q."""
    th = lambda a: (q ** a - 1) // (q - 1)  # noqa: E731

    def sets(a, b):
        num = 1
        for i in range(b):
            num *= th(k) - th(a + i)
        return num // factorial(b)

    K, F, D, S = sets(0, n), sets(0, m), sets(n, m), sets(0, n + m)
    return SchemeReport.from_counts(K, F, D, S, comb(n + m, n))


def scheme_b_params_general(k, n, m, l, q):
    """Generalized-scheme formulas written as products of Gaussian binomials.

    The transmission count carries q^{l^2 (n+m)(n+m-1)/2} in its numerator;
    only at l = 1 does this agree with writing the exponent through n alone.
    """
    gb = gaussian_binomial

    def prod_gb(start, count):
        out = 1
        for i in range(count):
            out *= gb(k - start - i * l, l, q)
        return out

    K = q ** (l * l * n * (n - 1) // 2) * prod_gb(0, n) // factorial(n)
    F = q ** (l * l * m * (m - 1) // 2) * prod_gb(0, m) // factorial(m)
    D = q ** (l * l * (n * m + m * (m - 1) // 2)) * prod_gb(n * l, m) // factorial(m)
    S = q ** (l * l * (n + m) * (n + m - 1) // 2) * prod_gb(0, n + m) // factorial(n + m)
    return SchemeReport.from_counts(K, F, D, S, comb(n + m, n))


def right_degree(p, *args):
    """Number of users missing any fixed subfile."""
    p = _params(p, args)
    return count_independent_subspace_sets(p.k, p.m * p.l, p.n, p.l, p.q)


# -- enumeration ----------------------------------------------------------------

def independent_sets(gens, sizes, field, k):
    """All index tuples i_1 < ... < i_s of independent generators, for s in sizes.

    Returns {s: sorted list of tuples}.  Extends each independent prefix by
    generators meeting its span trivially.
    """
    sizes = set(sizes)
    top = max(sizes)
    out = {s: [] for s in sizes}
    masks = [g.mask for g in gens]

    def extend(prefix, span):
        s = len(prefix)
        if s in out:
            out[s].append(tuple(prefix))
        if s == top:
            return
        smask = span.mask if span is not None else 1
        start = prefix[-1] + 1 if prefix else 0
        for j in range(start, len(gens)):
            if masks[j] & smask == 1:
                prefix.append(j)
                extend(prefix, gens[j] if span is None else subspace_sum(span, gens[j]))
                prefix.pop()

    extend([], None)
    return out


def set_label(prefix, members):
    return prefix + "[" + ",".join("{" + basis_string(t) + "}" for t in members) + "]"


class SchemeB:
    """A built instance with generator sets kept for inspection."""

    def __init__(self, params, gens, users, subfiles, zsets, graph, cover):
        self.params = params
        self.gens = gens
        self.users = users          # tuples of generator indices
        self.subfiles = subfiles
        self.zsets = zsets
        self.graph = graph
        self.cover = cover

    def report(self):
        return scheme_b_params(self.params)

    def user_index(self, members):
        return self._uidx[tuple(sorted(members))]


def build_scheme_b(p, *args, cap=DEFAULT_CAP, return_scheme=False):
    """Construct the caching graph and the cover {C_Z}; returns (graph, cover)."""
    p = _params(p, args)
    rep = scheme_b_params(p)
    if cap is not None and max(rep.K * rep.F, rep.S * rep.g) > cap:
        raise CapExceededError(f"scheme B {p.as_tuple()}: K*F", rep.K * rep.F, cap)
    field = as_field(p.q)
    gens = enumerate_subspaces(p.k, p.l, field, cap=cap)
    sets = independent_sets(gens, {p.n, p.m, p.n + p.m}, field, p.k)
    users, subfiles, zsets = sets[p.n], sets[p.m], sets[p.n + p.m]
    uidx = {x: i for i, x in enumerate(users)}
    fidx = {y: i for i, y in enumerate(subfiles)}
    classes = []
    for z in zsets:
        cls = []
        for x in combinations(z, p.n):
            y = tuple(i for i in z if i not in x)
            cls.append((uidx[x], fidx[y]))
        classes.append(cls)
    edges = [e for c in classes for e in c]
    graph = CachingGraph(
        [set_label("X", [gens[i] for i in x]) for x in users],
        [set_label("Y", [gens[i] for i in y]) for y in subfiles],
        edges,
    )
    cover = MatchingCover(classes)
    if return_scheme:
        s = SchemeB(p, gens, users, subfiles, zsets, graph, cover)
        s._uidx = uidx
        return s
    return graph, cover


def algorithm1_transcript(p, demands, *args, scheme=None, cap=DEFAULT_CAP):
    """Symbolic delivery: per Z, the list of (user, demanded file, subfile) summands.

    demands maps user index -> file index (a dict or a sequence of length K).
    """
    if scheme is None:
        scheme = build_scheme_b(p, *args, cap=cap, return_scheme=True)
    K = len(scheme.users)
    dem = dict(enumerate(demands)) if not isinstance(demands, dict) else dict(demands)
    missing = [u for u in range(K) if u not in dem]
    if missing:
        raise ArgumentError(f"no demand given for user {missing[0]}")
    out = []
    for cls in scheme.cover:
        out.append([(u, dem[u], f) for u, f in cls])
    return out


# -- linear subpacketization case -------------------------------------------------

@dataclass(frozen=True)
class SchemeCReport:
    q: int
    lam: Fraction
    params: SchemeBParams
    report: SchemeReport
    f_equals_k: bool
    users_bound_ok: bool
    cache_bound_ok: bool
    gain_bound_ok: bool

    def all_hold(self):
        return self.f_equals_k and self.users_bound_ok and self.cache_bound_ok and self.gain_bound_ok


def scheme_c_params(q, lam):
    """Scheme B with n = m = lam*q and k = 2n, plus its certified inequalities."""
    lam = Fraction(lam)
    if not is_prime_power(q):
        raise ArgumentError(f"q={q} is not a prime power")
    if not (0 < lam < 1):
        raise ArgumentError(f"lam must lie in (0, 1), got {lam}")
    nq = lam * q
    if nq.denominator != 1:
        raise ArgumentError(f"lam*q = {nq} is not an integer")
    n = int(nq)
    p = SchemeBParams(2 * n, n, n, 1, q)
    rep = scheme_b_params(p)
    users_ok = rep.K * factorial(n) <= q ** (2 * n * n)
    cache_ok = rep.cache_fraction <= lam
    # gain >= 4^n / (2 sqrt(n))  <=>  (2 gain)^2 n >= 16^n
    gain_ok = (2 * rep.gain) ** 2 * n >= 16 ** n
    return SchemeCReport(q, lam, p, rep, rep.F == rep.K, users_ok, cache_ok, gain_ok)


# -- planning helper ------------------------------------------------------------

@dataclass(frozen=True)
class PlanRow:
    params: SchemeBParams
    K: int
    F: int
    cache_fraction: Fraction
    rate: Fraction
    dummy_users: int
    unused_cache: Fraction


def plan(users, mn, k_max=8, qs=(2, 3, 4, 5), l_max=2, limit=None):
    """Parameter tuples with K >= users and M/N <= mn, best fit first.

    Extra users are dummies and the cache left over (mn - M/N) goes unused.
    Sorted by (K - users, mn - M/N), then (q, k, n, m, l).
    """
    mn = Fraction(mn)
    rows = []
    for q in qs:
        for k in range(2, k_max + 1):
            for l in range(1, l_max + 1):
                for n in range(1, k // l):
                    for m in range(1, k // l - n + 1):
                        p = SchemeBParams(k, n, m, l, q)
                        rep = scheme_b_params(p)
                        if rep.K < users or rep.cache_fraction > mn:
                            continue
                        rows.append(PlanRow(p, rep.K, rep.F, rep.cache_fraction, rep.rate,
                                            rep.K - users, mn - rep.cache_fraction))
    rows.sort(key=lambda r: (r.dummy_users, r.unused_cache, r.params.q, r.params.k, r.params.n, r.params.m, r.params.l))
    return rows[:limit] if limit else rows


def plan_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["q", "k", "n", "m", "l", "K", "F", "M/N", "R", "dummy_users", "unused_cache"])
    for r in rows:
        p = r.params
        w.writerow([p.q, p.k, p.n, p.m, p.l, r.K, r.F, str(r.cache_fraction), str(r.rate),
                    r.dummy_users, str(r.unused_cache)])
    return buf.getvalue()
