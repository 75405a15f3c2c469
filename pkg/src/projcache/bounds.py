"""Lower bounds on the delivery rate at fixed subpacketization.

All values are exact rationals in units of the file size; multiply by F to
get transmission counts.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Optional

from .errors import ArgumentError
from .render import fmt_decimal


def _ceil(x):
    x = Fraction(x)
    return -((-x.numerator) // x.denominator)


# -- nested-intersection bound on a concrete graph ----------------------------------

def mais_rhos(g, ordering, n_files=None):
    """rho_j = number of subfiles missed by all of the first j users."""
    ordering = [int(u) for u in ordering]
    if len(set(ordering)) != len(ordering):
        raise ArgumentError(f"ordering repeats a user: {ordering}")
    limit = g.K if n_files is None else min(g.K, n_files)
    if len(ordering) > limit:
        raise ArgumentError(f"ordering of length {len(ordering)} exceeds min(K, N) = {limit}")
    rhos = []
    cur = None
    for u in ordering:
        if not 0 <= u < g.K:
            raise ArgumentError(f"user {u} out of range")
        cur = g.missed_mask(u) if cur is None else cur & g.missed_mask(u)
        rhos.append(cur.bit_count())
    return rhos


def mais_bound(g, ordering, n_files=None):
    """Sum of rho_j: a lower bound on R*F for the caching scheme of g."""
    return sum(mais_rhos(g, ordering, n_files))


def greedy_ordering(g, n_files=None):
    """Pick, each step, the user keeping the most common missed subfiles; lowest index on ties."""
    if g.K == 0:
        raise ArgumentError("empty graph")
    limit = g.K if n_files is None else min(g.K, n_files)
    order, used, cur = [], set(), None
    while len(order) < limit:
        best, best_u = 0, None
        for u in range(g.K):
            if u in used:
                continue
            c = g.missed_mask(u) if cur is None else cur & g.missed_mask(u)
            r = c.bit_count()
            if r > best:
                best, best_u = r, u
        if best_u is None:
            break
        order.append(best_u)
        used.add(best_u)
        cur = g.missed_mask(best_u) if cur is None else cur & g.missed_mask(best_u)
    return order


def exhaustive_ordering(g, n_files=None, max_users=10):
    """Ordering maximizing the nested-intersection sum, by dynamic programming over user subsets."""
    if g.K > max_users:
        raise ArgumentError(f"exhaustive search limited to K <= {max_users}, got {g.K}")
    limit = g.K if n_files is None else min(g.K, n_files)
    full = (1 << g.F) - 1
    memo = {}

    def best(used, cur, depth):
        if depth == limit:
            return 0, ()
        key = used
        if key in memo:
            return memo[key]
        top, top_tail = 0, ()
        for u in range(g.K):
            if used >> u & 1:
                continue
            c = cur & g.missed_mask(u)
            r = c.bit_count()
            if r == 0:
                continue
            sub, tail = best(used | 1 << u, c, depth + 1)
            if r + sub > top:
                top, top_tail = r + sub, (u,) + tail
        memo[key] = (top, top_tail)
        return memo[key]

    value, order = best(0, full, 0)
    return list(order), value


# -- closed-form bounds from (K, F, M/N) ---------------------------------------------

def _integral(name, x):
    if Fraction(x).denominator != 1:
        raise ArgumentError(f"{name} = {x} must be an integer")
    return int(x)


def bound_corollary2(K, F, mn):
    """((K + F)(1 - M/N) - 1) / F, valid for every symmetric placement."""
    mn = Fraction(mn)
    _integral("D = F(1-M/N)", F * (1 - mn))
    _integral("d = K(1-M/N)", K * (1 - mn))
    return ((K + F) * (1 - mn) - 1) / Fraction(F)


def _descending_ceiling_sum(first, top, bottom, terms):
    """first + sum of t_{j+1} = ceil((top - j) t_j / (bottom - j)) for j = 1..terms-1.

    top may be rational and top <= bottom, so the factors decrease in j.
    While t_j = c, the next term stays c exactly when c(top - j) > (c-1)(bottom - j),
    i.e. for j < c*top - (c-1)*bottom; such runs are summed in one step.
    """
    total = t = first
    count, j = 1, 1
    while count < terms:
        limit = Fraction(t * top - (t - 1) * bottom)
        run = min(_ceil(limit) - j, terms - count)
        if run > 0:
            total += run * t
            count += run
            j += run
            continue
        t = _ceil(Fraction(top - j) * t / (bottom - j))
        total += t
        count += 1
        j += 1
    return total


def theorem6_terms(K, F, mn, relaxed=False):
    """The sequence rho_1 = D, rho_j = ceil((d - j + 1) rho_{j-1} / (K - j + 1)), d terms.

    With relaxed=True a non-integral d is allowed: the factors use the exact
    rational d and floor(d) terms are summed.
    """
    mn = Fraction(mn)
    D = _integral("D = F(1-M/N)", F * (1 - mn))
    d = K * (1 - mn)
    if relaxed:
        n_terms = floor(d)
    else:
        d = n_terms = _integral("d = K(1-M/N)", d)
    if n_terms < 1:
        raise ArgumentError(f"need d >= 1, got {d}")
    rhos = [D]
    for j in range(2, n_terms + 1):
        if rhos[-1] == 1:
            rhos.extend([1] * (n_terms - len(rhos)))
            break
        rhos.append(_ceil(Fraction(d - (j - 1)) * rhos[-1] / (K - (j - 1))))
    return rhos


def bound_theorem6(K, F, mn, relaxed=False):
    """Nested-ceiling bound for placements where every subfile is missed by d users."""
    mn = Fraction(mn)
    D = _integral("D = F(1-M/N)", F * (1 - mn))
    d = K * (1 - mn)
    if relaxed:
        n_terms = floor(d)
    else:
        d = n_terms = _integral("d = K(1-M/N)", d)
    if n_terms < 1:
        raise ArgumentError(f"need d >= 1, got {d}")
    return Fraction(_descending_ceiling_sum(D, d, K, n_terms), F)


def bound_cheng(K, F, mn):
    """PDA-based bound: D nested ceilings starting at ceil(DK/F) with factors (D-i)/(F-i)."""
    mn = Fraction(mn)
    D = _integral("D = F(1-M/N)", F * (1 - mn))
    _integral("FM/N", F * mn)
    if D < 1:
        raise ArgumentError("need D >= 1")
    first = _ceil(Fraction(D * K, F))
    return Fraction(_descending_ceiling_sum(first, D, F, D), F)


def bound_wtp(K, mn):
    """K(1 - M/N) / (1 + K M/N), valid for any subpacketization."""
    mn = Fraction(mn)
    if not 0 <= mn <= 1:
        raise ArgumentError(f"M/N must lie in [0, 1], got {mn}")
    return K * (1 - mn) / (1 + K * mn)


# -- report over (K, F, D) rows --------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    K: int
    F: int
    D: int
    cache_fraction: Fraction
    bound_corollary2: Fraction
    bound_theorem6: Fraction
    bound_cheng: Fraction
    bound_wtp: Fraction
    achieved_rate: Optional[Fraction] = None
    scheme: Optional[tuple] = None
    relaxed: bool = False
    note: str = ""

    def cells(self):
        def r(x):
            return "NA" if x is None else fmt_decimal(x)

        return [self.K, self.F, self.D, fmt_decimal(self.cache_fraction), r(self.bound_corollary2),
                r(self.bound_theorem6), r(self.bound_cheng), r(self.bound_wtp), r(self.achieved_rate)]


def bound_report(K, F, D, achieved=None, scheme=None, note=""):
    mn = 1 - Fraction(D, F)
    d = K * (1 - mn)
    relaxed = d.denominator != 1
    return BoundReport(
        K, F, D, mn,
        bound_corollary2(K, F, mn) if not relaxed else ((K + F) * (1 - mn) - 1) / Fraction(F),
        bound_theorem6(K, F, mn, relaxed=relaxed),
        bound_cheng(K, F, mn),
        bound_wtp(K, mn),
        achieved, scheme, relaxed, note,
    )


def find_scheme_b(K, F, k_max=8, qs=(2, 3, 4, 5), l_max=2):
    """Scheme B parameter tuples whose closed forms give K users and F subfiles."""
    from .scheme_b import SchemeBParams, scheme_b_params

    hits = []
    for q in qs:
        for k in range(2, k_max + 1):
            for l in range(1, l_max + 1):
                for n in range(1, k // l):
                    for m in range(1, k // l - n + 1):
                        p = SchemeBParams(k, n, m, l, q)
                        rep = scheme_b_params(p)
                        if rep.K == K and rep.F == F:
                            hits.append((p, rep))
    return hits


def bound_rows_report(rows, attach_scheme_b=True):
    """All four bounds per (K, F, D) row, plus the Scheme B rate when one fits the row."""
    out = []
    for K, F, D in rows:
        achieved = scheme = None
        note = ""
        if attach_scheme_b:
            hits = find_scheme_b(K, F)
            exact = [h for h in hits if h[1].D == D]
            if exact:
                p, rep = exact[0]
                achieved, scheme = rep.rate, p.as_tuple()
            elif hits:
                p, rep = hits[0]
                achieved, scheme = rep.rate, p.as_tuple()
                note = f"scheme {p.as_tuple()} has D={rep.D}, row has D={D}"
        rep = bound_report(K, F, D, achieved, scheme, note)
        if rep.relaxed:
            extra = "d = K D / F is not an integer; the nested-ceiling bound uses rational d"
            note = f"{note}; {extra}" if note else extra
            rep = BoundReport(**{**rep.__dict__, "note": note})
        out.append(rep)
    return out


BOUND_HEADER = ["K", "F", "D", "M/N", "bound_corollary2", "bound_theorem6", "bound_cheng", "bound_wtp", "achieved"]


def bounds_csv(reports):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BOUND_HEADER)
    for r in reports:
        w.writerow(r.cells())
    return buf.getvalue()
