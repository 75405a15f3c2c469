"""The instance grid shared by the property and acceptance suites."""
from __future__ import annotations

from functools import lru_cache

from projcache.scheme_a import SchemeAParams, build_scheme_a, scheme_a_params
from projcache.scheme_b import SchemeBParams, build_scheme_b, scheme_b_params

QS = (2, 3)
K_MAX = 5
SIZE_CAP = 10 ** 5


def grid_params():
    """("a", SchemeAParams) and ("b", SchemeBParams) with K*F <= SIZE_CAP."""
    out = []
    for q in QS:
        for k in range(2, K_MAX + 1):
            for m in range(1, k):
                for t in range(1, k - m + 1):
                    p = SchemeAParams(k, m, t, q)
                    r = scheme_a_params(p)
                    if r.K * r.F <= SIZE_CAP:
                        out.append(("a", p))
            for l in range(1, k // 2 + 1):
                for n in range(1, k // l):
                    for m in range(1, k // l - n + 1):
                        p = SchemeBParams(k, n, m, l, q)
                        r = scheme_b_params(p)
                        if r.K * r.F <= SIZE_CAP:
                            out.append(("b", p))
    return out


def grid_id(item):
    kind, p = item
    return f"{kind}-" + "-".join(str(v) for v in p.__dict__.values())


@lru_cache(maxsize=None)
def built(kind, p):
    """Scheme object (graph, cover and construction data), built once per session."""
    if kind == "a":
        return build_scheme_a(p, cap=None, return_scheme=True)
    return build_scheme_b(p, cap=None, return_scheme=True)


def closed_form(kind, p):
    return scheme_a_params(p) if kind == "a" else scheme_b_params(p)
