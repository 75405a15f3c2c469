"""Scheme B adapted to coded distributed computing and to the cache-aided
interference channel (receivers grouped, transmitters zero-forcing).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor
from typing import Optional

import numpy as np

from .counting import count_independent_sets, gaussian_binomial, theta
from .errors import ArgumentError, SingularChannelError, UnsupportedError
from .pda import STAR, cover_to_pda, validate_pda
from .scheme_b import SchemeBParams, _params, build_scheme_b, scheme_b_params
from .subspace import DEFAULT_CAP

ZF_TOL = 1e-9
AUTO_BUILD = 100_000


# -- distributed computing ---------------------------------------------------------

@dataclass(frozen=True)
class CdcParams:
    K: int                      # computing nodes
    F: int                      # batches
    Z: int                      # batches mapped per node
    S: int
    g: int
    computation_load: Fraction
    communication_load: Fraction
    batch_assignment: Optional[tuple] = None   # node -> tuple of batch indices

    def check_against_pda(self, pda):
        """Recompute loads from the array itself."""
        p = validate_pda(pda)
        assert (p.K, p.F, p.Z, p.S, p.g) == (self.K, self.F, self.Z, self.S, self.g)
        stars = int((pda.cells == STAR).sum())
        assert stars == self.K * self.Z
        assert Fraction(self.K * p.Z, p.F) == self.computation_load
        assert Fraction(p.g, p.g - 1) * Fraction(p.S, p.K * p.F) == self.communication_load
        return True


def cdc_loads(K, F, Z, S, g):
    if g < 2:
        raise UnsupportedError(f"need matchings of size g >= 2, got {g}")
    return Fraction(K * Z, F), Fraction(g, g - 1) * Fraction(S, K * F)


def cdc_from_scheme_b(p, *args, build=None, cap=DEFAULT_CAP):
    """Nodes = users, batches = subfiles; node k maps batch f iff it caches f.

    build=None builds (and so assigns batches) only when K*F <= AUTO_BUILD.
    """
    p = _params(p, args)
    rep = scheme_b_params(p)
    Z = rep.F - rep.D
    r, load = cdc_loads(rep.K, rep.F, Z, rep.S, rep.g)
    if build is None:
        build = rep.K * rep.F <= AUTO_BUILD
    assignment = None
    if build:
        graph, cover = build_scheme_b(p, cap=cap)
        pda = cover_to_pda(graph, cover)
        cells = pda.cells
        assignment = tuple(tuple(int(f) for f in np.flatnonzero(cells[:, k] == STAR)) for k in range(rep.K))
        out = CdcParams(rep.K, rep.F, Z, rep.S, rep.g, r, load, assignment)
        out.check_against_pda(pda)
        return out
    return CdcParams(rep.K, rep.F, Z, rep.S, rep.g, r, load, None)


def cdc_external(K, r):
    """Batch count and load of the uncoded-placement baseline with K nodes and load r."""
    return comb(K, r), Fraction(1, r) * (1 - Fraction(r, K))


# -- interference channel ------------------------------------------------------------

@dataclass
class IcParams:
    k: int
    m: int
    q: int
    L: int
    K_T: int
    M_T: int
    N: int
    K_R: int
    cache_fraction: Fraction
    F: int
    D: int
    sum_dof: int
    groups: Optional[list] = None        # group index -> 1-dim subspace
    rounds: Optional[list] = None        # tuples of m+1 group indices
    subfiles: Optional[list] = None      # tuples of m group indices
    missed: Optional[np.ndarray] = None  # groups x subfiles, True when not cached
    tx_files: Optional[list] = field(default=None, repr=False)

    def receiver(self, group, i):
        """Receivers are numbered group-major: receiver = group * L + i."""
        return group * self.L + i

    def served(self, round_index):
        """(receiver, subfile index) pairs served in one round."""
        z = self.rounds[round_index]
        out = []
        for v in z:
            y = tuple(w for w in z if w != v)
            f = self._sub_idx[y]
            out.extend((self.receiver(v, i), f) for i in range(self.L))
        return out

    def transmitters_holding(self, file):
        return self._holders[file]


def transmitter_layout(K_T, M_T, N):
    """Transmitter i (0-based) stores files i*M_T, ..., (i+1)*M_T - 1, all mod N."""
    return [[(i * M_T + j) % N for j in range(M_T)] for i in range(K_T)]


def ic_closed_form(k, m, q, L):
    if not (1 <= m < k):
        raise ArgumentError(f"need 1 <= m < k, got k={k}, m={m}")
    if L < 1:
        raise ArgumentError(f"L must be >= 1, got {L}")
    K = theta(k, q)
    F = count_independent_sets(k, 0, m, q)
    D = count_independent_sets(k, 1, m, q)
    mr = 1 - Fraction(D, F)
    assert mr == 1 - Fraction(q ** m * gaussian_binomial(k - m, 1, q), K)
    return K, F, D, mr


def ic_scheme(k, m, q, L, K_T=None, M_T=None, N=None, build=None, cap=DEFAULT_CAP):
    """Groups of L receivers indexed by 1-dim subspaces; receiver caches follow Scheme B with n = 1.

    A group V caches subfile Y (an m-set of independent 1-dim subspaces) when
    V lies in the span of Y.  Defaults: N = K_R files and K_T = K_R
    transmitters each caching M_T = L files, so every file sits at L transmitters.
    """
    K, F, D, mr = ic_closed_form(k, m, q, L)
    K_R = L * K
    N = K_R if N is None else N
    if K_T is None and M_T is None:
        K_T, M_T = K_R, Fraction(L * N, K_R)
    elif M_T is None:
        M_T = Fraction(L * N, K_T)
    elif K_T is None:
        K_T = Fraction(L * N, M_T)
    if Fraction(K_T).denominator != 1 or Fraction(M_T).denominator != 1 or K_T * M_T != L * N:
        raise ArgumentError(f"need integral K_T, M_T with K_T*M_T = L*N, got K_T={K_T}, M_T={M_T}, N={N}")
    K_T, M_T = int(K_T), int(M_T)
    ic = IcParams(k, m, q, L, K_T, M_T, N, K_R, mr, F, D, L * (m + 1))
    if build is None:
        build = K * F <= AUTO_BUILD
    if not build:
        return ic
    p = SchemeBParams(k, 1, m, 1, q)
    s = build_scheme_b(p, cap=cap, return_scheme=True)
    ic.groups = [s.gens[x[0]] for x in s.users]
    ic.subfiles = list(s.subfiles)
    ic.rounds = list(s.zsets)
    ic._sub_idx = {y: i for i, y in enumerate(s.subfiles)}
    missed = np.zeros((K, F), dtype=bool)
    for u, f in s.graph.edges:
        missed[u, f] = True
    ic.missed = missed
    ic.tx_files = transmitter_layout(K_T, M_T, N)
    holders = [[] for _ in range(N)]
    for t, files in enumerate(ic.tx_files):
        for w in files:
            holders[w].append(t)
    ic._holders = holders
    return ic


def ic_external(K_R, L, mr):
    """Subpacketization and sum-DoF of the grouping baseline, evaluated exactly."""
    kr_mr = K_R * Fraction(mr)
    t = floor(kr_mr / L)
    return comb(K_R // L, t), L + floor(kr_mr)


def sample_channels(ic, z, rng):
    """Complex Gaussian L x K_T channel from all transmitters to each group in round z."""
    shape = (ic.L, ic.K_T)
    return {v: (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2) for v in z}


@dataclass
class ZfResult:
    round_index: int
    precoders: dict          # group -> K_T x L complex matrix
    residuals: dict          # group -> ||H A - I||_inf
    served: list
    attempts: int


def zero_force_round(ic, round_index, demands=None, channels=None, seed=0, max_retries=3,
                     sampler=None, tol=ZF_TOL):
    """Precoders A_j with H_j A_j = I, each column supported on the L transmitters holding its file.

    demands: receiver -> file (default: receiver r wants file r mod N).
    channels: optional dict group -> L x K_T matrix for the first attempt.
    On a singular or inaccurate solve new channels are drawn, up to max_retries times.
    """
    if ic.rounds is None:
        raise ArgumentError("interference-channel instance was not built")
    z = ic.rounds[round_index]
    if demands is None:
        demands = np.arange(ic.K_R) % ic.N
    sampler = sampler or sample_channels
    rng = np.random.default_rng(seed)
    H = channels if channels is not None else sampler(ic, z, rng)
    last = None
    for attempt in range(max_retries + 1):
        try:
            pre, res = _solve_round(ic, z, H, demands, tol)
            return ZfResult(round_index, pre, res, ic.served(round_index), attempt + 1)
        except (np.linalg.LinAlgError, _Inaccurate) as exc:
            last = exc
            H = sampler(ic, z, rng)
    raise SingularChannelError(f"round {round_index}: no usable channel after {max_retries} retries ({last})")


class _Inaccurate(Exception):
    pass


def _solve_round(ic, z, H, demands, tol):
    L = ic.L
    blocks, supports = [], []
    for v in z:
        Hv = np.asarray(H[v])
        sup = [ic.transmitters_holding(int(demands[ic.receiver(v, i)])) for i in range(L)]
        supports.append(sup)
        blocks.extend(Hv[:, s] for s in sup)
    # column i of A_v solves H_v[:, support_i] x = e_i
    rhs = np.tile(np.eye(L, dtype=complex), (len(z), 1))[:, :, None]
    sol = np.linalg.solve(np.stack(blocks), rhs)[:, :, 0]
    pre, res = {}, {}
    for gi, v in enumerate(z):
        A = np.zeros((ic.K_T, L), dtype=complex)
        for i, s in enumerate(supports[gi]):
            A[s, i] = sol[gi * L + i]
        r = np.abs(np.asarray(H[v]) @ A - np.eye(L)).sum(axis=1).max()
        if not np.isfinite(r) or r > tol:
            raise _Inaccurate(f"residual {r:.3e} for group {v}")
        pre[v] = A
        res[v] = float(r)
    return pre, res


def check_ic_schedule(ic):
    """Every (receiver, missed subfile) pair is served in exactly one round."""
    seen = {}
    for ri in range(len(ic.rounds)):
        for rec, f in ic.served(ri):
            if (rec, f) in seen:
                raise AssertionError(f"receiver {rec} gets subfile {f} twice")
            seen[(rec, f)] = ri
    expected = int(ic.missed.sum()) * ic.L
    if len(seen) != expected:
        raise AssertionError(f"{len(seen)} deliveries but {expected} missed pairs")
    for (rec, f) in seen:
        if not ic.missed[rec // ic.L, f]:
            raise AssertionError(f"receiver {rec} already caches subfile {f}")
    return True
