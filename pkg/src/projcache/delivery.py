"""Byte-level placement, coded XOR delivery and per-user decoding."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import xxhash

from .errors import ArgumentError, DecodeError

DEFAULT_SUBFILE_SIZE = 64


class FileLibrary:
    """N files, each split into F subfiles of subfile_size random bytes."""

    def __init__(self, n_files, subpacketization, subfile_size=DEFAULT_SUBFILE_SIZE, rng_seed=0):
        if n_files < 1 or subpacketization < 1 or subfile_size < 1:
            raise ArgumentError("library dimensions must be positive")
        self.n_files = int(n_files)
        self.F = int(subpacketization)
        self.subfile_size = int(subfile_size)
        self.rng_seed = rng_seed
        rng = np.random.default_rng(rng_seed)
        self.content = rng.integers(0, 256, size=(self.n_files, self.F, self.subfile_size), dtype=np.uint8)
        self.content.setflags(write=False)

    def file(self, i):
        return self.content[i]


class UserCache:
    """What one user holds: every file's subfiles at the cached indices.

    Reads outside the cached index set raise, so a decoder built on this view
    cannot peek at content it was never given.
    """

    def __init__(self, user, cached_mask, lib):
        self.user = user
        self.cached_mask = cached_mask  # bool array of length F
        self._content = lib.content

    @property
    def indices(self):
        return np.flatnonzero(self.cached_mask)

    def read(self, files, subfiles):
        subfiles = np.asarray(subfiles)
        ok = self.cached_mask[subfiles]
        if not np.all(ok):
            bad = int(np.asarray(subfiles).ravel()[np.flatnonzero(~np.asarray(ok).ravel())[0]])
            raise DecodeError(self.user, bad, "needed a subfile that is not in the cache")
        return self._content[files, subfiles]

    def size_in_subfiles(self):
        return int(self.cached_mask.sum()) * self._content.shape[0]


def cached_matrix(g):
    """K x F bool array, True where the user stores the subfile."""
    out = np.ones((g.K, g.F), dtype=bool)
    if g.edges:
        e = np.array(g.edges, dtype=np.int64)
        out[e[:, 0], e[:, 1]] = False
    return out


def place_caches(g, lib):
    if lib.F != g.F:
        raise ArgumentError(f"library has F={lib.F} subfiles per file but the graph has {g.F}")
    cm = cached_matrix(g)
    return [UserCache(u, cm[u], lib) for u in range(g.K)]


# -- demands ----------------------------------------------------------------------

def make_demands(mode, K, N, seed=0):
    """worst-case (distinct files), random (uniform, seeded) or constant:i."""
    if mode == "worst-case":
        if N < K:
            raise ArgumentError(f"worst-case demands need N >= K, got N={N}, K={K}")
        return np.random.default_rng(seed).permutation(N)[:K]
    if mode == "random":
        return np.random.default_rng(seed).integers(0, N, size=K)
    if isinstance(mode, str) and mode.startswith("constant:"):
        i = int(mode.split(":", 1)[1])
        if not 0 <= i < N:
            raise ArgumentError(f"file {i} out of range for N={N}")
        return np.full(K, i, dtype=np.int64)
    raise ArgumentError(f"unknown demand mode {mode!r}")


def _check_demands(demands, K, N):
    d = np.asarray(demands, dtype=np.int64)
    if d.shape != (K,):
        raise ArgumentError(f"need one demand per user ({K}), got shape {d.shape}")
    if d.min() < 0 or d.max() >= N:
        raise ArgumentError(f"demands must lie in 0..{N - 1}")
    return d


# -- delivery ---------------------------------------------------------------------

@dataclass
class Transmission:
    m: int
    participants: list
    payload: np.ndarray

    def digest(self):
        return xxhash.xxh3_64_hexdigest(self.payload.tobytes())


@dataclass
class Transcript:
    transmissions: list
    subfile_size: int

    @property
    def S(self):
        return len(self.transmissions)

    @property
    def bits_sent(self):
        return self.S * self.subfile_size * 8

    def to_jsonl(self, dump_payloads=False):
        lines = []
        for t in self.transmissions:
            rec = {"m": t.m, "participants": [list(p) for p in t.participants], "payload_xxh3": t.digest()}
            if dump_payloads:
                rec["payload"] = t.payload.tobytes().hex()
            lines.append(json.dumps(rec, separators=(",", ":")))
        return "\n".join(lines) + "\n"


def deliver(g, cover, lib, demands):
    """One XOR of demanded subfiles per matching; ids are 1-based."""
    d = _check_demands(demands, g.K, lib.n_files)
    out = []
    for i, m in enumerate(cover, start=1):
        arr = np.array(m, dtype=np.int64)
        payload = np.bitwise_xor.reduce(lib.content[d[arr[:, 0]], arr[:, 1]], axis=0)
        out.append(Transmission(i, [tuple(p) for p in m], payload))
    return Transcript(out, lib.subfile_size)


# -- decoding ---------------------------------------------------------------------

@dataclass
class UserResult:
    user: int
    ok: bool
    consumed: list = field(default_factory=list)


@dataclass
class DecodeReport:
    users: list

    @property
    def all_ok(self):
        return all(r.ok for r in self.users)

    @property
    def n_ok(self):
        return sum(r.ok for r in self.users)


def index_by_user(transcript):
    """user -> transmissions naming that user, in broadcast order."""
    out = {}
    for t in transcript.transmissions:
        for u in {p[0] for p in t.participants}:
            out.setdefault(u, []).append(t)
    return out


def decode_user(cache, demand, demands, transcript, F, heard=None):
    """Recover one user's file from its cache and the broadcast only.

    demands are public (the server announces them with the transmissions).
    heard optionally restricts the scan to transmissions naming this user.
    Returns (file bytes F x size, consumed transmission ids).
    """
    u = cache.user
    size = transcript.subfile_size
    out = np.zeros((F, size), dtype=np.uint8)
    have = cache.cached_mask.copy()
    idx = cache.indices
    out[idx] = cache.read(demand, idx)
    consumed = []
    for t in transcript.transmissions if heard is None else heard:
        mine = [p for p in t.participants if p[0] == u]
        if not mine:
            continue
        if len(mine) > 1:
            raise DecodeError(u, mine[1][1], f"appears twice in transmission {t.m}")
        f_want = mine[0][1]
        if have[f_want]:
            raise DecodeError(u, f_want, f"transmission {t.m} carries a subfile already held")
        others = [p for p in t.participants if p[0] != u]
        acc = t.payload.copy()
        if others:
            ou = np.array([p[0] for p in others])
            of = np.array([p[1] for p in others])
            acc ^= np.bitwise_xor.reduce(cache.read(demands[ou], of), axis=0)
        out[f_want] = acc
        have[f_want] = True
        consumed.append(t.m)
    if not have.all():
        raise DecodeError(u, int(np.flatnonzero(~have)[0]), "subfile neither cached nor delivered")
    return out, consumed


def decode_all(g, cover, lib, demands, transcript, caches=None):
    """Decode at every user and compare against the library; any mismatch raises."""
    d = _check_demands(demands, g.K, lib.n_files)
    if caches is None:
        caches = place_caches(g, lib)
    by_user = index_by_user(transcript)
    results = []
    for cache in caches:
        u = cache.user
        got, consumed = decode_user(cache, int(d[u]), d, transcript, lib.F, by_user.get(u, []))
        want = lib.content[d[u]]
        diff = np.flatnonzero((got != want).any(axis=1))
        if diff.size:
            raise DecodeError(u, int(diff[0]), "decoded bytes differ from the library")
        results.append(UserResult(u, True, consumed))
    return DecodeReport(results)


def measure(transcript, lib, K, mn):
    """(rate, gain) with rate = transmissions / F and gain = K(1 - M/N) / rate."""
    rate = Fraction(transcript.S, lib.F)
    gain = K * (1 - Fraction(mn)) / rate
    return rate, gain


def simulate(g, cover, demands=None, n_files=None, subfile_size=DEFAULT_SUBFILE_SIZE, seed=0, mode="worst-case"):
    """Build a library, deliver and decode; returns (transcript, report, library, demands)."""
    N = g.K if n_files is None else n_files
    lib = FileLibrary(N, g.F, subfile_size, seed)
    if demands is None:
        demands = make_demands(mode, g.K, N, seed)
    tr = deliver(g, cover, lib, demands)
    rep = decode_all(g, cover, lib, demands, tr)
    return tr, rep, lib, np.asarray(demands)
