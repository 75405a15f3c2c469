"""Placement delivery arrays and the bridge from induced matching covers."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ArgumentError, PdaC1Error, PdaC2Error, PdaC3Error, UnsupportedError
from .graph import verify_cover

STAR = 0  # cells hold 0 for a star, 1..S for transmissions


@dataclass(frozen=True)
class PdaParams:
    K: int
    F: int
    Z: int
    S: int
    g: Optional[int]


class Pda:
    """F x K integer array; 0 encodes a star, s in 1..S a transmission index."""

    def __init__(self, cells, S=None):
        cells = np.asarray(cells, dtype=np.int64)
        if cells.ndim != 2 or cells.size == 0:
            raise ArgumentError("PDA must be a non-empty 2-d array")
        if cells.min() < 0:
            raise ArgumentError("PDA cells must be 0 (star) or positive integers")
        self.cells = cells
        self.cells.setflags(write=False)
        self.S = int(cells.max()) if S is None else int(S)

    @property
    def F(self):
        return self.cells.shape[0]

    @property
    def K(self):
        return self.cells.shape[1]

    def to_csv(self, params=None):
        p = params or validate_pda(self)
        g = "-" if p.g is None else p.g
        lines = [f"#PDA K={p.K} F={p.F} Z={p.Z} S={p.S} g={g}"]
        for row in self.cells:
            lines.append(",".join("*" if c == STAR else str(int(c)) for c in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text):
        S = None
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if tok.startswith("S="):
                        S = int(tok[2:])
                continue
            rows.append([STAR if c.strip() == "*" else int(c) for c in line.split(",")])
        if len({len(r) for r in rows}) > 1:
            raise ArgumentError("ragged PDA rows")
        return cls(rows, S=S)


def validate_pda(p):
    """Check the three PDA conditions and report (K, F, Z, S, g)."""
    cells = p.cells
    F, K = cells.shape
    stars = (cells == STAR).sum(axis=0)
    Z = int(stars[0])
    bad = np.flatnonzero(stars != Z)
    if bad.size:
        raise PdaC1Error(f"column 0 has {Z} stars but column {int(bad[0])} has {int(stars[bad[0]])}")
    S = p.S
    if S < 1:
        raise PdaC2Error("no integer symbols present")
    if cells.max() > S:
        f, k = np.argwhere(cells > S)[0]
        raise PdaC2Error(f"cell ({int(f)},{int(k)}) holds {int(cells[f, k])} > S={S}")
    where = defaultdict(list)
    for f, k in zip(*np.nonzero(cells)):
        where[int(cells[f, k])].append((int(f), int(k)))
    for s in range(1, S + 1):
        if s not in where:
            raise PdaC2Error(f"symbol {s} does not occur")
    counts = set()
    for s, pos in where.items():
        counts.add(len(pos))
        for i in range(len(pos)):
            f1, k1 = pos[i]
            for j in range(i + 1, len(pos)):
                f2, k2 = pos[j]
                if f1 == f2 or k1 == k2:
                    raise PdaC3Error(f"symbol {s} repeats in a row or column at cells {(f1, k1)} and {(f2, k2)}")
                if cells[f1, k2] != STAR or cells[f2, k1] != STAR:
                    raise PdaC3Error(
                        f"symbol {s} at cells {(f1, k1)} and {(f2, k2)}: crossing cells {(f1, k2)}, {(f2, k1)} are not both stars"
                    )
    g = counts.pop() if len(counts) == 1 else None
    return PdaParams(K, F, Z, S, g)


def cover_to_pda(graph, cover):
    """Star where the user caches, otherwise the 1-based index of the covering matching."""
    report = verify_cover(graph, cover)
    if report.g < 2:
        raise UnsupportedError(f"matchings of size {report.g}; a regular PDA needs size >= 2")
    cells = np.zeros((graph.F, graph.K), dtype=np.int64)
    for i, m in enumerate(cover, start=1):
        for u, f in m:
            cells[f, u] = i
    return Pda(cells, S=cover.S)
