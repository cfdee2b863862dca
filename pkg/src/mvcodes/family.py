"""S_m-matching families in Z_m^h found by search.

A family u_1..u_n is valid when every <u_i, u_i> = 0 (mod m) and every cross
product <u_i, u_j> (mod m) lands in the canonical set.  Small instances are
found greedily in lexicographic order or, behind a flag, as a maximum clique
of the compatibility graph.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import networkx as nx
import numpy as np

from .errors import GuardExceeded
from .modulus import Modulus, canonical_set

GREEDY_MAX_SPACE = 10 ** 7
CLIQUE_MAX_SPACE = 10 ** 4


@dataclass(frozen=True)
class MatchingFamily:
    mod: Modulus
    h: int
    vectors: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.vectors)

    def array(self) -> np.ndarray:
        return np.array(self.vectors, dtype=np.int64).reshape(self.n, self.h)

    def padded(self, extra: int = 1) -> "MatchingFamily":
        """Append zero coordinates; inner products are unchanged."""
        return MatchingFamily(self.mod, self.h + extra,
                              tuple(v + (0,) * extra for v in self.vectors))

    def to_json(self) -> dict:
        return {"m": self.mod.m, "h": self.h, "vectors": [list(v) for v in self.vectors]}

    @classmethod
    def from_json(cls, data: dict) -> "MatchingFamily":
        mod = Modulus.of(int(data["m"]))
        h = int(data["h"])
        vectors = tuple(tuple(int(x) % mod.m for x in v) for v in data["vectors"])
        if any(len(v) != h for v in vectors):
            raise ValueError(f"every vector must have {h} coordinates")
        return cls(mod, h, vectors)

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n")

    @classmethod
    def load(cls, path) -> "MatchingFamily":
        return cls.from_json(json.loads(Path(path).read_text()))


def inner(u, v, m: int) -> int:
    return sum(a * b for a, b in zip(u, v)) % m


def verify_family(f: MatchingFamily) -> bool:
    m = f.mod.m
    S = set(canonical_set(f.mod))
    for i, u in enumerate(f.vectors):
        if len(u) != f.h or inner(u, u, m) != 0:
            return False
        for j, v in enumerate(f.vectors):
            if i != j and inner(u, v, m) not in S:
                return False
    return True


def _space(m: int, h: int) -> np.ndarray:
    """All of Z_m^h, lexicographic with the last coordinate fastest."""
    grids = np.indices((m,) * h, dtype=np.int64)
    return grids.reshape(h, -1).T


def _self_orthogonal_nonzero(mod: Modulus, h: int) -> np.ndarray:
    V = _space(mod.m, h)[1:]  # row 0 is the zero vector, which is skipped
    return V[(V * V).sum(axis=1) % mod.m == 0]


def _check_space(mod, h, limit):
    if h < 1:
        raise ValueError("h must be positive")
    if mod.m ** h > limit:
        raise GuardExceeded(f"m^h = {mod.m ** h} exceeds {limit}")


def greedy_family(mod: Modulus, h: int, cap: Optional[int] = None,
                  max_space: int = GREEDY_MAX_SPACE) -> MatchingFamily:
    """Keep each self-orthogonal nonzero vector compatible with everything kept so far."""
    _check_space(mod, h, max_space)
    C = _self_orthogonal_nonzero(mod, h)
    S = np.array(canonical_set(mod), dtype=np.int64)
    alive = np.ones(len(C), dtype=bool)
    kept = []
    start = 0
    while cap is None or len(kept) < cap:
        rest = np.flatnonzero(alive[start:])
        if not len(rest):
            break
        idx = start + int(rest[0])
        w = C[idx]
        kept.append(tuple(int(x) for x in w))
        alive &= np.isin((C @ w) % mod.m, S)
        start = idx + 1
    if not kept and cap != 0:
        # nothing nonzero is self-orthogonal; the zero vector alone is still a family
        kept.append((0,) * h)
    return MatchingFamily(mod, h, tuple(kept))


def clique_family(mod: Modulus, h: int, max_space: int = CLIQUE_MAX_SPACE) -> MatchingFamily:
    """A maximum family, via a maximum clique of the compatibility graph."""
    _check_space(mod, h, max_space)
    C = _self_orthogonal_nonzero(mod, h)
    S = np.array(canonical_set(mod), dtype=np.int64)
    ok = np.isin((C @ C.T) % mod.m, S)
    G = nx.Graph()
    G.add_nodes_from(range(len(C)))
    G.add_edges_from(zip(*np.nonzero(np.triu(ok, 1))))
    clique, _ = nx.max_weight_clique(G, weight=None)
    return MatchingFamily(mod, h, tuple(tuple(int(x) for x in C[i]) for i in sorted(clique)))
