import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx
import numpy as np

from partdim.errors import InvalidPair, InvalidSet, TrivialGraph
from partdim.service.graph_core import Graph

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class DistinguishProfile:
    """Per-pair distinguishing data of a connected graph.

    ``counts[x, y]`` is |D_G(x, y)| (zero on the diagonal); ``d_min`` and
    ``d_max`` are its minimum and maximum over pairs x != y. Only the n x n
    count matrix is kept; distinguishing sets are read off distance columns.
    """

    n: int
    distances: np.ndarray
    counts: np.ndarray
    d_min: int
    d_max: int
    min_pair: Pair
    max_pair: Pair

    def pair_set(self, x: int, y: int) -> FrozenSet[int]:
        d = self.distances
        return frozenset(int(z) for z in np.flatnonzero(d[:, x] != d[:, y]))


def _check_pair(g: Graph, x: int, y: int) -> None:
    if not (0 <= x < g.n and 0 <= y < g.n):
        raise InvalidPair(f"Pair ({x}, {y}) has a vertex outside 0..{g.n - 1}")
    if x == y:
        raise InvalidPair(f"Pair ({x}, {y}) repeats a vertex")


def _require_nontrivial(g: Graph) -> None:
    if g.n < 2:
        raise TrivialGraph(f"Resolvability needs at least two vertices, got n={g.n}")


def distinguishing_counts(g: Graph) -> np.ndarray:
    """Matrix C with C[x, y] = |D_G(x, y)|, filled one row at a time"""
    d = g.distances
    counts = np.zeros((g.n, g.n), dtype=np.int32)
    for x in range(g.n):
        counts[x] = (d != d[:, [x]]).sum(axis=0)
    return counts


@lru_cache(maxsize=32)
def distinguish_profile(g: Graph) -> DistinguishProfile:
    _require_nontrivial(g)
    counts = distinguishing_counts(g)
    iu, ju = np.triu_indices(g.n, k=1)
    upper = counts[iu, ju]
    lo, hi = int(np.argmin(upper)), int(np.argmax(upper))
    profile = DistinguishProfile(
        n=g.n,
        distances=g.distances,
        counts=counts,
        d_min=int(upper[lo]),
        d_max=int(upper[hi]),
        min_pair=(int(iu[lo]), int(ju[lo])),
        max_pair=(int(iu[hi]), int(ju[hi])),
    )
    logger.debug(f"Distinguish profile n={g.n}: d={profile.d_min}, d*={profile.d_max}")
    return profile


def distinguishing_set(g: Graph, x: int, y: int) -> FrozenSet[int]:
    """D_G(x, y): the vertices z with d(z, x) != d(z, y)"""
    _check_pair(g, x, y)
    d = g.distances
    return frozenset(int(z) for z in np.flatnonzero(d[:, x] != d[:, y]))


def dimensional_value(g: Graph) -> int:
    """The minimum |D_G(x, y)| over all pairs"""
    return distinguish_profile(g).d_min


def dimensional_value_max(g: Graph) -> int:
    """The maximum |D_G(x, y)| over all pairs"""
    return distinguish_profile(g).d_max


def pairs_attaining(g: Graph, value: int) -> List[Pair]:
    counts = distinguish_profile(g).counts
    return [(x, y) for x in range(g.n) for y in range(x + 1, g.n) if counts[x, y] == value]


def twin_classes(g: Graph) -> List[List[int]]:
    """Classes of the twin relation N(x) = N(y) or N[x] = N[y].

    Vertices are grouped by open and by closed neighbourhood keys, and the two
    groupings are merged.
    """
    merged = nx.utils.UnionFind(range(g.n))
    open_keys: Dict[FrozenSet[int], List[int]] = {}
    closed_keys: Dict[FrozenSet[int], List[int]] = {}
    for v in range(g.n):
        nbrs = frozenset(g.neighbors(v))
        open_keys.setdefault(nbrs, []).append(v)
        closed_keys.setdefault(nbrs | {v}, []).append(v)
    for group in list(open_keys.values()) + list(closed_keys.values()):
        merged.union(*group)
    classes = [sorted(c) for c in merged.to_sets()]
    classes.sort(key=lambda c: c[0])
    return classes


def has_nontrivial_twin(g: Graph) -> bool:
    return any(len(c) >= 2 for c in twin_classes(g))


def clique_number(g: Graph) -> int:
    """Exact clique number by branch and bound with a greedy colouring bound.

    Intended for small graphs (n up to about 20).
    """
    adj = [set(nbrs) for nbrs in g.adjacency]
    best = 0

    def colour_order(candidates: List[int]) -> List[Tuple[int, int]]:
        classes: List[List[int]] = []
        for v in candidates:
            for cls in classes:
                if not any(u in adj[v] for u in cls):
                    cls.append(v)
                    break
            else:
                classes.append([v])
        return [(v, colour) for colour, cls in enumerate(classes, 1) for v in cls]

    def expand(size: int, candidates: List[int]) -> None:
        nonlocal best
        order = colour_order(candidates)
        for i in range(len(order) - 1, -1, -1):
            v, colour = order[i]
            if size + colour <= best:
                return
            remaining = [u for u, _ in order[:i] if u in adj[v]]
            if remaining:
                expand(size + 1, remaining)
            elif size + 1 > best:
                best = size + 1

    start = sorted(range(g.n), key=lambda v: (-len(adj[v]), v))
    expand(0, start)
    return best


def set_distance(g: Graph, u: int, S: Iterable[int]) -> int:
    """d(u, S) = min over v in S of d(u, v)"""
    members = sorted(set(int(v) for v in S))
    if not members:
        raise InvalidSet("Set distance to an empty set is undefined")
    if not 0 <= u < g.n or members[0] < 0 or members[-1] >= g.n:
        raise InvalidSet(f"Vertex outside 0..{g.n - 1}")
    return int(g.distances[u, members].min())
