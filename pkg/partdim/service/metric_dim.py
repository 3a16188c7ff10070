import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from partdim.config import get_settings
from partdim.errors import InfeasibleK, InvalidSet, TooLarge
from partdim.service.graph_core import Graph, VertexPartition
from partdim.service.resolve_core import _check_pair, dimensional_value

logger = logging.getLogger(__name__)

BRUTE_FORCE = "brute_force"
FORMULA = "formula"
CONSTRUCTION = "construction"


@dataclass(frozen=True)
class MetricSolveResult:
    """dim_k(G) with the method that produced it.

    ``basis`` is None when the value comes from a closed formula.
    """

    k: int
    value: int
    basis: Optional[Tuple[int, ...]]
    method: str


def _members(g: Graph, S: Iterable[int]) -> List[int]:
    members = sorted(set(int(v) for v in S))
    if members and (members[0] < 0 or members[-1] >= g.n):
        raise InvalidSet(f"Set has a vertex outside 0..{g.n - 1}")
    return members


def _pair_matrix(g: Graph, rows: Optional[List[int]] = None) -> np.ndarray:
    """Rows are vertices, columns are pairs x < y; entry 1 iff the vertex distinguishes the pair"""
    d = g.distances if rows is None else g.distances[rows]
    iu, ju = np.triu_indices(g.n, k=1)
    return (d[:, iu] != d[:, ju]).astype(np.int32)



def pair_support(g: Graph, S: Iterable[int], x: int, y: int) -> int:
    """|S ∩ D_G(x, y)|"""
    _check_pair(g, x, y)
    members = _members(g, S)
    if not members:
        return 0
    d = g.distances
    return int(np.count_nonzero(d[members, x] != d[members, y]))


def is_k_metric_generator(g: Graph, S: Iterable[int], k: int) -> bool:
    """True iff every pair of distinct vertices is distinguished by at least k elements of S"""
    if k < 1:
        raise InfeasibleK(f"k must be at least 1, got {k}")
    members = _members(g, S)
    if g.n < 2:
        return True
    if not members:
        return False
    support = _pair_matrix(g, members).sum(axis=0)
    return bool((support >= k).all())


def _check_level(g: Graph, k: int) -> int:
    d = dimensional_value(g)
    if k < 1 or k > d:
        raise InfeasibleK(f"k={k} is outside 1..{d}; no {k}-generator exists for this graph")
    return d


def _search_size(pairs: np.ndarray, suffix: np.ndarray, size: int, k: int) -> Optional[List[int]]:
    """Lexicographically least vertex set of the given size hitting every pair k times.

    Per-pair counters are carried down the search; a branch is cut as soon as
    some pair cannot reach k with the vertices and slots still available.
    """
    n = pairs.shape[0]
    chosen: List[int] = []

    def dfs(start: int, counts: np.ndarray) -> bool:
        slots = size - len(chosen)
        if slots == 0:
            return bool((counts >= k).all())
        for v in range(start, n - slots + 1):
            if not (counts + np.minimum(suffix[v], slots) >= k).all():
                return False
            chosen.append(v)
            if dfs(v + 1, counts + pairs[v]):
                return True
            chosen.pop()
        return False

    if dfs(0, np.zeros(pairs.shape[1], dtype=np.int32)):
        return chosen
    return None


def dim_k_bruteforce(
    g: Graph, k: int, max_n: Optional[int] = None, force: bool = False
) -> MetricSolveResult:
    """Exact dim_k(G) by searching vertex subsets in ascending cardinality.

    Within a cardinality subsets are tried in lexicographic order, so the
    returned basis is the lexicographically least minimum k-metric generator.
    """
    limit = max_n if max_n is not None else get_settings().metric_max_n
    if g.n > limit and not force:
        raise TooLarge(f"n={g.n} exceeds the metric brute-force limit {limit}")
    _check_level(g, k)

    pairs = _pair_matrix(g)
    suffix = np.cumsum(pairs[::-1], axis=0)[::-1]
    suffix = np.vstack([suffix, np.zeros((1, pairs.shape[1]), dtype=suffix.dtype)])

    for size in range(k, g.n + 1):
        logger.debug(f"dim_{k}: trying cardinality {size}")
        basis = _search_size(pairs, suffix, size, k)
        if basis is not None:
            logger.info(f"dim_{k} = {size} (basis {basis})")
            return MetricSolveResult(k=k, value=size, basis=tuple(basis), method=BRUTE_FORCE)
    # V itself is a d(G)-generator, so the loop always returns for feasible k
    raise InfeasibleK(f"No {k}-metric generator found")


def check_dim_upper_bound(g: Graph, k: int) -> bool:
    """dim_k(G) <= n - d(G) + k"""
    d = _check_level(g, k)
    value = dim_k_bruteforce(g, k).value
    return value <= g.n - d + k


def is_k_metric_dimensional(g: Graph, k: int) -> bool:
    """True iff a k-metric generator exists but no (k+1)-metric generator does"""
    vertices = range(g.n)
    return is_k_metric_generator(g, vertices, k) and not is_k_metric_generator(g, vertices, k + 1)


def metric_basis_to_partition(g: Graph, basis: Iterable[int]) -> VertexPartition:
    """Singletons of the basis plus one block holding everything else"""
    members = _members(g, basis)
    rest = [v for v in range(g.n) if v not in set(members)]
    blocks = [[v] for v in members] + ([rest] if rest else [])
    return VertexPartition.from_blocks(blocks, g.n)
