import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from partdim.config import get_settings
from partdim.errors import InfeasibleK, InvalidParams, InvalidPartition, TooLarge
from partdim.service.graph_core import Graph, VertexPartition, is_path
from partdim.service.metric_dim import BRUTE_FORCE, CONSTRUCTION, dim_k_bruteforce
from partdim.service.resolve_core import (
    Pair,
    _check_pair,
    dimensional_value,
    dimensional_value_max,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionSolveResult:
    k: int
    value: int
    basis: VertexPartition
    method: str


@dataclass(frozen=True)
class BoundCheck:
    """One inequality evaluated with exact values"""

    name: str
    statement: str
    lhs: Optional[int]
    rhs: Optional[int]
    holds: bool
    detail: str = ""


@dataclass
class BoundReport:
    subject: str
    k: int
    checks: List[BoundCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def add(self, name: str, statement: str, lhs, rhs, holds: bool, detail: str = "") -> None:
        self.checks.append(BoundCheck(name, statement, lhs, rhs, bool(holds), detail))


def _check_partition(g: Graph, partition: VertexPartition) -> None:
    if partition.n != g.n:
        raise InvalidPartition(f"Partition covers {partition.n} vertices, graph has {g.n}")


def block_distances(g: Graph, partition: VertexPartition) -> np.ndarray:
    """Matrix of d(v, S) for every vertex v (rows) and block S (columns)"""
    d = g.distances
    return np.column_stack([d[:, list(block)].min(axis=1) for block in partition.blocks])


def _support_matrix(sd: np.ndarray) -> np.ndarray:
    return (sd[:, None, :] != sd[None, :, :]).sum(axis=2)


def pair_block_support(g: Graph, partition: VertexPartition, x: int, y: int) -> int:
    """Number of blocks S with d(x, S) != d(y, S)"""
    _check_pair(g, x, y)
    _check_partition(g, partition)
    sd = block_distances(g, partition)
    return int(np.count_nonzero(sd[x] != sd[y]))


def min_pair_block_support(g: Graph, partition: VertexPartition) -> Tuple[int, Pair]:
    """Smallest pair support and the lexicographically least pair attaining it"""
    _check_partition(g, partition)
    support = _support_matrix(block_distances(g, partition))
    iu, ju = np.triu_indices(g.n, k=1)
    upper = support[iu, ju]
    worst = int(np.argmin(upper))
    return int(upper[worst]), (int(iu[worst]), int(ju[worst]))


def _full_check(sd: np.ndarray, k: int) -> bool:
    support = _support_matrix(sd)
    iu, ju = np.triu_indices(sd.shape[0], k=1)
    return bool((support[iu, ju] >= k).all())


def _same_block_check(sd: np.ndarray, labels: np.ndarray, k: int) -> bool:
    """Check only pairs sharing a block; enough for k <= 2.

    Vertices in different blocks are already told apart by those two blocks.
    """
    for label in np.unique(labels):
        members = np.flatnonzero(labels == label)
        if len(members) < 2:
            continue
        block_sd = sd[members]
        support = _support_matrix(block_sd)
        iu, ju = np.triu_indices(len(members), k=1)
        if (support[iu, ju] < k).any():
            return False
    return True


def is_k_partition_generator(
    g: Graph, partition: VertexPartition, k: int, fast: bool = True
) -> bool:
    """True iff every pair of distinct vertices is distinguished by at least k blocks.

    With ``fast`` and k in {1, 2} only same-block pairs are examined.
    """
    if k < 1:
        raise InfeasibleK(f"k must be at least 1, got {k}")
    _check_partition(g, partition)
    if g.n < 2:
        return True
    sd = block_distances(g, partition)
    if fast and k <= 2:
        return _same_block_check(sd, partition.labels, k)
    return _full_check(sd, k)


def restricted_growth_strings(n: int, m: int) -> Iterator[Tuple[int, ...]]:
    """Set partitions of 0..n-1 into exactly m blocks, as restricted-growth strings.

    a[0] = 0 and a[i] <= 1 + max(a[:i]); strings come out in lexicographic order.
    """
    if n == 0:
        if m == 0:
            yield ()
        return
    if not 1 <= m <= n:
        return
    a = [0] * n

    def rec(i: int, used: int) -> Iterator[Tuple[int, ...]]:
        if n - i < m - used:
            return
        if i == n:
            yield tuple(a)
            return
        for b in range(min(used + 1, m)):
            a[i] = b
            yield from rec(i + 1, max(used, b + 1))

    yield from rec(1, 1)


def _labels_block_distances(d: np.ndarray, labels: np.ndarray, m: int) -> np.ndarray:
    return np.column_stack([d[:, labels == b].min(axis=1) for b in range(m)])


def pd_k_bruteforce(
    g: Graph, k: int, max_n: Optional[int] = None, force: bool = False
) -> PartitionSolveResult:
    """Exact pd_k(G) by enumerating set partitions in ascending block count.

    The first verified generator in restricted-growth order is returned, so
    the certificate is deterministic and every smaller block count has been
    exhausted.
    """
    limit = max_n if max_n is not None else get_settings().partition_max_n
    if g.n > limit and not force:
        raise TooLarge(f"n={g.n} exceeds the partition brute-force limit {limit}")
    d_value = dimensional_value(g)
    if k < 1 or k > d_value:
        raise InfeasibleK(f"k={k} is outside 1..{d_value}; no {k}-partition generator exists")

    d = g.distances
    for m in range(max(2, k), g.n + 1):
        tried = 0
        for rgs in restricted_growth_strings(g.n, m):
            tried += 1
            labels = np.asarray(rgs)
            sd = _labels_block_distances(d, labels, m)
            ok = _same_block_check(sd, labels, k) if k <= 2 else _full_check(sd, k)
            if ok:
                basis = VertexPartition.from_labels(rgs)
                logger.info(f"pd_{k} = {m} after {tried} partitions at that size")
                return PartitionSolveResult(k=k, value=m, basis=basis, method=BRUTE_FORCE)
        logger.debug(f"pd_{k}: no generator with {m} blocks ({tried} partitions)")
    raise InfeasibleK(f"No {k}-partition generator found")


def max_partition_resolvability(g: Graph) -> Tuple[int, VertexPartition]:
    """Max over all set partitions of the minimum pair support, with a witness"""
    d = g.distances
    iu, ju = np.triu_indices(g.n, k=1)
    best, witness = -1, None
    for m in range(1, g.n + 1):
        for rgs in restricted_growth_strings(g.n, m):
            labels = np.asarray(rgs)
            support = _support_matrix(_labels_block_distances(d, labels, m))
            value = int(support[iu, ju].min())
            if value > best:
                best, witness = value, rgs
    return best, VertexPartition.from_labels(witness)


def is_k_partition_dimensional(g: Graph, k: int) -> bool:
    return max_partition_resolvability(g)[0] == k


def singleton_partition(n: int) -> VertexPartition:
    return VertexPartition.from_blocks([[v] for v in range(n)], n)


def pair_merge_partition(n: int, x: int, y: int) -> VertexPartition:
    """{x, y} as one block, every other vertex a singleton"""
    if x == y:
        raise InvalidParams(f"Cannot merge vertex {x} with itself")
    blocks = [[x, y]] + [[v] for v in range(n) if v not in (x, y)]
    return VertexPartition.from_blocks(blocks, n)


def path_partition_construction(n: int, k: int) -> VertexPartition:
    """k+1 blocks of consecutive path vertices, the first r of size q+1 and the rest of size q,
    where n = (k+1)q + r."""
    if n < 3:
        raise InvalidParams(f"Path construction needs n >= 3, got {n}")
    if not 1 <= k <= n - 1:
        raise InfeasibleK(f"k={k} is outside 1..{n - 1} for a path on {n} vertices")
    q, r = divmod(n, k + 1)
    blocks, start = [], 0
    for j in range(k + 1):
        size = q + 1 if j < r else q
        blocks.append(list(range(start, start + size)))
        start += size
    return VertexPartition.from_blocks(blocks, n)


def pd_equals_n_criterion(g: Graph, k: int) -> bool:
    """d*(G) <= k + 1, which forces pd_k(G) = n (and is equivalent to it for k in {1, 2})"""
    d_value = dimensional_value(g)
    if k < 1 or k > d_value:
        raise InfeasibleK(f"k={k} is outside 1..{d_value}")
    return dimensional_value_max(g) <= k + 1


def check_pd_bounds(g: Graph, k: int) -> BoundReport:
    """Evaluate the general pd_k inequalities with brute-force values"""
    n = g.n
    d_value = dimensional_value(g)
    d_star = dimensional_value_max(g)
    report = BoundReport(subject=g.family or f"graph(n={n})", k=k)

    pd = pd_k_bruteforce(g, k).value
    dim = dim_k_bruteforce(g, k).value

    low = 2 if k == 1 else k
    report.add("pd_range", f"{low} <= pd_{k} <= n", pd, n, low <= pd <= n)
    if k > 1:
        pd_prev = pd_k_bruteforce(g, k - 1).value
        report.add("pd_monotone", f"pd_{k - 1} <= pd_{k}", pd_prev, pd, pd_prev <= pd)

    is_k2 = n == 2
    report.add(
        "pd_equals_k",
        "pd_k = k iff k = 2 and G is K_2",
        pd,
        k,
        (pd == k) == (k == 2 and is_k2),
    )

    if k < d_value or dim < n:
        report.add("pd_vs_dim", f"pd_{k} <= dim_{k} + 1", pd, dim + 1, pd <= dim + 1)
    else:
        report.add("pd_vs_dim", f"pd_{k} <= dim_{k} (dim = n)", pd, dim, pd <= dim)

    report.add("dim_upper", f"dim_{k} <= n - d + k", dim, n - d_value + k, dim <= n - d_value + k)
    if k < d_value:
        bound = n - d_value + k + 1
        report.add("pd_upper", f"pd_{k} <= n - d + k + 1", pd, bound, pd <= bound)
        if pd == n:
            report.add(
                "pd_n_level",
                "pd_k = n only for k in {d-1, d}",
                k,
                d_value - 1,
                k >= d_value - 1,
            )

    criterion = d_star <= k + 1
    if k <= 2:
        report.add("pd_n_iff", f"pd_{k} = n iff d* <= {k + 1}", pd, n, (pd == n) == criterion)
    elif criterion:
        report.add("pd_n_if", f"d* <= {k + 1} implies pd_{k} = n", pd, n, pd == n)
    if d_value == d_star and k >= d_value - 1:
        report.add("pd_n_at_top", f"d = d* implies pd_{k} = n", pd, n, pd == n)
    if k == 1:
        path = is_path(g)
        report.add("pd1_path", "pd_1 = 2 iff G is a path", pd, 2, (pd == 2) == path,
                   "path" if path else "not a path")
    return report


def construction_result(
g: Graph, partition: VertexPartition, k: int) -> PartitionSolveResult:
    return PartitionSolveResult(k=k, value=len(partition), basis=partition, method=CONSTRUCTION)
