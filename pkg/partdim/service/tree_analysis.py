"""Exterior major vertices, the tree parameters built on them, and the
tree partition construction.

A major vertex has degree at least three. A leaf u is a terminal of the major
vertex w when w is strictly closer to u than any other major vertex. M(G)
holds the exterior major vertices with at least two terminals.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from partdim.config import get_settings
from partdim.errors import (
    ConstructionFailed,
    InfeasibleK,
    NoExteriorMajorVertex,
    NotATree,
    PathHasNoProfile,
)
from partdim.service.graph_core import Graph, VertexPartition, is_tree
from partdim.service.metric_dim import FORMULA, MetricSolveResult
from partdim.service.partition_dim import (
    BoundReport,
    is_k_partition_generator,
    pd_k_bruteforce,
)
from partdim.service.resolve_core import dimensional_value
from partdim.utils import half_ceil, half_floor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MajorVertexRecord:
    w: int
    terminals: Tuple[int, ...]
    leg_lengths: Dict[int, int] = field(hash=False)

    @property
    def ter(self) -> int:
        return len(self.terminals)

    @property
    def l(self) -> int:
        return min(self.leg_lengths.values())

    @property
    def varsigma(self) -> Optional[int]:
        """Shortest terminal-to-terminal path through w (None with a single terminal)"""
        if self.ter < 2:
            return None
        first, second = sorted(self.leg_lengths.values())[:2]
        return first + second

    def ordered_terminals(self) -> List[int]:
        """Terminals by ascending leg length, ties by vertex id"""
        return sorted(self.terminals, key=lambda u: (self.leg_lengths[u], u))


@dataclass(frozen=True)
class LevelClass:
    """Vertices of M(T) sharing the same l value, with t = max ter among them"""

    l: int
    members: Tuple[int, ...]
    t: int


@dataclass(frozen=True)
class ExteriorMajorProfile:
    exterior: Tuple[MajorVertexRecord, ...]

    @property
    def records(self) -> Tuple[MajorVertexRecord, ...]:
        """Records of M(G)"""
        return tuple(r for r in self.exterior if r.ter >= 2)

    @property
    def varsigma(self) -> Optional[int]:
        values = [r.varsigma for r in self.records]
        return min(values) if values else None

    def record(self, w: int) -> MajorVertexRecord:
        return next(r for r in self.exterior if r.w == w)


@dataclass(frozen=True)
class TreeMetricProfile:
    records: Tuple[MajorVertexRecord, ...]
    varsigma: int
    levels: Tuple[LevelClass, ...]

    @property
    def kappa(self) -> int:
        return len(self.records)

    @property
    def tau(self) -> int:
        return max(r.ter for r in self.records)

    @property
    def level_values(self) -> Tuple[int, ...]:
        return tuple(c.l for c in self.levels)

    @property
    def level_maxima(self) -> Tuple[int, ...]:
        return tuple(c.t for c in self.levels)

    def s_k(self, k: int) -> int:
        """Largest (1-based) level index with l_i <= floor(k/2); 1 when there is none"""
        half = half_floor(k)
        eligible = [i for i, c in enumerate(self.levels, 1) if c.l <= half]
        return eligible[-1] if eligible else 1

    def record(self, w: int) -> MajorVertexRecord:
        return next(r for r in self.records if r.w == w)


def _major_vertices(g: Graph) -> List[int]:
    return [v for v in range(g.n) if g.degree(v) >= 3]


def exterior_major_profile(g: Graph) -> ExteriorMajorProfile:
    """Exterior major vertices of a connected graph from the distance definition"""
    d = g.distances
    majors = _major_vertices(g)
    terminals: Dict[int, Dict[int, int]] = {}
    for u in range(g.n):
        if g.degree(u) != 1 or not majors:
            continue
        ranked = sorted(majors, key=lambda w: (d[u, w], w))
        closest = ranked[0]
        if len(ranked) > 1 and d[u, ranked[1]] == d[u, closest]:
            continue
        terminals.setdefault(closest, {})[u] = int(d[u, closest])
    exterior = tuple(
        MajorVertexRecord(w=w, terminals=tuple(sorted(legs)), leg_lengths=dict(legs))
        for w, legs in sorted(terminals.items())
    )
    return ExteriorMajorProfile(exterior=exterior)


def _tree_legs(t: Graph) -> Dict[int, Dict[int, int]]:
    """Walk from every leaf to the first vertex of degree >= 3"""
    terminals: Dict[int, Dict[int, int]] = {}
    for u in range(t.n):
        if t.degree(u) != 1:
            continue
        previous, current, steps = -1, u, 0
        while t.degree(current) < 3:
            step = [v for v in t.neighbors(current) if v != previous]
            if not step:
                break
            previous, current = current, step[0]
            steps += 1
        if t.degree(current) >= 3:
            terminals.setdefault(current, {})[u] = steps
    return terminals


def _require_tree(t: Graph) -> None:
    if not is_tree(t):
        raise NotATree(f"Graph with n={t.n}, m={t.m} is not a tree")
    if all(t.degree(v) <= 2 for v in range(t.n)):
        raise PathHasNoProfile("A path has no exterior major vertex")


def tree_profile(t: Graph) -> TreeMetricProfile:
    _require_tree(t)
    legs = _tree_legs(t)
    records = tuple(
        MajorVertexRecord(w=w, terminals=tuple(sorted(ls)), leg_lengths=dict(ls))
        for w, ls in sorted(legs.items())
        if len(ls) >= 2
    )
    by_level: Dict[int, List[MajorVertexRecord]] = {}
    for r in records:
        by_level.setdefault(r.l, []).append(r)
    levels = tuple(
        LevelClass(l=l, members=tuple(r.w for r in rs), t=max(r.ter for r in rs))
        for l, rs in sorted(by_level.items())
    )
    profile = TreeMetricProfile(
        records=records, varsigma=min(r.varsigma for r in records), levels=levels
    )
    logger.debug(
        f"Tree profile: kappa={profile.kappa}, varsigma={profile.varsigma}, tau={profile.tau}"
    )
    return profile


def varsigma(g: Graph) -> int:
    value = exterior_major_profile(g).varsigma
    if value is None:
        raise NoExteriorMajorVertex("The graph has no exterior major vertex with two terminals")
    return value


def I_k(record: MajorVertexRecord, k: int) -> int:
    """Contribution of one vertex of M(T) to dim_k(T)"""
    if k < 1:
        raise InfeasibleK(f"k must be at least 1, got {k}")
    if record.l <= half_floor(k):
        return (record.ter - 1) * (k - record.l) + record.l
    return (record.ter - 1) * half_ceil(k) + half_floor(k)


def _check_tree_level(profile: TreeMetricProfile, k: int) -> None:
    if not 1 <= k <= profile.varsigma:
        raise InfeasibleK(f"k={k} is outside 1..{profile.varsigma}")


def tree_dim_k(t: Graph, k: int) -> MetricSolveResult:
    """dim_k(T) as the sum of I_k over M(T); no basis is built"""
    profile = tree_profile(t)
    _check_tree_level(profile, k)
    value = sum(I_k(r, k) for r in profile.records)
    logger.info(f"dim_{k}(T) = {value} from {profile.kappa} exterior major vertices")
    return MetricSolveResult(k=k, value=value, basis=None, method=FORMULA)


def script_I_k(t: Graph, k: int) -> int:
    """The tree parameter that bounds the extra blocks in the tree partition construction"""
    profile = tree_profile(t)
    _check_tree_level(profile, k)
    return _script_I_k(profile, k)


def _script_I_k(profile: TreeMetricProfile, k: int) -> int:
    ls = profile.level_values
    ts = profile.level_maxima
    r = len(ls)
    s = profile.s_k(k)
    ceil_half = half_ceil(k)

    value = (ts[0] - 2) * max(k - ls[0], ceil_half)
    for i in range(1, s):
        value += max(ts[i] - max(ts[:i]), 0) * (k - ls[i])
    tail = max(ts[s:]) if s < r else 0
    value += max(tail - max(ts[:s]), 0) * ceil_half
    return value


def _leg_path(t: Graph, w: int, u: int) -> List[int]:
    """Vertices from the neighbour of w down to the terminal u"""
    path = [u]
    previous, current = -1, u
    while True:
        step = next(v for v in t.neighbors(current) if v != previous)
        if step == w:
            break
        previous, current = current, step
        path.append(current)
    path.reverse()
    return path


def _leg_blocks(leg: List[int], count: int) -> List[List[int]]:
    """count - 1 singletons from the w side, then the rest of the leg"""
    return [[v] for v in leg[: count - 1]] + [leg[count - 1 :]]


def tree_partition_construction(t: Graph, k: int, verify: bool = True) -> VertexPartition:
    """Build a k-partition generator of a tree with at most k*kappa + I_k(T) + 1 blocks.

    Per vertex w of M(T) the first terminal leg (shortest, ties by id) gets
    min(l(w), floor(k/2)) blocks and every other leg max(k - l(w), ceil(k/2))
    blocks, cut from w outwards. Legs one and two of every w are kept as their
    own blocks; the j-th blocks of legs three and up are merged across all of
    M(T); whatever is left forms one more block.
    """
    profile = tree_profile(t)
    _check_tree_level(profile, k)

    own_blocks: List[List[int]] = []
    shared: Dict[Tuple[int, int], List[int]] = {}
    for record in profile.records:
        first_count = min(record.l, half_floor(k))
        other_count = max(k - record.l, half_ceil(k))
        for j, u in enumerate(record.ordered_terminals(), 1):
            leg = _leg_path(t, record.w, u)
            count = first_count if j == 1 else other_count
            if count == 0:
                continue
            blocks = _leg_blocks(leg, count)
            if j <= 2:
                own_blocks.extend(blocks)
            else:
                for index, block in enumerate(blocks, 1):
                    shared.setdefault((j, index), []).extend(block)

    used = {v for block in own_blocks for v in block}
    used |= {v for block in shared.values() for v in block}
    rest = [v for v in range(t.n) if v not in used]
    blocks = own_blocks + [shared[key] for key in sorted(shared)] + [rest]
    partition = VertexPartition.from_blocks([b for b in blocks if b], t.n)

    if verify and not is_k_partition_generator(t, partition, k):
        logger.error(f"Tree construction at k={k} failed verification on n={t.n}")
        raise ConstructionFailed(f"Constructed partition is not a {k}-partition generator")
    logger.info(
        f"Tree construction: {len(partition)} blocks, bound {k * profile.kappa + _script_I_k(profile, k) + 1}"
    )
    return partition


def check_tree_bounds(t: Graph, k: int, brute_force: Optional[bool] = None) -> BoundReport:
    """Evaluate the tree inequalities; pd_k is brute-forced only when n allows it"""
    profile = tree_profile(t)
    _check_tree_level(profile, k)
    report = BoundReport(subject=t.family or f"tree(n={t.n})", k=k)
    kappa, tau = profile.kappa, profile.tau

    d_value = dimensional_value(t)
    report.add("d_le_varsigma", "d(T) <= varsigma(T)", d_value, profile.varsigma,
               d_value <= profile.varsigma)
    report.add("d_eq_varsigma", "d(T) = varsigma(T)", d_value, profile.varsigma,
               d_value == profile.varsigma)

    dim = tree_dim_k(t, k).value
    script = _script_I_k(profile, k)
    construction = tree_partition_construction(t, k)
    construction_bound = k * kappa + script + 1
    report.add("construction_size", "|construction| <= k*kappa + I_k(T) + 1",
               len(construction), construction_bound, len(construction) <= construction_bound)

    if brute_force is None:
        brute_force = t.n <= get_settings().partition_max_n
    if not brute_force:
        report.add("pd_brute_force", "pd_k by brute force", None, None, True, "skipped: n too large")
        return report

    pd = pd_k_bruteforce(t, k).value
    report.add("pd_vs_dim", f"pd_{k} <= dim_{k} + 1", pd, dim + 1, pd <= dim + 1)
    report.add("pd_vs_construction", f"pd_{k} <= k*kappa + I_k(T) + 1", pd, construction_bound,
               pd <= construction_bound)
    if k == 2:
        bound = 2 * kappa + tau - 1
        report.add("pd2_corollary", "pd_2 <= 2*kappa + tau - 1", pd, bound, pd <= bound)
    if k == 3:
        bound = 3 * kappa + 2 * tau - 3
        report.add("pd3_corollary", "pd_3 <= 3*kappa + 2*tau - 3", pd, bound, pd <= bound)
    return report
