"""Theorem-check suites over graph corpora.

Each suite expands into tasks, one per graph instance. Tasks run on a joblib
pool and return check rows; rows are reassembled in task-key order so a
report never depends on scheduling.
"""

import logging
import os
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from joblib import Parallel, delayed
from tabulate import tabulate
from tqdm import tqdm

from partdim.config import get_settings
from partdim.errors import InvalidParams, PartdimError
from partdim.service.graph_core import (
    Graph,
    cartesian_product,
    from_networkx,
    generate,
    is_path,
)
from partdim.service.graph_io import load_graph, read_partition
from partdim.service.metric_dim import dim_k_bruteforce
from partdim.service.partition_dim import (
    check_pd_bounds,
    is_k_partition_generator,
    max_partition_resolvability,
    min_pair_block_support,
    path_partition_construction,
    pd_k_bruteforce,
)
from partdim.service.resolve_core import (
    clique_number,
    dimensional_value,
    dimensional_value_max,
    has_nontrivial_twin,
)
from partdim.service.tree_analysis import (
    check_tree_bounds,
    exterior_major_profile,
    script_I_k,
    tree_dim_k,
    tree_partition_construction,
    tree_profile,
)

logger = logging.getLogger(__name__)

GRAPHS_DIR = os.path.join(os.path.dirname(__file__), "../../static/graphs")

MIXED_TERMINAL_GRAPH = "mixed_terminal_graph.edges"
TWO_FORKS_TREE = "two_forks_tree.edges"
THREE_LEVEL_SPIDER = "three_level_spider.edges"

# 2-partition generators of the two-forks tree: the shipped certificate and a basis
TWO_FORKS_PARTITION = "0\n1\n2 3 4 5 6 7\n8\n9\n"
TWO_FORKS_SMALLEST_PARTITION = "0 2 3 4 5 7\n1 6\n8\n9\n"

SUITES = ("paths", "cycles", "complete", "trees", "exhaustive", "reference", "products")


@dataclass(frozen=True)
class CheckRow:
    instance: str
    check: str
    expected: Any
    actual: Any
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SweepTask:
    """One graph instance of a suite; ``key`` fixes its place in the report"""

    key: Tuple
    label: str
    runner: str
    args: Tuple = ()


@dataclass
class SweepResult:
    suite: str
    rows: List[CheckRow]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> List[CheckRow]:
        return [r for r in self.rows if not r.passed]

    def table(self) -> str:
        data = [
            [r.instance, r.check, r.expected, r.actual, "pass" if r.passed else "FAIL"]
            for r in self.rows
        ]
        return tabulate(data, headers=["instance", "check", "expected", "actual", "status"])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "checks": len(self.rows),
            "failed": len(self.failures),
            "rows": [asdict(r) for r in self.rows],
        }


def graph_file(name: str) -> str:
    return os.path.normpath(os.path.join(GRAPHS_DIR, name))


def connected_graphs(n: int) -> List[Graph]:
    """All connected graphs on n vertices up to isomorphism.

    Every connected graph has a vertex whose removal keeps it connected, so
    extending each representative on n-1 vertices by one new vertex with a
    nonempty neighbourhood reaches every isomorphism class. Candidates are
    bucketed by edge count and degree sequence and compared with
    ``nx.is_isomorphic`` inside a bucket.
    """
    if n < 1:
        raise InvalidParams(f"n must be positive, got {n}")
    reps: List[nx.Graph] = [nx.empty_graph(1)]
    for size in range(2, n + 1):
        buckets: Dict[Tuple, List[nx.Graph]] = {}
        ordered: List[nx.Graph] = []
        new = size - 1
        for base in reps:
            for count in range(1, size):
                for nbrs in combinations(range(new), count):
                    G = base.copy()
                    G.add_edges_from((new, v) for v in nbrs)
                    key = (G.number_of_edges(), tuple(sorted(d for _, d in G.degree())))
                    bucket = buckets.setdefault(key, [])
                    if any(nx.is_isomorphic(G, other) for other in bucket):
                        continue
                    bucket.append(G)
                    ordered.append(G)
        reps = ordered
        logger.debug(f"{len(reps)} connected graphs on {size} vertices")
    graphs = [from_networkx(G) for G in reps]
    graphs.sort(key=lambda g: (g.m, g.edges))
    return [
        Graph(n=g.n, adjacency=g.adjacency, family=f"connected({n})#{i}")
        for i, g in enumerate(graphs)
    ]


def _row(label: str, check: str, expected: Any, actual: Any, passed: Optional[bool] = None,
         detail: str = "") -> CheckRow:
    if passed is None:
        passed = expected == actual
    return CheckRow(label, check, expected, actual, bool(passed), detail)


# --- per-instance runners; each returns the rows of one graph ---------------


def _run_path(label: str, n: int) -> List[CheckRow]:
    g = generate("path", n)
    rows = [_row(label, "d", n - 1, dimensional_value(g))]
    for k in range(1, n):
        rows.append(_row(label, f"pd_{k} (brute)", k + 1, pd_k_bruteforce(g, k).value))
        partition = path_partition_construction(n, k)
        rows.append(_row(label, f"construction k={k} verifies", True,
                         is_k_partition_generator(g, partition, k)))
    return rows


def _run_path_construction(label: str, n: int) -> List[CheckRow]:
    g = generate("path", n)
    rows = []
    for k in range(1, n):
        partition = path_partition_construction(n, k)
        ok = len(partition) == k + 1 and is_k_partition_generator(g, partition, k)
        rows.append(_row(label, f"construction k={k}", True, ok))
    return [_row(label, "construction verifies for all k", True, all(r.passed for r in rows),
                 detail=f"{len(rows)} levels")]


def _run_cycle(label: str, n: int) -> List[CheckRow]:
    g = generate("cycle", n)
    expected = n - 1 if n % 2 else n - 2
    return [
        _row(label, "d", expected, dimensional_value(g)),
        _row(label, "pd_1 (brute)", 3, pd_k_bruteforce(g, 1).value),
    ]


def _run_complete(label: str, n: int) -> List[CheckRow]:
    g = generate("complete", n)
    rows = [
        _row(label, "d", 2, dimensional_value(g)),
        _row(label, "d*", 2, dimensional_value_max(g)),
        _row(label, "pd_1 (brute)", n, pd_k_bruteforce(g, 1).value),
    ]
    if n >= 3:
        rows.append(_row(label, "pd_2 (brute)", n, pd_k_bruteforce(g, 2).value))
        h = generate("complete_minus_edge", n)
        minus = f"complete_minus_edge({n})"
        rows.append(_row(minus, "d*", 3, dimensional_value_max(h)))
        rows.append(_row(minus, "pd_2 (brute)", n, pd_k_bruteforce(h, 2).value))
    return rows


def _run_fan(label: str, n: int, k: int, expected: int) -> List[CheckRow]:
    g = generate("fan", n)
    return [_row(label, f"pd_{k} (brute)", expected, pd_k_bruteforce(g, k).value)]


def _run_product(label: str, left: Tuple[str, int], right: Tuple[str, int]) -> List[CheckRow]:
    g = cartesian_product(generate(*left), generate(*right))
    d_value = dimensional_value(g)
    return [_row(label, "d >= 3", ">= 3", d_value, d_value >= 3)]


def _tree_rows(label: str, t: Graph, pd_max_n: int) -> List[CheckRow]:
    profile = tree_profile(t)
    rows = [_row(label, "d = varsigma", profile.varsigma, dimensional_value(t))]
    previous_i = None
    for k in range(1, profile.varsigma + 1):
        formula = tree_dim_k(t, k).value
        rows.append(_row(label, f"dim_{k} formula = brute", dim_k_bruteforce(t, k).value, formula))
        script = script_I_k(t, k)
        if previous_i is not None and script < previous_i:
            logger.warning(f"{label}: I_k decreased from {previous_i} to {script} at k={k}")
        previous_i = script
        report = check_tree_bounds(t, k, brute_force=t.n <= pd_max_n)
        for check in report.checks:
            if check.name == "d_eq_varsigma" or check.name == "d_le_varsigma":
                continue
            rows.append(_row(label, f"k={k} {check.statement}", check.rhs, check.lhs, check.holds,
                             check.detail))
    return rows


def _run_random_tree(label: str, n: int, seed: int, pd_max_n: int) -> List[CheckRow]:
    return _tree_rows(label, generate("random_tree", n, seed=seed), pd_max_n)


def _run_large_tree(label: str, n: int, seed: int) -> List[CheckRow]:
    t = generate("random_tree", n, seed=seed)
    profile = tree_profile(t)
    rows = []
    for k in range(1, profile.varsigma + 1):
        partition = tree_partition_construction(t, k, verify=False)
        bound = k * profile.kappa + script_I_k(t, k) + 1
        rows.append(_row(label, f"k={k} construction verifies", True,
                         is_k_partition_generator(t, partition, k)))
        rows.append(_row(label, f"k={k} |construction| <= bound", bound, len(partition),
                         len(partition) <= bound))
    return rows


def _run_exhaustive(label: str, g: Graph, oracle: bool) -> List[CheckRow]:
    n = g.n
    d_value = dimensional_value(g)
    rows = [_row(label, "d = 2 iff twins", has_nontrivial_twin(g), d_value == 2)]
    if g.m < n * (n - 1) // 2:
        bound = n - clique_number(g) + 1
        rows.append(_row(label, "d <= n - omega + 1", bound, d_value, d_value <= bound))
    profile = exterior_major_profile(g)
    if profile.varsigma is not None:
        rows.append(_row(label, "d <= varsigma", profile.varsigma, d_value,
                         d_value <= profile.varsigma))
    if oracle:
        best, _ = max_partition_resolvability(g)
        rows.append(_row(label, "max partition resolvability = d", d_value, best))
    for k in range(1, d_value + 1):
        report = check_pd_bounds(g, k)
        for check in report.checks:
            rows.append(_row(label, f"k={k} {check.statement}", check.rhs, check.lhs, check.holds,
                             check.detail))
    return rows


def _run_reference(label: str) -> List[CheckRow]:
    if label == MIXED_TERMINAL_GRAPH:
        g = load_graph(graph_file(label))
        profile = exterior_major_profile(g)
        records = profile.records
        return [
            _row(label, "M", [2, 4, 14], [r.w for r in records]),
            _row(label, "l per vertex of M", [1, 1, 2], [r.l for r in records]),
            _row(label, "varsigma per vertex of M", [3, 3, 4], [r.varsigma for r in records]),
            _row(label, "varsigma", 3, profile.varsigma),
            _row(label, "d <= varsigma", 3, dimensional_value(g), dimensional_value(g) <= 3),
        ]
    if label == TWO_FORKS_TREE:
        t = load_graph(graph_file(label))
        partition = read_partition(TWO_FORKS_PARTITION, t)
        support, pair = min_pair_block_support(t, partition)
        construction = tree_partition_construction(t, 2)
        return [
            _row(label, "dim_2 (formula)", 4, tree_dim_k(t, 2).value),
            _row(label, "dim_2 (brute)", 4, dim_k_bruteforce(t, 2).value),
            _row(label, "pd_2 (brute)", 4, pd_k_bruteforce(t, 2).value),
            _row(label, "four-block partition verifies at k=2", True,
                 is_k_partition_generator(t, read_partition(TWO_FORKS_SMALLEST_PARTITION, t), 2)),
            _row(label, "shipped partition verifies at k=2", True,
                 is_k_partition_generator(t, partition, 2)),
            _row(label, "shipped partition min support", 2, support, detail=f"pair {pair}"),
            _row(label, "construction size <= 5", 5, len(construction), len(construction) <= 5),
        ]
    t = load_graph(graph_file(label))
    profile = tree_profile(t)
    construction = tree_partition_construction(t, 6)
    return [
        _row(label, "l levels", (1, 2, 3), profile.level_values),
        _row(label, "t levels", (3, 4, 5), profile.level_maxima),
        _row(label, "s_6", 3, profile.s_k(6)),
        _row(label, "I_6(T)", 12, script_I_k(t, 6)),
        _row(label, "dim_6 (formula)", 40, tree_dim_k(t, 6).value),
        _row(label, "construction size <= 31", 31, len(construction), len(construction) <= 31),
    ]


RUNNERS: Dict[str, Callable[..., List[CheckRow]]] = {
    "path": _run_path,
    "path_construction": _run_path_construction,
    "cycle": _run_cycle,
    "complete": _run_complete,
    "fan": _run_fan,
    "product": _run_product,
    "random_tree": _run_random_tree,
    "large_tree": _run_large_tree,
    "exhaustive": _run_exhaustive,
    "reference": _run_reference,
}


def _execute(task: SweepTask) -> Tuple[Tuple, List[CheckRow]]:
    try:
        rows = RUNNERS[task.runner](task.label, *task.args)
    except PartdimError as e:
        logger.error(f"Task {task.label} raised {type(e).__name__}: {e}")
        rows = [CheckRow(task.label, "completed", True, False, False, f"{type(e).__name__}: {e}")]
    return task.key, rows


# --- suite planners --------------------------------------------------------


def plan_paths(sizes: Sequence[int], construct_up_to: int = 0) -> List[SweepTask]:
    tasks = [SweepTask((n, 0), f"path({n})", "path", (n,)) for n in sizes]
    if construct_up_to:
        tasks.extend(
            SweepTask((n, 1), f"path({n})", "path_construction", (n,))
            for n in range(max(sizes) + 1, construct_up_to + 1)
        )
    return tasks


def plan_cycles(sizes: Sequence[int]) -> List[SweepTask]:
    return [SweepTask((n,), f"cycle({n})", "cycle", (n,)) for n in sizes if n >= 3]


def plan_complete(sizes: Sequence[int]) -> List[SweepTask]:
    tasks = [SweepTask((0, n), f"complete({n})", "complete", (n,)) for n in sizes if n >= 2]
    tasks.append(SweepTask((1, 4), "fan(4)", "fan", (4, 3, 5)))
    return tasks


def plan_products() -> List[SweepTask]:
    left = [("path", 2), ("complete", 2), ("path", 3), ("cycle", 3), ("complete", 3)]
    right = [(family, n) for n in (3, 4) for family in ("path", "cycle", "complete")]
    tasks = []
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            label = f"{a[0]}({a[1]}) x {b[0]}({b[1]})"
            tasks.append(SweepTask((i, j), label, "product", (a, b)))
    return tasks


def plan_trees(sizes: Sequence[int], count: int, seed: int, pd_max_n: Optional[int] = None,
               large: Iterable[int] = ()) -> List[SweepTask]:
    """``count`` non-path random trees; sizes cycle through ``sizes`` and seeds count up from ``seed``.

    Trees with at most ``pd_max_n`` vertices (PARTDIM_SWEEP_PD_MAX_N by default)
    also get brute-force pd_k checks.
    """
    if pd_max_n is None:
        pd_max_n = get_settings().sweep_pd_max_n
    tasks = []
    current = seed
    for i in range(count):
        n = sizes[i % len(sizes)]
        if n < 4:
            raise InvalidParams(f"Trees on {n} vertices are all paths")
        while is_path(generate("random_tree", n, seed=current)):
            current += 1
        tasks.append(SweepTask((0, i), f"random_tree({n},seed={current})", "random_tree",
                               (n, current, pd_max_n)))
        current += 1
    for i, n in enumerate(large):
        while is_path(generate("random_tree", n, seed=current)):
            current += 1
        tasks.append(SweepTask((1, i), f"random_tree({n},seed={current})", "large_tree",
                               (n, current)))
        current += 1
    return tasks


def plan_exhaustive(sizes: Sequence[int], oracle_max_n: int = 6) -> List[SweepTask]:
    """Every connected graph of each order in ``sizes``; a single order N means 2..N"""
    sizes = list(sizes)
    if len(sizes) == 1:
        sizes = list(range(2, sizes[0] + 1))
    tasks = []
    for n in sizes:
        if n < 2:
            continue
        for i, g in enumerate(connected_graphs(n)):
            tasks.append(SweepTask((n, i), g.family, "exhaustive", (g, n <= oracle_max_n)))
    return tasks


def plan_reference() -> List[SweepTask]:
    names = (MIXED_TERMINAL_GRAPH, TWO_FORKS_TREE, THREE_LEVEL_SPIDER)
    return [SweepTask((i,), name, "reference") for i, name in enumerate(names)]


def plan_suite(suite: str, sizes: Optional[Sequence[int]] = None, count: int = 100,
               seed: int = 7, large: Sequence[int] = (), construct_up_to: int = 0) -> List[SweepTask]:
    if suite == "paths":
        return plan_paths(sizes or range(3, 10), construct_up_to)
    if suite == "cycles":
        return plan_cycles(sizes or range(3, 11))
    if suite == "complete":
        return plan_complete(sizes or range(2, 8))
    if suite == "trees":
        return plan_trees(list(sizes or range(5, 11)), count, seed, large=large)
    if suite == "exhaustive":
        return plan_exhaustive(sizes or range(2, 7))
    if suite == "reference":
        return plan_reference()
    if suite == "products":
        return plan_products()
    raise InvalidParams(f"Unknown suite {suite!r}; known: {', '.join(SUITES)}")


def run_tasks(suite: str, tasks: Sequence[SweepTask], jobs: Optional[int] = None,
              progress: bool = False) -> SweepResult:
    jobs = jobs or get_settings().jobs
    logger.info(f"Running suite {suite}: {len(tasks)} instances on {jobs} worker(s)")
    iterator = tqdm(tasks, desc=suite, disable=not progress)
    if jobs == 1:
        results = [_execute(task) for task in iterator]
    else:
        results = Parallel(n_jobs=jobs)(delayed(_execute)(task) for task in iterator)
    results.sort(key=lambda item: item[0])
    rows = [row for _, task_rows in results for row in task_rows]
    result = SweepResult(suite=suite, rows=rows)
    if result.passed:
        logger.info(f"Suite {suite}: all {len(rows)} checks passed")
    else:
        logger.warning(f"Suite {suite}: {len(result.failures)} of {len(rows)} checks failed")
    return result


def run_suite(suite: str, sizes: Optional[Sequence[int]] = None, count: int = 100, seed: int = 7,
              large: Sequence[int] = (), construct_up_to: int = 0, jobs: Optional[int] = None,
              progress: bool = False) -> SweepResult:
    tasks = plan_suite(suite, sizes, count, seed, large=large, construct_up_to=construct_up_to)
    return run_tasks(suite, tasks, jobs=jobs, progress=progress)
