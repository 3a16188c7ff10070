import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from partdim.errors import (
    Disconnected,
    InvalidEdge,
    InvalidParams,
    InvalidPartition,
    UnknownFamily,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

# family name -> (parameter names, minimum for each parameter)
FAMILIES: Dict[str, Tuple[Tuple[str, ...], Tuple[int, ...]]] = {
    "path": (("n",), (2,)),
    "cycle": (("n",), (3,)),
    "complete": (("n",), (2,)),
    "complete_bipartite": (("r", "s"), (1, 1)),
    "star": (("n",), (1,)),
    "wheel": (("n",), (3,)),
    "fan": (("n",), (3,)),
    "complete_minus_edge": (("n",), (3,)),
    "random_tree": (("n",), (2,)),
    "grid": (("r", "c"), (2, 2)),
}


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertices 0..n-1.

    Immutable; the distance matrix is computed on first use and cached.
    """

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    family: Optional[str] = field(default=None, compare=False)

    @property
    def edges(self) -> List[Edge]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    @cached_property
    def distances(self) -> np.ndarray:
        return all_pairs_distances(self)

    def summary(self) -> Dict[str, object]:
        return {"n": self.n, "m": self.m, "family": self.family}


@dataclass(frozen=True)
class VertexPartition:
    """Ordered blocks of a partition of 0..n-1, sorted by smallest element"""

    n: int
    blocks: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int) -> "VertexPartition":
        seen: Dict[int, int] = {}
        cleaned = []
        for index, block in enumerate(blocks):
            members = [int(v) for v in block]
            if not members:
                raise InvalidPartition(f"Block {index} is empty")
            for v in members:
                if not 0 <= v < n:
                    raise InvalidPartition(f"Vertex {v} in block {index} is outside 0..{n - 1}")
                if v in seen:
                    raise InvalidPartition(
                        f"Vertex {v} appears twice (blocks {seen[v]} and {index})"
                    )
                seen[v] = index
            cleaned.append(tuple(sorted(members)))
        missing = [v for v in range(n) if v not in seen]
        if missing:
            raise InvalidPartition(f"Vertex {missing[0]} is missing from the partition")
        cleaned.sort(key=lambda b: b[0])
        return cls(n=n, blocks=tuple(cleaned))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "VertexPartition":
        """Build from a block label per vertex (e.g. a restricted-growth string)"""
        groups: Dict[int, List[int]] = {}
        for v, label in enumerate(labels):
            groups.setdefault(int(label), []).append(v)
        return cls.from_blocks(groups.values(), len(labels))

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def cardinality(self) -> int:
        return len(self.blocks)

    @cached_property
    def labels(self) -> np.ndarray:
        out = np.empty(self.n, dtype=np.int64)
        for index, block in enumerate(self.blocks):
            out[list(block)] = index
        return out

    def block_sizes(self) -> List[int]:
        return [len(b) for b in self.blocks]


def build_graph(edges: Iterable[Edge], n: int, family: Optional[str] = None) -> Graph:
    """Build a graph from an edge list, deduplicating repeated edges.

    Connectivity is not checked here; solvers check it on entry.
    """
    if n < 1:
        raise InvalidParams(f"A graph needs at least one vertex, got n={n}")
    nbrs: List[set] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"Edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise InvalidEdge(f"Self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n=n, adjacency=tuple(tuple(sorted(s)) for s in nbrs), family=family)


def _adjacency_matrix(g: Graph) -> csr_matrix:
    rows = [u for u, nbrs in enumerate(g.adjacency) for _ in nbrs]
    cols = [v for nbrs in g.adjacency for v in nbrs]
    return csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))


def is_connected(g: Graph) -> bool:
    count, _ = connected_components(_adjacency_matrix(g), directed=False)
    return count == 1


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Hop-count matrix from a BFS rooted at every vertex"""
    dist = shortest_path(_adjacency_matrix(g), method="D", directed=False, unweighted=True)
    if np.isinf(dist).any():
        raise Disconnected(f"Graph on {g.n} vertices is not connected")
    d = dist.astype(np.int64)
    d.setflags(write=False)
    return d


def is_tree(g: Graph) -> bool:
    return g.m == g.n - 1 and is_connected(g)


def is_path(g: Graph) -> bool:
    return is_tree(g) and all(g.degree(v) <= 2 for v in range(g.n))


def path_walk_order(g: Graph) -> List[int]:
    """Vertices of a path graph in walk order, starting at the smaller endpoint"""
    if not is_path(g):
        raise InvalidParams("Graph is not a path")
    if g.n == 1:
        return [0]
    start = min(v for v in range(g.n) if g.degree(v) == 1)
    order = [start]
    previous = -1
    current = start
    while len(order) < g.n:
        step = next(v for v in g.neighbors(current) if v != previous)
        previous, current = current, step
        order.append(current)
    return order


def to_networkx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def from_networkx(G: nx.Graph, family: Optional[str] = None) -> Graph:
    """Convert a networkx graph, relabeling nodes to 0..n-1 in sorted order"""
    index = {node: i for i, node in enumerate(sorted(G.nodes()))}
    edges = [(index[u], index[v]) for u, v in G.edges()]
    return build_graph(edges, G.number_of_nodes(), family=family)


def _check_params(family: str, params: Sequence[int]) -> None:
    names, minimums = FAMILIES[family]
    if len(params) != len(names):
        raise InvalidParams(
            f"Family {family} takes {len(names)} parameter(s) ({', '.join(names)}), got {len(params)}"
        )
    for name, value, low in zip(names, params, minimums):
        if value < low:
            raise InvalidParams(f"Family {family} needs {name} >= {low}, got {value}")


def generate(family: str, *params: int, seed: Optional[int] = None) -> Graph:
    """Build a named graph family with its canonical labeling.

    Args:
        family: One of FAMILIES
        params: Size parameters (e.g. n for path, r and s for complete_bipartite)
        seed: PRNG seed, used by random_tree only

    Returns:
        Graph: path/cycle in walk order; wheel/fan hub is vertex 0 on a rim
        1..n; star center is 0; complete_minus_edge drops edge (0, 1)
    """
    if family not in FAMILIES:
        raise UnknownFamily(f"Unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}")
    params = tuple(int(p) for p in params)
    _check_params(family, params)
    label = f"{family}({','.join(str(p) for p in params)})"

    if family == "path":
        G = nx.path_graph(params[0])
    elif family == "cycle":
        G = nx.cycle_graph(params[0])
    elif family == "complete":
        G = nx.complete_graph(params[0])
    elif family == "complete_bipartite":
        G = nx.complete_bipartite_graph(params[0], params[1])
    elif family == "star":
        G = nx.star_graph(params[0])
    elif family == "wheel":
        G = nx.wheel_graph(params[0] + 1)
    elif family == "fan":
        G = nx.path_graph(range(1, params[0] + 1))
        G.add_edges_from((0, v) for v in range(1, params[0] + 1))
    elif family == "complete_minus_edge":
        G = nx.complete_graph(params[0])
        G.remove_edge(0, 1)
    elif family == "random_tree":
        G = _random_tree(params[0], 0 if seed is None else seed)
        label = f"random_tree({params[0]},seed={0 if seed is None else seed})"
    else:
        grid = cartesian_product(generate("path", params[0]), generate("path", params[1]))
        return Graph(n=grid.n, adjacency=grid.adjacency, family=label)

    g = from_networkx(G, family=label)
    logger.debug(f"Generated {label}: n={g.n}, m={g.m}")
    return g


def _random_tree(n: int, seed: int) -> nx.Graph:
    """Decode a uniformly drawn Prüfer sequence of length n-2"""
    rng = np.random.default_rng(seed)
    sequence = [int(x) for x in rng.integers(0, n, size=n - 2)]
    return nx.from_prufer_sequence(sequence)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H with vertex (i, j) encoded as i * h.n + j"""
    product = nx.cartesian_product(to_networkx(g), to_networkx(h))
    edges = [(a * h.n + b, c * h.n + d) for (a, b), (c, d) in product.edges()]
    label = f"{g.family or 'G'} x {h.family or 'H'}"
    return build_graph(edges, g.n * h.n, family=label)
