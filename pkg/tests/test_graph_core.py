import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partdim.errors import Disconnected, InvalidEdge, InvalidParams, InvalidPartition, UnknownFamily
from partdim.service.graph_core import (
    VertexPartition,
    build_graph,
    cartesian_product,
    from_networkx,
    generate,
    is_connected,
    is_path,
    is_tree,
    path_walk_order,
    to_networkx,
)


class TestBuildGraph:
    def test_k2(self):
        g = build_graph([(0, 1)], 2)
        assert g.n == 2
        assert g.m == 1
        assert g.edges == [(0, 1)]

    def test_triangle(self):
        g = build_graph([(0, 1), (1, 2), (2, 0)], 3)
        assert g.m == 3
        assert all(g.degree(v) == 2 for v in range(3))

    def test_duplicate_edges_collapse(self):
        g = build_graph([(0, 1), (1, 0), (0, 1)], 2)
        assert g.m == 1
        assert g.neighbors(0) == (1,)

    def test_self_loop_rejected(self):
        with pytest.raises(InvalidEdge):
            build_graph([(0, 0)], 1)

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidEdge):
            build_graph([(0, 2)], 2)

    def test_equal_graphs_hash_equal(self):
        a = build_graph([(0, 1), (1, 2)], 3, family="a")
        b = build_graph([(1, 2), (0, 1)], 3, family="b")
        assert a == b
        assert hash(a) == hash(b)


class TestDistances:
    def test_path(self):
        assert generate("path", 3).distances[0, 2] == 2

    def test_even_cycle_antipodal(self):
        assert generate("cycle", 6).distances[0, 3] == 3

    def test_complete(self):
        d = generate("complete", 5).distances
        off_diagonal = d[~np.eye(5, dtype=bool)]
        assert (off_diagonal == 1).all()
        assert (np.diag(d) == 0).all()

    def test_symmetric(self):
        d = generate("random_tree", 12, seed=4).distances
        assert (d == d.T).all()

    @settings(max_examples=60, deadline=None)
    @given(
        kind=st.sampled_from(["random_tree", "tree_plus_gnp"]),
        n=st.integers(min_value=2, max_value=12),
        p=st.floats(min_value=0.0, max_value=1.0),
        seed=st.integers(min_value=0, max_value=10_000),
    )
    def test_triangle_inequality(self, kind, n, p, seed):
        tree = generate("random_tree", n, seed=seed)
        if kind == "random_tree":
            g = tree
        else:
            g = from_networkx(nx.compose(to_networkx(tree), nx.gnp_random_graph(n, p, seed=seed)))
        d = g.distances
        assert (d == d.T).all()
        assert (d[:, None, :] <= d[:, :, None] + d[None, :, :]).all()

    def test_disconnected(self):
        g = build_graph([(0, 1)], 3)
        assert not is_connected(g)
        with pytest.raises(Disconnected):
            g.distances


class TestGenerate:
    def test_complete_edges(self):
        assert generate("complete", 4).m == 6

    def test_wheel(self):
        g = generate("wheel", 5)
        assert g.n == 6
        assert g.m == 10
        assert g.degree(0) == 5

    def test_fan(self):
        g = generate("fan", 4)
        assert g.n == 5
        assert g.m == 7
        assert g.degree(0) == 4

    def test_complete_minus_edge(self):
        g = generate("complete_minus_edge", 4)
        assert g.m == 5
        assert 1 not in g.neighbors(0)

    def test_star_center(self):
        g = generate("star", 3)
        assert g.degree(0) == 3

    def test_path_walk_order_labels(self):
        assert generate("path", 5).edges == [(0, 1), (1, 2), (2, 3), (3, 4)]

    def test_grid(self):
        g = generate("grid", 2, 3)
        assert g.n == 6
        assert g.m == 7

    def test_family_label(self):
        assert generate("wheel", 5).family == "wheel(5)"

    def test_cycle_too_small(self):
        with pytest.raises(InvalidParams):
            generate("cycle", 2)

    def test_wrong_arity(self):
        with pytest.raises(InvalidParams):
            generate("complete_bipartite", 3)

    def test_unknown_family(self):
        with pytest.raises(UnknownFamily):
            generate("hypercube", 3)

    def test_random_tree_is_deterministic(self):
        a = generate("random_tree", 10, seed=3)
        b = generate("random_tree", 10, seed=3)
        assert a.edges == b.edges
        assert is_tree(a)

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(min_value=2, max_value=30), seed=st.integers(min_value=0, max_value=10_000))
    def test_random_tree_shape(self, n, seed):
        t = generate("random_tree", n, seed=seed)
        assert t.n == n
        assert t.m == n - 1
        assert is_tree(t)


class TestCartesianProduct:
    def test_square(self):
        g = cartesian_product(generate("complete", 2), generate("complete", 2))
        assert nx.is_isomorphic(to_networkx(g), nx.cycle_graph(4))

    def test_grid_edge_counts(self):
        assert cartesian_product(generate("path", 2), generate("path", 3)).m == 7
        assert cartesian_product(generate("path", 3), generate("path", 3)).m == 12

    def test_encoding(self):
        g = cartesian_product(generate("path", 2), generate("path", 3))
        # (0, 0) ~ (0, 1) inside a copy of h, (0, 0) ~ (1, 0) across copies
        assert 1 in g.neighbors(0)
        assert 3 in g.neighbors(0)
        assert 4 not in g.neighbors(0)


class TestPredicatesAndBridges:
    def test_path_predicates(self):
        assert is_path(generate("path", 4))
        assert not is_path(generate("star", 3))
        assert not is_tree(generate("cycle", 4))

    def test_path_walk_order_relabelled(self):
        g = build_graph([(2, 0), (0, 3), (3, 1)], 4)
        assert path_walk_order(g) == [1, 3, 0, 2]

    def test_path_walk_order_rejects_non_path(self):
        with pytest.raises(InvalidParams):
            path_walk_order(generate("star", 3))

    def test_from_networkx_sorted_relabel(self):
        G = nx.Graph([("a", "b"), ("b", "c")])
        assert from_networkx(G).edges == [(0, 1), (1, 2)]

    def test_networkx_round_trip(self):
        g = generate("wheel", 4)
        assert from_networkx(to_networkx(g)) == g


class TestVertexPartition:
    def test_blocks_sorted_by_minimum(self):
        p = VertexPartition.from_blocks([[2], [1, 0]], 3)
        assert p.blocks == ((0, 1), (2,))
        assert len(p) == 2
        assert p.cardinality == 2

    def test_from_labels(self):
        p = VertexPartition.from_labels((0, 1, 0))
        assert p.blocks == ((0, 2), (1,))
        assert list(p.labels) == [0, 1, 0]
        assert p.block_sizes() == [2, 1]

    @pytest.mark.parametrize(
        "blocks, n",
        [
            ([[0], [0, 1]], 2),
            ([[0]], 2),
            ([[0, 1], []], 2),
            ([[0, 5]], 2),
        ],
    )
    def test_invalid(self, blocks, n):
        with pytest.raises(InvalidPartition):
            VertexPartition.from_blocks(blocks, n)
