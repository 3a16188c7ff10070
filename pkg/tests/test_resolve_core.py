import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partdim.errors import InvalidPair, InvalidSet, TrivialGraph
from partdim.service.graph_core import build_graph, from_networkx, generate
from partdim.service.resolve_core import (
    clique_number,
    dimensional_value,
    dimensional_value_max,
    distinguish_profile,
    distinguishing_set,
    has_nontrivial_twin,
    pairs_attaining,
    set_distance,
    twin_classes,
)


@pytest.mark.parametrize("n", range(2, 9))
def test_complete_graph_values(n):
    g = generate("complete", n)
    assert dimensional_value(g) == 2
    assert dimensional_value_max(g) == 2


@pytest.mark.parametrize("n", range(3, 11))
def test_path_dimensional_value(n):
    assert dimensional_value(generate("path", n)) == n - 1


@pytest.mark.parametrize("n", range(3, 11))
def test_cycle_dimensional_value(n):
    expected = n - 1 if n % 2 else n - 2
    assert dimensional_value(generate("cycle", n)) == expected


def test_wheel_five():
    g = generate("wheel", 5)
    assert dimensional_value(g) == 4
    assert dimensional_value_max(g) == 4


@pytest.mark.parametrize("n", range(3, 9))
def test_complete_minus_edge_max(n):
    assert dimensional_value_max(generate("complete_minus_edge", n)) == 3


def test_distinguishing_sets_on_p3():
    g = generate("path", 3)
    assert distinguishing_set(g, 0, 2) == frozenset({0, 2})
    assert distinguishing_set(g, 0, 1) == frozenset({0, 1, 2})


def test_twins_are_only_distinguished_by_themselves():
    g = generate("complete", 4)
    assert distinguishing_set(g, 0, 1) == frozenset({0, 1})


def test_profile_fields():
    profile = distinguish_profile(generate("path", 3))
    assert profile.d_min == 2
    assert profile.d_max == 3
    assert profile.min_pair == (0, 2)
    assert profile.pair_set(0, 2) == frozenset({0, 2})
    assert profile.counts[0, 2] == profile.counts[2, 0] == 2


def test_long_path_keeps_only_pair_counts():
    g = generate("path", 400)
    profile = distinguish_profile(g)
    assert dimensional_value(g) == 399
    assert profile.counts.shape == (400, 400)
    assert profile.min_pair == (0, 2)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(min_value=2, max_value=10), seed=st.integers(min_value=0, max_value=5_000))
def test_counts_match_distinguishing_sets(n, seed):
    g = generate("random_tree", n, seed=seed)
    counts = distinguish_profile(g).counts
    for x in range(n):
        assert counts[x, x] == 0
        for y in range(x + 1, n):
            assert counts[x, y] == counts[y, x] == len(distinguishing_set(g, x, y))


def test_pairs_attaining():
    assert pairs_attaining(generate("complete", 3), 2) == [(0, 1), (0, 2), (1, 2)]
    assert pairs_attaining(generate("path", 3), 2) == [(0, 2)]


def test_trivial_graph():
    with pytest.raises(TrivialGraph):
        dimensional_value(build_graph([], 1))


def test_invalid_pair():
    g = generate("path", 3)
    with pytest.raises(InvalidPair):
        distinguishing_set(g, 1, 1)
    with pytest.raises(InvalidPair):
        distinguishing_set(g, 0, 3)


class TestTwins:
    def test_star_leaves(self):
        assert twin_classes(generate("star", 3)) == [[0], [1, 2, 3]]
        assert has_nontrivial_twin(generate("star", 3))

    def test_closed_twins(self):
        assert twin_classes(generate("complete", 3)) == [[0, 1, 2]]

    def test_no_twins(self):
        assert not has_nontrivial_twin(generate("path", 4))
        assert not has_nontrivial_twin(generate("cycle", 5))

    def test_path_ends_of_p3(self):
        assert twin_classes(generate("path", 3)) == [[0, 2], [1]]

    def test_twins_mean_value_two(self):
        g = generate("complete_bipartite", 2, 3)
        assert has_nontrivial_twin(g)
        assert dimensional_value(g) == 2


class TestCliqueNumber:
    def test_families(self):
        assert clique_number(generate("complete", 6)) == 6
        assert clique_number(generate("cycle", 5)) == 2
        assert clique_number(generate("wheel", 5)) == 3
        assert clique_number(generate("complete_minus_edge", 5)) == 4

    @settings(max_examples=60, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=12),
        p=st.floats(min_value=0.0, max_value=1.0),
        seed=st.integers(min_value=0, max_value=10_000),
    )
    def test_matches_networkx(self, n, p, seed):
        G = nx.gnp_random_graph(n, p, seed=seed)
        expected = max(len(c) for c in nx.find_cliques(G))
        assert clique_number(from_networkx(G)) == expected


def test_set_distance():
    g = generate("path", 5)
    assert set_distance(g, 0, {3, 4}) == 3
    assert set_distance(g, 3, [3]) == 0
    with pytest.raises(InvalidSet):
        set_distance(g, 0, [])
