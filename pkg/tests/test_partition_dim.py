import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partdim.errors import InfeasibleK, InvalidParams, InvalidPartition, TooLarge
from partdim.service.graph_core import VertexPartition, generate
from partdim.service.graph_io import read_partition
from partdim.service.metric_dim import BRUTE_FORCE, CONSTRUCTION
from partdim.service.partition_dim import (
    check_pd_bounds,
    construction_result,
    is_k_partition_dimensional,
    is_k_partition_generator,
    max_partition_resolvability,
    min_pair_block_support,
    pair_block_support,
    pair_merge_partition,
    path_partition_construction,
    pd_equals_n_criterion,
    pd_k_bruteforce,
    restricted_growth_strings,
    singleton_partition,
)
from partdim.service.resolve_core import dimensional_value, distinguishing_set
from partdim.service.sweep_service import TWO_FORKS_PARTITION, TWO_FORKS_SMALLEST_PARTITION


def _stirling(n, m):
    table = [[0] * (m + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            table[i][j] = j * table[i - 1][j] + table[i - 1][j - 1]
    return table[n][m]


class TestRestrictedGrowthStrings:
    def test_lexicographic(self):
        assert list(restricted_growth_strings(3, 2)) == [(0, 0, 1), (0, 1, 0), (0, 1, 1)]

    def test_degenerate(self):
        assert list(restricted_growth_strings(0, 0)) == [()]
        assert list(restricted_growth_strings(3, 0)) == []
        assert list(restricted_growth_strings(2, 3)) == []

    def test_bell_number(self):
        assert sum(len(list(restricted_growth_strings(5, m))) for m in range(1, 6)) == 52

    @settings(max_examples=30, deadline=None)
    @given(n=st.integers(min_value=1, max_value=7), m=st.integers(min_value=1, max_value=7))
    def test_counts_are_stirling_numbers(self, n, m):
        strings = list(restricted_growth_strings(n, m))
        assert len(strings) == _stirling(n, m)
        assert len(set(strings)) == len(strings)
        assert all(len(set(s)) == m for s in strings)


class TestGenerators:
    def test_two_forks_partition(self, two_forks):
        partition = read_partition(TWO_FORKS_PARTITION, two_forks)
        assert is_k_partition_generator(two_forks, partition, 2)
        assert not is_k_partition_generator(two_forks, partition, 3)
        assert min_pair_block_support(two_forks, partition) == (2, (0, 1))

    def test_two_forks_four_blocks(self, two_forks):
        partition = read_partition(TWO_FORKS_SMALLEST_PARTITION, two_forks)
        assert len(partition) == 4
        assert is_k_partition_generator(two_forks, partition, 2, fast=False)
        assert min_pair_block_support(two_forks, partition)[0] == 2


    def test_pair_block_support(self):
        g = generate("path", 3)
        assert pair_block_support(g, singleton_partition(3), 0, 2) == 2

    def test_partition_size_mismatch(self):
        with pytest.raises(InvalidPartition):
            is_k_partition_generator(generate("path", 4), singleton_partition(3), 1)

    def test_level_zero(self):
        with pytest.raises(InfeasibleK):
            is_k_partition_generator(generate("path", 3), singleton_partition(3), 0)

    @pytest.mark.parametrize("family, params", [("path", (5,)), ("wheel", (5,)), ("cycle", (6,)),
                                                ("star", (4,)), ("fan", (4,))])
    def test_singletons_reach_d(self, family, params):
        g = generate(family, *params)
        d = dimensional_value(g)
        assert is_k_partition_generator(g, singleton_partition(g.n), d, fast=False)
        assert not is_k_partition_generator(g, singleton_partition(g.n), d + 1, fast=False)

    def test_pair_merge(self):
        p = pair_merge_partition(4, 0, 1)
        assert p.blocks == ((0, 1), (2,), (3,))
        with pytest.raises(InvalidParams):
            pair_merge_partition(4, 2, 2)

    @settings(max_examples=60, deadline=None)
    @given(data=st.data(), n=st.integers(min_value=3, max_value=9),
           seed=st.integers(min_value=0, max_value=5_000))
    def test_same_block_shortcut_matches_full_check(self, data, n, seed):
        g = generate("random_tree", n, seed=seed)
        labels = data.draw(st.lists(st.integers(min_value=0, max_value=3), min_size=n, max_size=n))
        partition = VertexPartition.from_labels(labels)
        for k in (1, 2):
            assert is_k_partition_generator(g, partition, k) == is_k_partition_generator(
                g, partition, k, fast=False
            )

    @settings(max_examples=60, deadline=None)
    @given(data=st.data(), n=st.integers(min_value=3, max_value=9),
           seed=st.integers(min_value=0, max_value=5_000))
    def test_block_support_is_bounded_by_distinguishing_set(self, data, n, seed):
        g = generate("random_tree", n, seed=seed)
        labels = data.draw(st.lists(st.integers(min_value=0, max_value=4), min_size=n, max_size=n))
        partition = VertexPartition.from_labels(labels)
        for x in range(n):
            for y in range(x + 1, n):
                D = distinguishing_set(g, x, y)
                meeting = sum(1 for block in partition.blocks if D & set(block))
                assert pair_block_support(g, partition, x, y) <= meeting <= len(D)
        support, _ = min_pair_block_support(g, partition)
        assert support <= dimensional_value(g)


class TestBruteForce:
    @pytest.mark.parametrize("n", range(3, 7))
    def test_paths(self, n):
        g = generate("path", n)
        for k in range(1, n):
            result = pd_k_bruteforce(g, k)
            assert result.value == k + 1
            assert result.method == BRUTE_FORCE
            assert is_k_partition_generator(g, result.basis, k)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_complete_level_one(self, n):
        assert pd_k_bruteforce(generate("complete", n), 1).value == n

    @pytest.mark.parametrize("n", range(3, 7))
    def test_level_two_complete_and_minus_edge(self, n):
        assert pd_k_bruteforce(generate("complete", n), 2).value == n
        assert pd_k_bruteforce(generate("complete_minus_edge", n), 2).value == n

    def test_fan(self):
        assert pd_k_bruteforce(generate("fan", 4), 3).value == 5

    def test_k2_is_the_only_pd_equal_k(self):
        assert pd_k_bruteforce(generate("complete", 2), 2).value == 2

    def test_infeasible(self):
        with pytest.raises(InfeasibleK):
            pd_k_bruteforce(generate("path", 5), 9)

    def test_limit(self):
        with pytest.raises(TooLarge):
            pd_k_bruteforce(generate("path", 12), 1)
        assert pd_k_bruteforce(generate("path", 12), 1, force=True).value == 2

    @pytest.mark.slow
    def test_two_forks_level_two(self, two_forks):
        result = pd_k_bruteforce(two_forks, 2)
        assert result.value == 4
        assert is_k_partition_generator(two_forks, result.basis, 2)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(7, 10))
    def test_longer_paths(self, n):
        g = generate("path", n)
        for k in range(1, n):
            assert pd_k_bruteforce(g, k).value == k + 1


class TestPathConstruction:
    def test_block_sizes(self):
        p = path_partition_construction(7, 2)
        assert p.blocks == ((0, 1, 2), (3, 4), (5, 6))

    @pytest.mark.parametrize("k", [1, 2, 3, 10, 50, 199])
    def test_long_path_verifies(self, k):
        g = generate("path", 200)
        p = path_partition_construction(200, k)
        assert len(p) == k + 1
        assert is_k_partition_generator(g, p, k)

    def test_bad_arguments(self):
        with pytest.raises(InvalidParams):
            path_partition_construction(2, 1)
        with pytest.raises(InfeasibleK):
            path_partition_construction(5, 5)

    def test_construction_result(self):
        g = generate("path", 6)
        result = construction_result(g, path_partition_construction(6, 3), 3)
        assert result.value == 4
        assert result.method == CONSTRUCTION


class TestCriteriaAndBounds:
    def test_pd_equals_n_criterion(self):
        assert pd_equals_n_criterion(generate("complete", 4), 1)
        assert not pd_equals_n_criterion(generate("path", 4), 1)

    @pytest.mark.parametrize("family, params", [("path", (4,)), ("cycle", (5,)), ("complete", (4,)),
                                                ("star", (3,)), ("fan", (4,))])
    def test_resolvability_oracle_equals_d(self, family, params):
        g = generate(family, *params)
        d = dimensional_value(g)
        best, witness = max_partition_resolvability(g)
        assert best == d
        assert min_pair_block_support(g, witness)[0] == d
        assert is_k_partition_dimensional(g, d)
        assert not is_k_partition_dimensional(g, d - 1)

    @pytest.mark.parametrize("family, params", [("path", (5,)), ("cycle", (5,)), ("complete", (4,)),
                                                ("star", (3,)), ("wheel", (4,)), ("complete", (2,)),
                                                ("complete_minus_edge", (4,))])
    def test_general_bounds(self, family, params):
        g = generate(family, *params)
        for k in range(1, dimensional_value(g) + 1):
            report = check_pd_bounds(g, k)
            assert report.passed, [c for c in report.checks if not c.holds]

    @pytest.mark.parametrize("family, params, levels", [("complete", (4,), (1, 2)),
                                                        ("cycle", (5,), (3, 4))])
    def test_equal_extremes_force_n(self, family, params, levels):
        g = generate(family, *params)
        for k in levels:
            report = check_pd_bounds(g, k)
            check = next(c for c in report.checks if c.name == "pd_n_at_top")
            assert check.holds
            assert check.lhs == g.n

    def test_equal_extremes_skip_lower_levels(self):
        report = check_pd_bounds(generate("cycle", 5), 2)
        assert "pd_n_at_top" not in [c.name for c in report.checks]

    @pytest.mark.parametrize("family, params, path", [("path", (5,), True), ("complete", (2,), True),
                                                      ("star", (3,), False), ("cycle", (4,), False)])
    def test_level_one_is_two_only_on_paths(self, family, params, path):
        report = check_pd_bounds(generate(family, *params), 1)
        check = next(c for c in report.checks if c.name == "pd1_path")
        assert check.holds
        assert (check.lhs == 2) == path
