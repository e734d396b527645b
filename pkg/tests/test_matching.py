"""Tests for the perfect matching engine and its enumeration oracles."""

from __future__ import annotations

import pytest
from hypothesis import given

from brickyard.classify import GraphName, named_graph
from brickyard.errors import CapExceededError, NotMatchingCoveredError
from brickyard.matching import (
    covered_edges,
    enumerate_perfect_matchings,
    has_perfect_matching,
    has_pm_avoiding,
    is_bicritical,
    is_matching_covered,
    is_matching_covered_by_enumeration,
    is_removable,
    removable_edges,
    removable_edges_by_enumeration,
)
from brickyard.multigraph import MultiGraph, is_k_connected, parallel_pairs

from conftest import matching_covered_graphs, multigraphs

PATH4 = MultiGraph(4, ((0, 1), (1, 2), (2, 3)))
STAR = MultiGraph(4, ((0, 1), (0, 2), (0, 3)))


class TestExistence:

    @pytest.mark.parametrize("method", ["blossom", "backtrack"])
    def test_known_graphs(self, method, k4):
        assert has_perfect_matching(k4, method=method)
        assert has_perfect_matching(PATH4, method=method)
        assert not has_perfect_matching(STAR, method=method)
        assert not has_perfect_matching(MultiGraph(3, ((0, 1), (1, 2))), method=method)

    @given(multigraphs())
    def test_blossom_agrees_with_backtracking(self, G):
        assert has_perfect_matching(G, "blossom") == has_perfect_matching(G, "backtrack")

    def test_bicritical(self, k4):
        assert is_bicritical(k4)
        assert is_bicritical(named_graph(GraphName.PETERSEN))
        assert not is_bicritical(named_graph(GraphName.C6))
        assert not is_bicritical(MultiGraph(3, ((0, 1), (1, 2), (0, 2))))


class TestEnumeration:

    def test_k4_has_three_matchings(self, k4):
        assert enumerate_perfect_matchings(k4) == [(0, 5), (1, 4), (2, 3)]

    def test_parallel_copies_give_distinct_matchings(self, doubled_k4):
        assert enumerate_perfect_matchings(doubled_k4) == [(0, 5), (1, 4), (2, 3), (5, 6)]

    def test_petersen_has_six_matchings(self):
        assert len(enumerate_perfect_matchings(named_graph(GraphName.PETERSEN))) == 6

    def test_odd_order_has_none(self):
        assert enumerate_perfect_matchings(MultiGraph(3, ((0, 1), (1, 2)))) == []

    def test_cap_is_never_silent(self, k4):
        with pytest.raises(CapExceededError):
            enumerate_perfect_matchings(k4, max_n=2)

    def test_covered_edges(self):
        assert covered_edges(PATH4, enumerate_perfect_matchings(PATH4)) == frozenset({0, 2})


class TestMatchingCovered:

    @pytest.mark.parametrize("name", ["K2", "C4", "C6", "K4", "C6_BAR", "K33", "CUBE", "WAGNER", "PETERSEN"])
    def test_named_graphs_are_matching_covered(self, name):
        assert is_matching_covered(named_graph(name))

    @pytest.mark.parametrize(
        "G",
        [
            PATH4,
            STAR,
            MultiGraph(4, ((0, 1), (2, 3))),        # disconnected
            MultiGraph(1),
            MultiGraph(2),
        ],
    )
    def test_not_matching_covered(self, G):
        assert not is_matching_covered(G)

    @given(multigraphs(max_n=6))
    def test_agrees_with_enumeration(self, G):
        assert is_matching_covered(G) == is_matching_covered_by_enumeration(G)


class TestRemovable:

    def test_exceptional_bricks_have_none(self, k4, c6_bar):
        assert removable_edges(k4) == frozenset()
        assert removable_edges(c6_bar) == frozenset()

    def test_every_edge_of_k33_is_removable(self, k33):
        assert removable_edges(k33) == frozenset(range(9))

    def test_even_cycles_have_none(self):
        assert removable_edges(named_graph(GraphName.C4)) == frozenset()
        assert removable_edges(named_graph("CYCLE", 8)) == frozenset()

    def test_parallel_copies_are_removable(self, doubled_k4):
        assert removable_edges(doubled_k4) == frozenset({0, 6})

    def test_requires_matching_covered(self):
        with pytest.raises(NotMatchingCoveredError):
            removable_edges(PATH4)
        with pytest.raises(NotMatchingCoveredError):
            is_removable(PATH4, 0)

    def test_is_removable(self, k33, k4):
        assert is_removable(k33, 0)
        assert not is_removable(k4, 0)

    @given(matching_covered_graphs())
    def test_agrees_with_enumeration(self, G):
        assert removable_edges(G) == removable_edges_by_enumeration(G)

    @given(matching_covered_graphs())
    def test_multiple_edges_always_removable(self, G):
        re_g = removable_edges(G)
        assert all(e1 in re_g for e1, _ in parallel_pairs(G))


class TestAvoidingPairs:

    @pytest.mark.parametrize("method", ["blossom", "backtrack"])
    def test_even_cycle(self, method):
        c6 = named_graph(GraphName.C6)
        assert not has_pm_avoiding(c6, {0, 2}, method=method)
        assert has_pm_avoiding(c6, {0, 3}, method=method)

    def test_odd_remainder(self, k4):
        assert not has_pm_avoiding(k4, {0})
        assert has_pm_avoiding(k4, range(4))

    @given(multigraphs(max_n=6))
    def test_edge_in_some_matching_iff_ends_avoidable(self, G):
        matchings = enumerate_perfect_matchings(G)
        for e, (u, v) in enumerate(G.edges):
            in_some = any(e in matching for matching in matchings)
            assert in_some == has_pm_avoiding(G, {u, v})
            assert in_some == has_pm_avoiding(G, {u, v}, method="backtrack")


class TestConnectivity:

    @given(multigraphs(max_n=6))
    def test_matching_covered_graphs_beyond_k2_are_2_connected(self, G):
        if G.n > 2 and is_matching_covered(G):
            assert is_k_connected(G, 2)

    @given(matching_covered_graphs())
    def test_atlas_graphs_are_2_connected(self, G):
        assert is_k_connected(G, 2)
