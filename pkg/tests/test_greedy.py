"""greedy module: coverage universe, greedy picks, approximation behavior."""

from __future__ import annotations

import math

import numpy as np
import pytest

from relaxmdim import (
    all_pairs_distances,
    ba_tree,
    brute_force_md,
    count_sigma_ex,
    greedy_k_resolving_set,
    greedy_resolve_within,
    is_k_relaxed_resolving,
)
from relaxmdim.greedy import PairUniverse

from conftest import (
    path_graph,
    random_connected_graph,
    star_graph,
    unicyclic_graph,
)


class TestPairUniverse:
    def test_relaxed_pairs_filter(self):
        dm = all_pairs_distances(path_graph(4))
        u = PairUniverse.relaxed_pairs(dm, 1)
        pairs = set(zip(u.left.tolist(), u.right.tolist()))
        assert pairs == {(0, 2), (0, 3), (1, 3)}

    def test_pairs_within(self):
        dm = all_pairs_distances(path_graph(5))
        u = PairUniverse.pairs_within(dm, [4, 0, 2])
        pairs = set(zip(u.left.tolist(), u.right.tolist()))
        assert pairs == {(0, 2), (0, 4), (2, 4)}


class TestGreedyResolvingSet:
    def test_empty_universe_at_diameter(self):
        g = random_connected_graph(12, 4, seed=0)
        dm = all_pairs_distances(g)
        sensors, trace = greedy_k_resolving_set(dm, dm.diameter)
        assert sensors == ()
        assert trace.sensors == ()

    def test_path_needs_one_endpoint(self):
        dm = all_pairs_distances(path_graph(4))
        sensors, _ = greedy_k_resolving_set(dm, 0)
        assert sensors == (0,)

    def test_output_verifies(self):
        for seed in range(8):
            g = random_connected_graph(14, 5, seed)
            dm = all_pairs_distances(g)
            for k in range(dm.diameter + 1):
                sensors, _ = greedy_k_resolving_set(dm, k)
                assert is_k_relaxed_resolving(dm, sensors, k)

    def test_trace_invariants(self):
        g = random_connected_graph(15, 6, seed=3)
        dm = all_pairs_distances(g)
        sensors, trace = greedy_k_resolving_set(dm, 0)
        universe = PairUniverse.relaxed_pairs(dm, 0).size
        assert sum(trace.newly_covered) == universe
        assert trace.remaining[-1] == 0
        assert all(a > b for a, b in zip(trace.remaining, trace.remaining[1:]))
        assert trace.sensors == sensors

    def test_deterministic(self):
        g = random_connected_graph(20, 8, seed=5)
        dm = all_pairs_distances(g)
        assert greedy_k_resolving_set(dm, 1) == greedy_k_resolving_set(dm, 1)

    def test_valid_for_any_larger_relaxation(self):
        g = random_connected_graph(14, 5, seed=7)
        dm = all_pairs_distances(g)
        sensors, _ = greedy_k_resolving_set(dm, 1)
        for k in range(1, dm.diameter + 1):
            assert is_k_relaxed_resolving(dm, sensors, k)

    def test_negative_k_rejected(self):
        dm = all_pairs_distances(path_graph(3))
        with pytest.raises(ValueError):
            greedy_k_resolving_set(dm, -1)

    def test_approximation_bound_small(self):
        for seed in range(6):
            g = unicyclic_graph(10, seed)
            dm = all_pairs_distances(g)
            bound_factor = 1 + math.log(g.n * (g.n - 1) / 2)
            for k in range(dm.diameter):
                optimum, _ = brute_force_md(g, k, dm)
                sensors, _ = greedy_k_resolving_set(dm, k)
                assert len(sensors) <= bound_factor * optimum

    def test_trace_rows_schema(self):
        dm = all_pairs_distances(path_graph(4))
        _, trace = greedy_k_resolving_set(dm, 0)
        rows = trace.rows()
        assert rows[0] == {
            "pick_index": 0,
            "sensor": 0,
            "newly_covered": 6,
            "remaining": 0,
        }


class TestGreedyResolveWithin:
    def test_single_target_needs_nothing(self):
        dm = all_pairs_distances(path_graph(5))
        assert greedy_resolve_within(dm, [3]) == ()

    def test_two_star_leaves_need_one_leaf_sensor(self):
        dm = all_pairs_distances(star_graph(4))
        sensors = greedy_resolve_within(dm, [1, 2])
        assert len(sensors) == 1
        assert sensors[0] in (1, 2)

    def test_full_vertex_targets_match_k0_greedy(self):
        g = random_connected_graph(13, 4, seed=9)
        dm = all_pairs_distances(g)
        full = greedy_resolve_within(dm, range(g.n))
        k0, _ = greedy_k_resolving_set(dm, 0)
        assert full == k0

    def test_union_separates_targets(self):
        g = random_connected_graph(16, 5, seed=11)
        dm = all_pairs_distances(g)
        targets = [1, 4, 8, 13]
        sensors = greedy_resolve_within(dm, targets)
        cols = dm.matrix[np.ix_(targets, list(sensors))]
        vectors = {tuple(row) for row in cols.tolist()}
        assert len(vectors) == len(targets)

    def test_empty_targets_rejected(self):
        dm = all_pairs_distances(path_graph(3))
        with pytest.raises(ValueError):
            greedy_resolve_within(dm, [])


class TestGreedyOnTrees:
    def test_ba_tree_matches_exact_dimension_and_odd_even(self):
        # large preferential-attachment tree: greedy hits the exact dimension
        # at k=0 and the consecutive even/odd sizes coincide
        g = ba_tree(1000, seed=20)
        dm = all_pairs_distances(g)
        sigma, ex = count_sigma_ex(g)
        s0, _ = greedy_k_resolving_set(dm, 0)
        assert len(s0) == sigma - ex
        s2, _ = greedy_k_resolving_set(dm, 2)
        s3, _ = greedy_k_resolving_set(dm, 3)
        assert len(s2) == len(s3)
