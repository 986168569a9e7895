"""Shared graph builders for the test suite."""

from __future__ import annotations

import numpy as np

from relaxmdim import Graph, uniform_tree


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Center 0 with the given number of leaves."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider_graph(leg_lengths: list[int]) -> Graph:
    """Center 0 with one path of each requested length attached."""
    edges = []
    nxt = 1
    for length in leg_lengths:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def full_m_ary_tree(m: int, h: int) -> Graph:
    """Complete m-ary tree of height h, ids assigned level by level."""
    n = (m ** (h + 1) - 1) // (m - 1)
    return Graph.from_edges(n, [((i - 1) // m, i) for i in range(1, n)])


def random_connected_graph(n: int, extra_edges: int, seed: int) -> Graph:
    """A uniform tree plus extra random chords: connected, possibly cyclic."""
    tree = uniform_tree(n, seed)
    rng = np.random.default_rng(seed + 1)
    edges = set(tree.edges())
    attempts = 0
    while len(edges) < n - 1 + extra_edges and attempts < 50 * extra_edges + 100:
        u, v = sorted(rng.integers(0, n, size=2).tolist())
        if u != v:
            edges.add((u, v))
        attempts += 1
    return Graph.from_edges(n, sorted(edges))


def unicyclic_graph(n: int, seed: int) -> Graph:
    """A uniform tree with exactly one extra chord."""
    tree = uniform_tree(n, seed)
    rng = np.random.default_rng(seed + 10_000)
    existing = set(tree.edges())
    while True:
        u, v = sorted(rng.integers(0, n, size=2).tolist())
        if u != v and (u, v) not in existing:
            return Graph.from_edges(n, sorted(existing | {(u, v)}))
