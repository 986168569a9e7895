"""Greedy set-cover approximation of the k-relaxed metric dimension.

The universe is the set of unordered vertex pairs that must be distinguished;
a candidate sensor covers a pair when it sits at different distances from the
two endpoints. Each round picks the sensor with maximum marginal coverage,
breaking ties by smallest vertex id. Coverage rows are recomputed from the
distance matrix every round instead of being materialized upfront, keeping
memory quadratic; the selection rule (and hence the output) is identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import DistanceMatrix, _check_sensors

# Workspace cap for the per-round candidate scan (bytes of gathered rows).
_SCAN_BYTES = 64_000_000


@dataclass(frozen=True)
class PairUniverse:
    """Dense enumeration of the unordered vertex pairs still to distinguish."""

    left: np.ndarray
    right: np.ndarray

    @property
    def size(self) -> int:
        return int(self.left.size)

    @classmethod
    def relaxed_pairs(cls, dm: DistanceMatrix, k: int) -> "PairUniverse":
        """All pairs at distance strictly greater than ``k``."""
        iu, iv = np.triu_indices(dm.n, 1)
        mask = dm.matrix[iu, iv] > k
        return cls(iu[mask].astype(np.intp), iv[mask].astype(np.intp))

    @classmethod
    def pairs_within(cls, dm: DistanceMatrix, targets: Sequence[int]) -> "PairUniverse":
        """All pairs inside ``targets`` (no distance filter)."""
        t = np.asarray(sorted(set(targets)), dtype=np.intp)
        if t.size < 2:
            return cls(np.empty(0, dtype=np.intp), np.empty(0, dtype=np.intp))
        iu, iv = np.triu_indices(t.size, 1)
        return cls(t[iu], t[iv])


@dataclass(frozen=True)
class GreedyTrace:
    """Per-pick log: chosen sensor, pairs newly covered, pairs remaining."""

    sensors: tuple[int, ...]
    newly_covered: tuple[int, ...]
    remaining: tuple[int, ...]

    def rows(self) -> list[dict]:
        return [
            {
                "pick_index": i,
                "sensor": s,
                "newly_covered": c,
                "remaining": r,
            }
            for i, (s, c, r) in enumerate(
                zip(self.sensors, self.newly_covered, self.remaining)
            )
        ]


def _greedy_cover(dm: DistanceMatrix, universe: PairUniverse) -> GreedyTrace:
    n = dm.n
    matrix = dm.matrix.astype(np.int16)  # distances < 2**15 for any n here
    left, right = universe.left, universe.right
    covered = np.zeros(universe.size, dtype=bool)
    picks: list[int] = []
    newly: list[int] = []
    remaining: list[int] = []
    while True:
        open_idx = np.flatnonzero(~covered)
        if open_idx.size == 0:
            break
        ul = left[open_idx]
        ur = right[open_idx]
        chunk = max(1, min(n, _SCAN_BYTES // (4 * max(1, open_idx.size))))
        best_sensor = -1
        best_count = 0
        for start in range(0, n, chunk):
            rows = matrix[start : start + chunk]
            counts = (rows[:, ul] != rows[:, ur]).sum(axis=1)
            top = int(counts.argmax())
            if int(counts[top]) > best_count:
                best_count = int(counts[top])
                best_sensor = start + top
        # every pair {u, v} is covered by u itself, so progress is guaranteed
        assert best_sensor >= 0
        hit = matrix[best_sensor, ul] != matrix[best_sensor, ur]
        covered[open_idx[hit]] = True
        picks.append(best_sensor)
        newly.append(best_count)
        remaining.append(int(open_idx.size - best_count))
    return GreedyTrace(tuple(picks), tuple(newly), tuple(remaining))


def greedy_k_resolving_set(
    dm: DistanceMatrix, k: int
) -> tuple[tuple[int, ...], GreedyTrace]:
    """Greedy k-relaxed resolving set for a connected graph.

    Termination is guaranteed because the full vertex set distinguishes every
    pair. When ``k`` reaches the diameter the universe is empty and the empty
    set is returned.
    """
    if k < 0:
        raise ValueError("relaxation parameter k must be nonnegative")
    if not dm.connected:
        raise ValueError("greedy resolving sets require a connected graph")
    trace = _greedy_cover(dm, PairUniverse.relaxed_pairs(dm, k))
    return trace.sensors, trace


def greedy_resolve_within(dm: DistanceMatrix, targets: Sequence[int]) -> tuple[int, ...]:
    """Sensors (drawn from all vertices) giving distinct identification
    vectors to every pair inside ``targets``."""
    t = _check_sensors(dm.n, list(dict.fromkeys(targets)))
    if not t:
        raise ValueError("targets must be nonempty")
    if not dm.connected:
        raise ValueError("greedy resolving sets require a connected graph")
    trace = _greedy_cover(dm, PairUniverse.pairs_within(dm, t))
    return trace.sensors
