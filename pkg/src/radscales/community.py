"""Modularity-optimizing community detection and resolution-limit filtering.

Two-phase detection: seeded local moves until no single-vertex move helps,
then aggregation of communities into super-vertices, repeated while a pass
still improves modularity. Output is deterministic for a fixed seed, and the
per-pass modularity log is non-decreasing by construction.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass

from .errors import EmptyGraphError
from .graph import Graph, Partition
from .modularity import modularity

# Sentinel for "use the resolution-limit threshold of the graph at hand".
AUTO = "auto"


@dataclass(frozen=True)
class DetectionConfig:
    seed: int = 0
    max_passes: int = 20
    min_gain_epsilon: float = 1e-7
    min_community_size: int | str = AUTO

    def __post_init__(self):
        if self.max_passes < 1:
            raise ValueError("max_passes must be >= 1")
        if self.min_gain_epsilon <= 0:
            raise ValueError("min_gain_epsilon must be > 0")
        if isinstance(self.min_community_size, str) and self.min_community_size != AUTO:
            raise ValueError(f"min_community_size must be an int or {AUTO!r}")


@dataclass(frozen=True)
class DetectionResult:
    """Detected partition plus the modularity recorded after each pass."""

    partition: Partition
    pass_modularity: tuple[float, ...]
    seed: int


@dataclass
class _Level:
    """Weighted aggregate graph: neighbor weights per vertex, loop weights."""

    adj: list[dict[int, float]]
    loops: list[float]

    @property
    def n(self) -> int:
        return len(self.adj)

    def strengths(self) -> list[float]:
        return [sum(w.values()) + 2.0 * self.loops[v] for v, w in enumerate(self.adj)]


def _local_move(level: _Level, rng: random.Random) -> list[int]:
    """Sweep vertices in shuffled order, greedily reassigning communities.

    Each accepted move strictly increases modularity; sweeps repeat until a
    full sweep makes no move. Returns the community id per vertex.
    """
    n = level.n
    strength = level.strengths()
    two_w = sum(strength)
    comm = list(range(n))
    sigma_tot = strength.copy()
    order = list(range(n))
    rng.shuffle(order)
    while True:
        moves = 0
        for v in order:
            c_old = comm[v]
            weight_to: dict[int, float] = defaultdict(float)
            for u, w in level.adj[v].items():
                weight_to[comm[u]] += w
            sigma_tot[c_old] -= strength[v]
            # Gain of joining community c, up to a shared constant:
            # edges to c minus the expected-edge penalty.
            best_c = c_old
            best_gain = weight_to.get(c_old, 0.0) - sigma_tot[c_old] * strength[v] / two_w
            for c in sorted(weight_to):
                if c == c_old:
                    continue
                gain = weight_to[c] - sigma_tot[c] * strength[v] / two_w
                if gain > best_gain:
                    best_gain = gain
                    best_c = c
            sigma_tot[best_c] += strength[v]
            if best_c != c_old:
                comm[v] = best_c
                moves += 1
        if moves == 0:
            return comm


def _renumber(comm: list[int]) -> tuple[list[int], int]:
    """Dense community ids in first-appearance order."""
    mapping: dict[int, int] = {}
    dense = []
    for c in comm:
        mapping.setdefault(c, len(mapping))
        dense.append(mapping[c])
    return dense, len(mapping)


def _aggregate(level: _Level, comm: list[int], count: int) -> _Level:
    """Collapse communities into super-vertices, preserving modularity."""
    adj: list[dict[int, float]] = [defaultdict(float) for _ in range(count)]
    loops = [0.0] * count
    for v in range(level.n):
        cv = comm[v]
        loops[cv] += level.loops[v]
        for u, w in level.adj[v].items():
            cu = comm[u]
            if cu == cv:
                loops[cv] += w / 2.0  # seen from both endpoints
            else:
                adj[cv][cu] += w
    return _Level(adj=[dict(a) for a in adj], loops=loops)


def detect(graph: Graph, config: DetectionConfig | None = None) -> DetectionResult:
    """Run community detection, keeping the per-pass modularity log."""
    if graph.m == 0:
        raise EmptyGraphError("community detection needs at least one edge")
    config = config or DetectionConfig()
    rng = random.Random(config.seed)
    level = _Level(
        adj=[{u: 1.0 for u in graph.neighbors(v)} for v in range(graph.n)],
        loops=[0.0] * graph.n,
    )
    node_of = list(range(graph.n))  # original vertex -> current level vertex
    pass_log: list[float] = []
    prev_q = -math.inf
    for _ in range(config.max_passes):
        comm, count = _renumber(_local_move(level, rng))
        node_of = [comm[node] for node in node_of]
        group_of, k = _renumber(node_of)
        q = modularity(
            graph,
            Partition(group_of=tuple(group_of), group_count=k),
        )
        pass_log.append(q)
        if q - prev_q < config.min_gain_epsilon:
            break
        prev_q = q
        level = _aggregate(level, comm, count)
    group_of, k = _renumber(node_of)
    partition = Partition(
        group_of=tuple(group_of),
        group_count=k,
        group_labels=tuple(f"c{i}" for i in range(k)),
    )
    return DetectionResult(partition=partition, pass_modularity=tuple(pass_log), seed=config.seed)


def detect_communities(graph: Graph, config: DetectionConfig | None = None) -> Partition:
    """Detected partition with densely indexed groups (labels c0..ck-1)."""
    return detect(graph, config).partition


def resolution_size_threshold(edge_count: int) -> int:
    """Smallest community size not attributable to an arbitrary merge,
    ceil(sqrt(2L)) for L total links."""
    if edge_count < 0:
        raise ValueError("edge count must be >= 0")
    if edge_count == 0:
        return 0
    return math.isqrt(2 * edge_count - 1) + 1


def minimum_detectable_size(graph: Graph) -> int:
    return resolution_size_threshold(graph.m)


def filter_by_size(
    partition: Partition,
    graph: Graph,
    min_size: int | str = AUTO,
) -> tuple[Partition, tuple[int, ...]]:
    """Merge groups smaller than *min_size* into a residual group.

    AUTO resolves the threshold to minimum_detectable_size(graph). Kept
    groups are re-indexed in original order and keep their labels; the
    residual group comes last, labeled "other". Returns the new partition
    and the kept groups' original indices. When nothing falls below the
    threshold the partition is returned unchanged.
    """
    threshold = minimum_detectable_size(graph) if min_size == AUTO else int(min_size)
    sizes = partition.sizes()
    kept = tuple(i for i, s in enumerate(sizes) if s >= threshold)
    if len(kept) == partition.group_count:
        return partition, kept
    remap = {old: new for new, old in enumerate(kept)}
    residual = len(kept)
    group_of = tuple(remap.get(g, residual) for g in partition.group_of)
    labels = tuple(partition.group_label(i) for i in kept) + ("other",)
    return (
        Partition(group_of=group_of, group_count=residual + 1, group_labels=labels),
        kept,
    )
