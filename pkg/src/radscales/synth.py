"""Deterministic fixture graphs and seeded random generators for validation.

The two demo graphs anchor golden tests: a three-group graph whose clique
group is markedly more cohesive than the two ring groups, and a hub graph
where three well-connected vertices reach everyone else. The planted
partition generator produces assortative random graphs with a known ground
truth.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, Partition, build_graph


@dataclass(frozen=True)
class PlantedPartitionParams:
    group_count: int
    group_size: int
    p_in: float
    p_out: float
    seed: int

    def __post_init__(self):
        if self.group_count < 1:
            raise ValueError("group_count must be >= 1")
        if self.group_size < 1:
            raise ValueError("group_size must be >= 1")
        for name, p in (("p_in", self.p_in), ("p_out", self.p_out)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")


def three_group_graph() -> tuple[Graph, Partition]:
    """12-vertex demo: a 4-clique (black) plus two 4-rings (red, blue).

    Every red/blue vertex has two in-group neighbors and one cross-group
    neighbor; every black vertex has three in-group neighbors. 19 edges
    total. Bit-identical across runs.
    """
    black = ["b1", "b2", "b3", "b4"]
    red = ["r1", "r2", "r3", "r4"]
    blue = ["u1", "u2", "u3", "u4"]
    edges: list[tuple[str, str]] = []
    for i in range(4):
        for j in range(i + 1, 4):
            edges.append((black[i], black[j]))
    for ring in (red, blue):
        for i in range(4):
            edges.append((ring[i], ring[(i + 1) % 4]))
    edges += [
        ("b1", "r1"),
        ("b2", "u1"),
        ("r2", "u2"),
        ("r3", "u3"),
        ("r4", "u4"),
    ]
    graph = build_graph(edges)
    group_of = tuple(
        0 if lbl.startswith("b") else 1 if lbl.startswith("r") else 2
        for lbl in graph.labels
    )
    partition = Partition(
        group_of=group_of, group_count=3, group_labels=("black", "red", "blue")
    )
    return graph, partition


def hub_hierarchy_graph() -> Graph:
    """15-vertex demo: three hubs on a path, each with four private leaves.

    The hub path keeps the graph connected without changing domination
    sizes: the three hubs reach all twelve leaves.
    """
    edges: list[tuple[str, str]] = [("h1", "h2"), ("h2", "h3")]
    for h in range(3):
        for leaf in range(4):
            edges.append((f"h{h + 1}", f"l{4 * h + leaf + 1}"))
    return build_graph(edges)


def planted_partition(params: PlantedPartitionParams) -> tuple[Graph, Partition]:
    """Seeded random graph with groups planted via p_in/p_out edge odds.

    Every vertex pair draws once from the generator, so equal seeds yield
    identical graphs regardless of the probabilities.
    """
    rng = random.Random(params.seed)
    n = params.group_count * params.group_size
    group_of = tuple(v // params.group_size for v in range(n))
    labels = [f"v{v}" for v in range(n)]
    # Self-pairs intern every label (in vertex order) before any edge, so
    # isolated vertices survive and indices line up with the ground truth.
    pairs: list[tuple[str, str]] = [(lbl, lbl) for lbl in labels]
    for u in range(n):
        for v in range(u + 1, n):
            p = params.p_in if group_of[u] == group_of[v] else params.p_out
            if rng.random() < p:
                pairs.append((labels[u], labels[v]))
    graph = build_graph(pairs)
    partition = Partition(
        group_of=group_of,
        group_count=params.group_count,
        group_labels=tuple(f"g{i}" for i in range(params.group_count)),
    )
    return graph, partition
