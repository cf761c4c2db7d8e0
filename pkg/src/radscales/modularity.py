"""Network modularity, per-group contributions, and relative (d-) modularity.

All functions are pure over immutable inputs and use the grouped O(n+m)
computation: for group i with e_i in-group edges and degree sum D_i,

    Q_i = e_i / m - (D_i / 2m)^2        Q = sum_i Q_i        d_i = Q_i / Q

which is algebraically the configuration-model comparison summed over
same-group vertex pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyGraphError, ZeroModularityError
from .graph import Graph, Partition

# Below this magnitude Q is treated as zero and relative contributions
# are undefined.
ZERO_Q_THRESHOLD = 1e-12


@dataclass(frozen=True)
class GroupModularity:
    """One group's absolute (qi) and relative (di) contribution."""

    group_index: int
    label: str
    qi: float
    di: float | None


@dataclass(frozen=True)
class ModularityReport:
    """Network modularity plus the per-group breakdown summing to it."""

    q: float
    per_group: tuple[GroupModularity, ...]

    def to_dict(self) -> dict:
        return {
            "Q": self.q,
            "groups": [
                {"label": g.label, "Qi": g.qi, "di": g.di} for g in self.per_group
            ],
        }


def _check_inputs(graph: Graph, partition: Partition) -> None:
    if graph.m == 0:
        raise EmptyGraphError("modularity needs at least one edge")
    if len(partition.group_of) != graph.n:
        raise ValueError("partition does not cover the graph's vertex set")


def _group_sums(graph: Graph, partition: Partition) -> tuple[list[int], list[int]]:
    """Per-group in-edge counts and degree sums, one pass over edges/vertices."""
    in_edges = [0] * partition.group_count
    degree_sums = [0] * partition.group_count
    group_of = partition.group_of
    for v in range(graph.n):
        degree_sums[group_of[v]] += graph.degree(v)
    for u, v in graph.edges():
        if group_of[u] == group_of[v]:
            in_edges[group_of[u]] += 1
    return in_edges, degree_sums


def _contribution(e_i: int, d_i: int, m: int) -> float:
    return e_i / m - (d_i / (2 * m)) ** 2


def modularity(graph: Graph, partition: Partition) -> float:
    """Modularity of the partition: edge concentration inside groups
    versus the degree-preserving random expectation."""
    _check_inputs(graph, partition)
    in_edges, degree_sums, m = *_group_sums(graph, partition), graph.m
    return sum(_contribution(e, d, m) for e, d in zip(in_edges, degree_sums))


def group_contribution(graph: Graph, partition: Partition, group_index: int) -> float:
    """Absolute contribution Q_i of one group to the network modularity."""
    _check_inputs(graph, partition)
    if not 0 <= group_index < partition.group_count:
        raise IndexError(f"group index {group_index} out of range")
    in_edges, degree_sums = _group_sums(graph, partition)
    return _contribution(in_edges[group_index], degree_sums[group_index], graph.m)


def d_modularity(graph: Graph, partition: Partition, group_index: int) -> float:
    """Relative contribution Q_i / Q of one group.

    Raises ZeroModularityError when |Q| is below ZERO_Q_THRESHOLD: the
    scale is undefined there (e.g. single-group partitions).
    """
    _check_inputs(graph, partition)
    if not 0 <= group_index < partition.group_count:
        raise IndexError(f"group index {group_index} out of range")
    in_edges, degree_sums, m = *_group_sums(graph, partition), graph.m
    q = sum(_contribution(e, d, m) for e, d in zip(in_edges, degree_sums))
    if abs(q) < ZERO_Q_THRESHOLD:
        raise ZeroModularityError("relative contribution undefined: Q is zero")
    return _contribution(in_edges[group_index], degree_sums[group_index], m) / q


def d_modularity_report(graph: Graph, partition: Partition) -> ModularityReport:
    """Q plus every group's Q_i and d_i in one pass.

    d_i is None for all groups when Q is zero. The per-group Q_i values
    sum to Q exactly (same summation order as modularity()).
    """
    _check_inputs(graph, partition)
    in_edges, degree_sums, m = *_group_sums(graph, partition), graph.m
    qis = [_contribution(e, d, m) for e, d in zip(in_edges, degree_sums)]
    q = sum(qis)
    defined = abs(q) >= ZERO_Q_THRESHOLD
    per_group = tuple(
        GroupModularity(
            group_index=i,
            label=partition.group_label(i),
            qi=qi,
            di=qi / q if defined else None,
        )
        for i, qi in enumerate(qis)
    )
    return ModularityReport(q=q, per_group=per_group)
