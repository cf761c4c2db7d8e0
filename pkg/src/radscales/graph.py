"""Simple undirected graphs and vertex partitions, plus their file formats.

Graphs are immutable after construction: vertices are dense 0-based indices
carrying external string labels, edges are unweighted, and self-loops or
parallel edges are dropped on input. Both types are safe for concurrent
reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Sequence

from .errors import (
    DuplicateAssignmentError,
    MalformedLineError,
    MissingVertexError,
    UnknownVertexError,
)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph over labeled vertices.

    ``labels[i]`` is the external id of vertex ``i``; ``adjacency[i]`` is the
    sorted tuple of its neighbor indices.
    """

    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(set(self.labels)):
            raise ValueError("vertex labels must be unique")
        if len(self.adjacency) != len(self.labels):
            raise ValueError("adjacency size must match label count")
        n = len(self.labels)
        arcs = set()
        for u, nbrs in enumerate(self.adjacency):
            if any(v < 0 or v >= n for v in nbrs):
                raise ValueError(f"neighbor index out of range for vertex {u}")
            if u in nbrs:
                raise ValueError(f"self-loop on vertex {u}")
            if tuple(sorted(set(nbrs))) != tuple(nbrs):
                raise ValueError(f"adjacency of vertex {u} must be sorted and duplicate-free")
            arcs.update((u, v) for v in nbrs)
        for u, v in arcs:
            if (v, u) not in arcs:
                raise ValueError(f"edge {u}-{v} is not symmetric")
        object.__setattr__(self, "_index", {lbl: i for i, lbl in enumerate(self.labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def index_of(self, label: str) -> int:
        """Internal index of an external label (KeyError if absent)."""
        return self._index[label]

    def has_label(self, label: str) -> bool:
        return label in self._index

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, ascending."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v


@dataclass(frozen=True)
class Partition:
    """Assignment of every vertex to exactly one of ``group_count`` groups.

    Group indices are dense: each of 0..k-1 is non-empty. ``group_labels``
    is optional; ``group_label(i)`` falls back to the stringified index.
    """

    group_of: tuple[int, ...]
    group_count: int
    group_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        k = self.group_count
        if k < 1 and self.group_of:
            raise ValueError("group_count must be >= 1 for a non-empty vertex set")
        seen = set()
        for v, g in enumerate(self.group_of):
            if not 0 <= g < k:
                raise ValueError(f"vertex {v} assigned to out-of-range group {g}")
            seen.add(g)
        if self.group_of and len(seen) != k:
            raise ValueError("every group index must be non-empty")
        if self.group_labels is not None and len(self.group_labels) != k:
            raise ValueError("group_labels length must equal group_count")

    def group_label(self, i: int) -> str:
        if not 0 <= i < self.group_count:
            raise IndexError(f"group index {i} out of range")
        if self.group_labels is not None:
            return self.group_labels[i]
        return str(i)

    def members(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.group_count:
            raise IndexError(f"group index {i} out of range")
        return tuple(v for v, g in enumerate(self.group_of) if g == i)

    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.group_count
        for g in self.group_of:
            counts[g] += 1
        return tuple(counts)


def build_graph(edges: Iterable[tuple[str, str]]) -> Graph:
    """Build a graph from labeled edge pairs.

    Labels are interned in first-seen order; self-loops are dropped and
    duplicate pairs (in either orientation) collapse to a single edge.
    An empty input yields the empty graph.
    """
    index: dict[str, int] = {}
    pairs: set[tuple[int, int]] = set()
    for a, b in edges:
        ia = index.setdefault(a, len(index))
        ib = index.setdefault(b, len(index))
        if ia == ib:
            continue
        pairs.add((min(ia, ib), max(ia, ib)))
    adj: list[list[int]] = [[] for _ in range(len(index))]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    return Graph(
        labels=tuple(index),
        adjacency=tuple(tuple(sorted(nbrs)) for nbrs in adj),
    )


def _split_record(line: str) -> list[str]:
    # TAB-separated if a TAB is present, otherwise whitespace-separated.
    if "\t" in line:
        return [f.strip() for f in line.split("\t")]
    return line.split()


def load_edge_list(stream: IO[str] | Iterable[str]) -> Graph:
    """Parse a ``src<TAB>dst`` (or space-separated) edge list.

    Blank lines and lines starting with '#' are skipped. Raises
    MalformedLineError for lines with other than two fields.
    """
    edges: list[tuple[str, str]] = []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = _split_record(line)
        if len(fields) != 2 or not all(fields):
            raise MalformedLineError(line_no, f"expected two fields, got {len(fields)}")
        edges.append((fields[0], fields[1]))
    return build_graph(edges)


def load_partition(stream: IO[str] | Iterable[str], graph: Graph) -> Partition:
    """Parse ``vertexLabel<TAB>groupLabel`` lines into a partition of *graph*.

    Group indices follow first-seen order of group labels. Raises
    UnknownVertexError for labels not in the graph, DuplicateAssignmentError
    for repeated vertices, and MissingVertexError if any graph vertex is
    left unassigned.
    """
    group_index: dict[str, int] = {}
    assigned: dict[int, int] = {}
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = _split_record(line)
        if len(fields) != 2 or not all(fields):
            raise MalformedLineError(line_no, f"expected two fields, got {len(fields)}")
        vertex_label, group_label = fields
        if not graph.has_label(vertex_label):
            raise UnknownVertexError(vertex_label)
        v = graph.index_of(vertex_label)
        if v in assigned:
            raise DuplicateAssignmentError(vertex_label)
        assigned[v] = group_index.setdefault(group_label, len(group_index))
    for v in range(graph.n):
        if v not in assigned:
            raise MissingVertexError(graph.labels[v])
    return Partition(
        group_of=tuple(assigned[v] for v in range(graph.n)),
        group_count=len(group_index),
        group_labels=tuple(group_index),
    )


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on the given vertex indices, relabeled densely.

    Keeps all edges with both endpoints inside; original labels are
    preserved. Raises IndexError on out-of-range indices.
    """
    wanted = sorted(set(vertices))
    for v in wanted:
        if not 0 <= v < graph.n:
            raise IndexError(f"vertex index {v} out of range")
    remap = {v: i for i, v in enumerate(wanted)}
    adj: list[list[int]] = [[] for _ in wanted]
    for v in wanted:
        adj[remap[v]] = sorted(remap[u] for u in graph.adjacency[v] if u in remap)
    return Graph(
        labels=tuple(graph.labels[v] for v in wanted),
        adjacency=tuple(tuple(nbrs) for nbrs in adj),
    )


def write_edge_list(graph: Graph, stream: IO[str]) -> None:
    """Write the graph in the edge-list format read by load_edge_list."""
    for u, v in graph.edges():
        stream.write(f"{graph.labels[u]}\t{graph.labels[v]}\n")


def write_partition(partition: Partition, labels: Sequence[str], stream: IO[str]) -> None:
    """Write ``vertexLabel<TAB>groupLabel`` lines for the given vertex labels."""
    for v, g in enumerate(partition.group_of):
        stream.write(f"{labels[v]}\t{partition.group_label(g)}\n")
