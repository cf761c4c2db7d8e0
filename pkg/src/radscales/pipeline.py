"""End-to-end analysis: one detection run projected onto time windows,
structural and speech scales per community, frontier selection, plot data.

Communities are detected once (or loaded) and carried across windows as a
user -> community-label membership map; users absent from the map are
excluded from a window's analysis. The cohesion axis is computed on the
whole window graph, while domination runs inside each community's induced
subgraph.
"""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence

from .community import AUTO, DetectionConfig, DetectionResult, detect, filter_by_size, minimum_detectable_size
from .domination import greedy_partial_dominating_set
from .errors import DuplicateAssignmentError, EmptyCorpusError, MalformedLineError
from .events import EventLog, WindowSpec, build_interaction_graph, slice_window
from .graph import Graph, Partition, induced_subgraph
from .lexicon import FoundationMap, FoundationScores, Lexicon, score_corpus
from .modularity import d_modularity_report
from .pareto import CriterionSpec, Direction, ParetoPoint, pareto_frontier

logger = logging.getLogger(__name__)

DEFAULT_RHOS = (0.5, 0.75, 1.0)
DEFAULT_PRIMARY_RHO = 0.75
DEFAULT_KINDS = ("retweet",)


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs shared by the per-window analyses."""

    rhos: tuple[float, ...] = DEFAULT_RHOS
    primary_rho: float = DEFAULT_PRIMARY_RHO
    min_community_size: int | str = AUTO
    kinds: tuple[str, ...] = DEFAULT_KINDS
    detection: DetectionConfig = field(default_factory=DetectionConfig)
    include_shares: bool = False

    def __post_init__(self):
        if self.primary_rho not in self.rhos:
            raise ValueError("primary_rho must be one of the swept rhos")


@dataclass(frozen=True)
class CommunityStructure:
    label: str
    size: int
    d_modularity: float | None
    pds_sizes: dict[float, int]
    on_frontier: bool


@dataclass(frozen=True)
class StructuralReport:
    window_label: str
    communities: tuple[CommunityStructure, ...]
    frontier: tuple[str, ...]
    parameters: dict
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "window": self.window_label,
            "parameters": self.parameters,
            "degenerate": self.degenerate,
            "communities": [
                {
                    "label": c.label,
                    "size": c.size,
                    "dModularity": c.d_modularity,
                    "pdsSizes": {str(r): s for r, s in c.pds_sizes.items()},
                    "onFrontier": c.on_frontier,
                }
                for c in self.communities
            ],
            "frontier": list(self.frontier),
        }


@dataclass(frozen=True)
class CommunitySpeech:
    scores: FoundationScores
    on_frontier: bool


@dataclass(frozen=True)
class SpeechReport:
    window_label: str
    axes: tuple[str, ...]
    communities: tuple[CommunitySpeech, ...]
    frontier: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "window": self.window_label,
            "axes": list(self.axes),
            "communities": [
                {**c.scores.to_dict(), "onFrontier": c.on_frontier}
                for c in self.communities
            ],
            "frontier": list(self.frontier),
        }


def read_membership(stream: IO[str] | Iterable[str]) -> dict[str, str]:
    """Parse ``user<TAB>communityLabel`` lines into a membership map."""
    membership: dict[str, str] = {}
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("\t")] if "\t" in line else line.split()
        if len(fields) != 2 or not all(fields):
            raise MalformedLineError(line_no, f"expected two fields, got {len(fields)}")
        user, community = fields
        if user in membership:
            raise DuplicateAssignmentError(user)
        membership[user] = community
    return membership


def membership_from_partition(graph: Graph, partition: Partition) -> dict[str, str]:
    """User label -> community label for a partition of *graph*."""
    return {
        graph.labels[v]: partition.group_label(g)
        for v, g in enumerate(partition.group_of)
    }


def detect_membership(
    events: EventLog,
    config: AnalysisConfig,
    detection_window: WindowSpec | None = None,
) -> tuple[dict[str, str], DetectionResult]:
    """One detection run over the (optionally sliced) event range."""
    scoped = slice_window(events, detection_window) if detection_window else events
    graph = build_interaction_graph(scoped, config.kinds)
    result = detect(graph, config.detection)
    return membership_from_partition(graph, result.partition), result


def _window_partition(graph: Graph, membership: Mapping[str, str]) -> Partition:
    """Partition of *graph* by membership label, groups ordered by label."""
    labels_present = sorted({membership[lbl] for lbl in graph.labels})
    index = {lbl: i for i, lbl in enumerate(labels_present)}
    return Partition(
        group_of=tuple(index[membership[lbl]] for lbl in graph.labels),
        group_count=len(labels_present),
        group_labels=tuple(labels_present),
    )


def _structural_window_report(
    events: EventLog,
    window: WindowSpec,
    membership: Mapping[str, str],
    config: AnalysisConfig,
    seed: int | None,
) -> StructuralReport:
    window_events = slice_window(events, window)
    raw_graph = build_interaction_graph(window_events, config.kinds)
    known = [v for v in range(raw_graph.n) if raw_graph.labels[v] in membership]
    graph = induced_subgraph(raw_graph, known)
    resolved_min = (
        minimum_detectable_size(graph)
        if config.min_community_size == AUTO
        else int(config.min_community_size)
    )
    partition = _window_partition(graph, membership)
    filtered, kept = filter_by_size(partition, graph, config.min_community_size)
    kept_labels = [partition.group_label(i) for i in kept]

    d_mod: dict[str, float | None] = {}
    if kept_labels:
        report = d_modularity_report(graph, filtered)
        d_mod = {g.label: g.di for g in report.per_group}

    sizes = filtered.sizes()
    label_to_new = {filtered.group_label(i): i for i in range(filtered.group_count)}
    communities: list[CommunityStructure] = []
    points: list[ParetoPoint] = []
    for label in kept_labels:
        new_index = label_to_new[label]
        members = filtered.members(new_index)
        sub = induced_subgraph(graph, members)
        pds_sizes = {
            rho: greedy_partial_dominating_set(sub, rho).size for rho in config.rhos
        }
        di = d_mod.get(label)
        communities.append(
            CommunityStructure(
                label=label,
                size=sizes[new_index],
                d_modularity=di,
                pds_sizes=pds_sizes,
                on_frontier=False,
            )
        )
        if di is None:
            logger.warning(
                "window %s: community %s has undefined relative modularity; "
                "excluded from the frontier",
                window.label,
                label,
            )
        else:
            points.append(ParetoPoint(label=label, values=(di, float(pds_sizes[config.primary_rho]))))

    criteria = (
        CriterionSpec("dModularity", Direction.HIGHER_IS_MORE_RADICAL),
        CriterionSpec(f"pdsSize@{config.primary_rho}", Direction.LOWER_IS_MORE_RADICAL),
    )
    frontier = pareto_frontier(points, criteria) if points else set()
    communities = [
        CommunityStructure(
            label=c.label,
            size=c.size,
            d_modularity=c.d_modularity,
            pds_sizes=c.pds_sizes,
            on_frontier=c.label in frontier,
        )
        for c in communities
    ]
    return StructuralReport(
        window_label=window.label,
        communities=tuple(communities),
        frontier=tuple(sorted(frontier)),
        parameters={
            "rhos": list(config.rhos),
            "primaryRho": config.primary_rho,
            "minCommunitySize": config.min_community_size,
            "resolvedMinSize": resolved_min,
            "kinds": list(config.kinds),
            "seed": seed,
        },
        degenerate=len(kept_labels) < 2,
    )


def run_structural_analysis(
    events: EventLog,
    windows: Sequence[WindowSpec],
    *,
    config: AnalysisConfig | None = None,
    membership: Mapping[str, str] | None = None,
    detection_window: WindowSpec | None = None,
) -> list[StructuralReport]:
    """One StructuralReport per window.

    Membership comes from an explicit map or from a single detection run
    over *detection_window* (all events when None). Window graphs are
    restricted to users with a membership, groups below the size threshold
    fold into a residual group, and the frontier combines the cohesion
    scale (higher = more radical) with the authority-set size at the
    primary rho (smaller = more radical).
    """
    config = config or AnalysisConfig()
    seed: int | None = None
    if membership is None:
        membership, result = detect_membership(events, config, detection_window)
        seed = result.seed
    return [
        _structural_window_report(events, window, membership, config, seed)
        for window in windows
    ]


def run_speech_analysis(
    events: EventLog,
    windows: Sequence[WindowSpec],
    membership: Mapping[str, str],
    lexicon: Lexicon,
    foundation_map: FoundationMap,
    *,
    include_shares: bool = False,
) -> list[SpeechReport]:
    """One SpeechReport per window from community corpora.

    By default only original posts count (shared/retweeted text is the
    behavioral signal, not the speaker's own words); ``include_shares``
    adds retweet text to the sharer's corpus. Communities with an empty
    corpus in a window are dropped with a warning. All axes point in the
    higher-is-more-radical direction.
    """
    axes = tuple(foundation_map.axes)
    criteria = tuple(CriterionSpec(a, Direction.HIGHER_IS_MORE_RADICAL) for a in axes)
    community_labels = sorted(set(membership.values()))
    reports: list[SpeechReport] = []
    for window in windows:
        docs: dict[str, list[str]] = {}
        for event in slice_window(events, window):
            if not event.text:
                continue
            if event.kind == "retweet" and not include_shares:
                continue
            speaker = event.speaker
            if speaker is None or speaker not in membership:
                continue
            docs.setdefault(membership[speaker], []).append(event.text)
        scored: list[FoundationScores] = []
        for label in community_labels:
            if not docs.get(label):
                logger.warning(
                    "window %s: community %s has an empty corpus; dropped",
                    window.label,
                    label,
                )
                continue
            try:
                scored.append(score_corpus(lexicon, foundation_map, docs[label], label))
            except EmptyCorpusError:
                logger.warning(
                    "window %s: community %s has no tokens; dropped",
                    window.label,
                    label,
                )
        points = [
            ParetoPoint(
                label=s.community_label,
                values=tuple(s.per_foundation[a] for a in axes),
            )
            for s in scored
        ]
        frontier = pareto_frontier(points, criteria) if points else set()
        reports.append(
            SpeechReport(
                window_label=window.label,
                axes=axes,
                communities=tuple(
                    CommunitySpeech(scores=s, on_frontier=s.community_label in frontier)
                    for s in scored
                ),
                frontier=tuple(sorted(frontier)),
            )
        )
    return reports


def _safe_name(label: str) -> str:
    return re.sub(r"[^\w.-]+", "_", label)


def emit_plot_data(
    report: StructuralReport | SpeechReport,
    out_dir: Path | str,
) -> Path:
    """Write one CSV of plot-ready rows for the report's window.

    Structural reports become scatter points (cohesion vs authority-set
    size); speech reports become one row per community with a column per
    axis, for parallel-coordinates rendering.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if isinstance(report, StructuralReport):
        path = out_dir / f"structural_{_safe_name(report.window_label)}.csv"
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["community", "d_modularity", "pds_size", "on_frontier"])
            for c in report.communities:
                writer.writerow(
                    [
                        c.label,
                        "" if c.d_modularity is None else repr(c.d_modularity),
                        c.pds_sizes[report.parameters["primaryRho"]],
                        c.on_frontier,
                    ]
                )
        return path
    path = out_dir / f"speech_{_safe_name(report.window_label)}.csv"
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["community", *report.axes, "on_frontier"])
        for c in report.communities:
            writer.writerow(
                [
                    c.scores.community_label,
                    *(repr(c.scores.per_foundation[a]) for a in report.axes),
                    c.on_frontier,
                ]
            )
    return path


def write_json(payload: object, path: Path) -> None:
    """Deterministic JSON emission: fixed key order, trailing newline."""
    with Path(path).open("w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
