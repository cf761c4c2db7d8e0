"""Radicalization scales for communities in interaction networks.

Structural scales (relative group modularity for cohesion/isolation, greedy
partial dominating sets for authority concentration), dictionary-based
speech scales, and Pareto-frontier selection of the most extreme
communities, plus an end-to-end windowed pipeline and CLI.
"""

from .community import (
    AUTO,
    DetectionConfig,
    DetectionResult,
    detect,
    detect_communities,
    filter_by_size,
    minimum_detectable_size,
    resolution_size_threshold,
)
from .domination import (
    DominationResult,
    brute_force_min_pds,
    coverage,
    greedy_partial_dominating_set,
)
from .errors import RadscalesError
from .events import (
    Event,
    EventLog,
    WindowSpec,
    build_interaction_graph,
    ingest_events,
    parse_timestamp,
    slice_window,
)
from .graph import (
    Graph,
    Partition,
    build_graph,
    induced_subgraph,
    load_edge_list,
    load_partition,
)
from .lexicon import (
    FoundationMap,
    FoundationScores,
    Lexicon,
    parse_mfd_dic,
    score_by_community,
    score_corpus,
    tokenize,
)
from .modularity import (
    ModularityReport,
    d_modularity,
    d_modularity_report,
    group_contribution,
    modularity,
)
from .pareto import CriterionSpec, Direction, ParetoPoint, dominates, pareto_frontier
from .pipeline import (
    AnalysisConfig,
    SpeechReport,
    StructuralReport,
    emit_plot_data,
    read_membership,
    run_speech_analysis,
    run_structural_analysis,
)
from .synth import (
    PlantedPartitionParams,
    hub_hierarchy_graph,
    planted_partition,
    three_group_graph,
)

__version__ = "0.1.0"

__all__ = [
    "AUTO",
    "AnalysisConfig",
    "CriterionSpec",
    "DetectionConfig",
    "DetectionResult",
    "Direction",
    "DominationResult",
    "Event",
    "EventLog",
    "FoundationMap",
    "FoundationScores",
    "Graph",
    "Lexicon",
    "ModularityReport",
    "ParetoPoint",
    "Partition",
    "PlantedPartitionParams",
    "RadscalesError",
    "SpeechReport",
    "StructuralReport",
    "WindowSpec",
    "brute_force_min_pds",
    "build_graph",
    "build_interaction_graph",
    "coverage",
    "d_modularity",
    "d_modularity_report",
    "detect",
    "detect_communities",
    "dominates",
    "emit_plot_data",
    "filter_by_size",
    "greedy_partial_dominating_set",
    "group_contribution",
    "hub_hierarchy_graph",
    "induced_subgraph",
    "ingest_events",
    "load_edge_list",
    "load_partition",
    "minimum_detectable_size",
    "modularity",
    "pareto_frontier",
    "parse_mfd_dic",
    "parse_timestamp",
    "planted_partition",
    "read_membership",
    "resolution_size_threshold",
    "run_speech_analysis",
    "run_structural_analysis",
    "score_by_community",
    "score_corpus",
    "slice_window",
    "three_group_graph",
    "tokenize",
]
