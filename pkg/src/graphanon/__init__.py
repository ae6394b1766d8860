"""k-degree anonymization of simple graphs.

Two-step pipeline: evolve the degree sequence until every degree value is
shared by at least k nodes (minimizing L1 drift from the original), then
realize the new sequence on the original graph through edge rotations.
Includes utility metrics (edge intersection, centrality RMS), structural
re-identification analysis, and a batch CLI.
"""

from .datasets import DatasetError, available, load_dataset
from .evolution import (
    Candidate,
    ConvergenceError,
    EvolutionParams,
    InfeasibleKError,
    MutationError,
    anonymity_level,
    evolve,
    fitness,
    is_graphical,
    mutate,
    sequence_distance,
)
from .graph import (
    Graph,
    GraphSummary,
    ParseError,
    ValidationError,
    degree_sequence,
    parse_edge_list,
    parse_gml,
    serialize_edge_list,
    serialize_gml,
    shortest_path_lengths,
    summary_stats,
)
from .metrics import (
    BandFractions,
    CentralityVector,
    MetricsReport,
    RiskReport,
    betweenness,
    build_risk_report,
    candidate_sets,
    closeness,
    compute_report,
    degree_centrality,
    degree_histogram,
    edge_intersection,
    risk_bands,
    rms_difference,
    vertex_refinement,
)
from .rewire import (
    AnonymizationResult,
    ReconstructionError,
    apply_edge_rotations,
    difference_vector,
)

__version__ = "0.1.0"

__all__ = [
    "AnonymizationResult",
    "BandFractions",
    "Candidate",
    "CentralityVector",
    "ConvergenceError",
    "DatasetError",
    "EvolutionParams",
    "Graph",
    "GraphSummary",
    "InfeasibleKError",
    "MetricsReport",
    "MutationError",
    "ParseError",
    "ReconstructionError",
    "RiskReport",
    "ValidationError",
    "anonymity_level",
    "apply_edge_rotations",
    "available",
    "betweenness",
    "build_risk_report",
    "candidate_sets",
    "closeness",
    "compute_report",
    "degree_centrality",
    "degree_histogram",
    "degree_sequence",
    "difference_vector",
    "edge_intersection",
    "evolve",
    "fitness",
    "is_graphical",
    "load_dataset",
    "mutate",
    "parse_edge_list",
    "parse_gml",
    "risk_bands",
    "rms_difference",
    "sequence_distance",
    "serialize_edge_list",
    "serialize_gml",
    "shortest_path_lengths",
    "summary_stats",
    "vertex_refinement",
    "__version__",
]
