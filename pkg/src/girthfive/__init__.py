"""girthfive: search for n-node graphs with no 3- or 4-cycles and maximum edges.

The objective is s(G) = edges - triangles - squares, whose maximum over all
n-node graphs equals the best feasible edge count at that size. The package
provides the exact counting core, tabu search over single-edge flips, the
incremental (curriculum) campaign that seeds each size from smaller best
graphs, a sparse6 codec plus archive, an edge-flip environment, and an
exhaustive small-n oracle.
"""

from .archive import ArchiveError, GraphRecord, archive_read, archive_write
from .campaign import CampaignConfig, campaign_run, paired_curriculum_experiment, worker_loop
from .canon import canonical_certificate, canonical_relabel
from .env import EnvConfig, EpisodeTranscript, StepResult, reset, run_episode, step
from .fixtures import published_graph, published_sparse6
from .graphs import (
    MAX_NODES,
    FlipAction,
    Graph,
    ScoreDelta,
    count_squares,
    count_triangles,
    flip,
    flip_delta,
    graph_from_edges,
    new_graph,
    pad_nodes,
    random_graph,
)
from .oracle import OracleResult, exhaustive_extremal
from .scoring import (
    CONJECTURED_DENSITY_LIMIT,
    REFERENCE_TABLE,
    ReferenceEntry,
    ScoreBreakdown,
    is_feasible,
    normalized_score,
    reference_lookup,
    repair_to_feasible,
    score,
    upper_bound,
)
from .sparse6 import Sparse6Error, decode_sparse6, encode_sparse6
from .store import BestGraphStore, BoundViolation, EmptySlotError, SubmitOutcome, sample_seed, store_submit
from .tabu import SearchOutcome, TabuConfig, TabuState, restart_loop, tabu_search, tabu_step

__version__ = "0.1.0"

__all__ = [
    "ArchiveError",
    "BestGraphStore",
    "BoundViolation",
    "CampaignConfig",
    "CONJECTURED_DENSITY_LIMIT",
    "EmptySlotError",
    "EnvConfig",
    "EpisodeTranscript",
    "FlipAction",
    "Graph",
    "GraphRecord",
    "MAX_NODES",
    "OracleResult",
    "REFERENCE_TABLE",
    "ReferenceEntry",
    "ScoreBreakdown",
    "ScoreDelta",
    "SearchOutcome",
    "Sparse6Error",
    "StepResult",
    "SubmitOutcome",
    "TabuConfig",
    "TabuState",
    "archive_read",
    "archive_write",
    "campaign_run",
    "canonical_certificate",
    "canonical_relabel",
    "count_squares",
    "count_triangles",
    "decode_sparse6",
    "encode_sparse6",
    "exhaustive_extremal",
    "flip",
    "flip_delta",
    "graph_from_edges",
    "is_feasible",
    "new_graph",
    "normalized_score",
    "pad_nodes",
    "paired_curriculum_experiment",
    "published_graph",
    "published_sparse6",
    "random_graph",
    "reference_lookup",
    "repair_to_feasible",
    "reset",
    "restart_loop",
    "run_episode",
    "sample_seed",
    "score",
    "step",
    "store_submit",
    "tabu_search",
    "tabu_step",
    "upper_bound",
    "worker_loop",
]
