"""Maximum-weight bipartite matching with deferred dual updates."""

from .baselines import DenseCostMatrix, hungarian_eager, mcmf_dijkstra
from .certificate import check_certificate
from .graph import (
    BipartiteGraph,
    Edge,
    GraphError,
    Matching,
    build,
    clean,
    prune_top_l,
    read_graph,
    validate,
    write_graph,
)
from .heap import PairingHeap
from .kwok import (
    DualLabels,
    KwokSolver,
    SolveOptions,
    SolveResult,
    SolveStats,
    solve,
    solve_sorted_adjacency,
)
from .oracle import brute_force_mwm, enumerate_all_matchings_weight

__all__ = [
    "BipartiteGraph", "DenseCostMatrix", "DualLabels", "Edge", "GraphError",
    "KwokSolver", "Matching", "PairingHeap", "SolveOptions", "SolveResult",
    "SolveStats", "brute_force_mwm", "build", "check_certificate", "clean",
    "enumerate_all_matchings_weight", "hungarian_eager", "mcmf_dijkstra",
    "prune_top_l", "read_graph", "solve", "solve_sorted_adjacency", "validate",
    "write_graph",
]
