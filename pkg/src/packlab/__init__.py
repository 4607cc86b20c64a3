"""Exact packing, domination and injective colouring invariants of graphs,
with constructions and certificates for hypercubes and prisms."""

from .graph import (
    Graph,
    GraphError,
    HypercubeLabeling,
    Neighborhood,
    PrismGraph,
    ProductGraph,
    ProductKind,
    bipartition,
    cartesian_product,
    chained_c5,
    conflict_graph,
    direct_product,
    graph_from_edge_list,
    hypercube,
    prism,
)
from .solvers import (
    Budget,
    BudgetExceeded,
    InvariantKind,
    InvariantResult,
    Status,
    brute_force_oracle,
    compute_invariant,
    max_independent_set,
    regular_sphere_bounds,
)
from .verify import Partition, SetKind, Verdict, verify_injective_coloring, verify_set

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExceeded",
    "Graph",
    "GraphError",
    "HypercubeLabeling",
    "InvariantKind",
    "InvariantResult",
    "Neighborhood",
    "Partition",
    "PrismGraph",
    "ProductGraph",
    "ProductKind",
    "SetKind",
    "Status",
    "Verdict",
    "bipartition",
    "brute_force_oracle",
    "cartesian_product",
    "chained_c5",
    "compute_invariant",
    "conflict_graph",
    "direct_product",
    "graph_from_edge_list",
    "hypercube",
    "max_independent_set",
    "prism",
    "regular_sphere_bounds",
    "verify_injective_coloring",
    "verify_set",
]
