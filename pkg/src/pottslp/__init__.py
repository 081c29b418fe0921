"""Exact Potts-model internal-energy extremes on regular graphs.

Local-view enumeration, exact polynomial local statistics, LP duality
certificates for the cubic extremes, an exact rational simplex, and a
brute-force oracle that cross-validates everything on small graphs.
"""

from .graphs import (
    Graph,
    complete,
    complete_bipartite,
    connected_cubic_graphs,
    count_proper_colorings,
    cycle,
    cycle_closed_forms,
    from_edge_list,
    from_graph6,
    internal_energy,
    line_energy,
    local_view_distribution,
    petersen,
    potts_evaluation,
    potts_partition,
    prism,
)
from .localview import (
    LocalView,
    ViewClassTable,
    bicolor_boundary_view,
    canonicalize,
    clique_view,
    enumerate_views,
    extract_view,
    uniform_boundary_view,
)
from .polynomial import InexactDivisionError, Polynomial, RationalFunction

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "InexactDivisionError",
    "LocalView",
    "Polynomial",
    "RationalFunction",
    "ViewClassTable",
    "bicolor_boundary_view",
    "canonicalize",
    "clique_view",
    "complete",
    "complete_bipartite",
    "connected_cubic_graphs",
    "count_proper_colorings",
    "cycle",
    "cycle_closed_forms",
    "enumerate_views",
    "extract_view",
    "from_edge_list",
    "from_graph6",
    "internal_energy",
    "line_energy",
    "local_view_distribution",
    "petersen",
    "potts_evaluation",
    "potts_partition",
    "prism",
    "uniform_boundary_view",
]
