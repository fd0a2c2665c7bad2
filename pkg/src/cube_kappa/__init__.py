"""Connectivity and extra connectivity of k-ary n-cubes."""
__version__ = "0.1.0"

from .constructions import extremal_cut, path_fragment, verify_extremal_cut
from .cube import CubeMeta, build_kary_cube, partition_over_dimension, vertex_codec
from .graph import Graph, VertexSet, classify_small_component, components, is_h_extra_cut
from .graph import neighborhood_of_set
from .patterns import CutReport, Pattern, cut_report
from .solver import (
    Budget,
    EvidenceKind,
    ExtraConnectivityResult,
    common_neighbor_count,
    exact_extra_connectivity,
    fragment_search_bounds,
    is_super_connected,
    vertex_connectivity,
)

__all__ = [
    "Budget",
    "CubeMeta",
    "CutReport",
    "EvidenceKind",
    "ExtraConnectivityResult",
    "Graph",
    "Pattern",
    "VertexSet",
    "build_kary_cube",
    "classify_small_component",
    "common_neighbor_count",
    "components",
    "cut_report",
    "exact_extra_connectivity",
    "extremal_cut",
    "fragment_search_bounds",
    "is_h_extra_cut",
    "is_super_connected",
    "neighborhood_of_set",
    "partition_over_dimension",
    "path_fragment",
    "vertex_codec",
    "vertex_connectivity",
    "verify_extremal_cut",
]
