"""Topology control for dense 3D wireless sensor networks.

Partitions 3D space into space-filling cells (cube, hexagonal prism,
rhombic dodecahedron, truncated octahedron), assigns sensors to cells in
constant time from their coordinates, quantifies connectivity, coverage,
active-node counts and network lifetime per shape, and routes greedily
over cell ids.
"""

from .geometry import (
    CellShape,
    NeighborClass,
    Polyhedron,
    VERTEX_COUNTS,
    NEIGHBOR_COUNTS,
    build_polyhedron,
    cell_volume,
    max_cell_radius,
    max_vertex_pair_distance,
    neighbor_classes,
    sample_inside,
)
from .lattice import (
    CellId,
    LatticeSpec,
    assign_cell,
    assign_cell_nearest_int,
    assign_cell_oracle,
    assign_cells,
    assign_cells_nearest_int,
    assign_cells_oracle,
    cell_center,
    cell_centers,
    neighbors,
)
from .planner import (
    ConnectivityReport,
    ShapeReport,
    active_node_ratio,
    all_reports,
    cell_volume_coeff,
    lifetime_fraction,
    lifetime_table,
    min_sensing_range,
    radius_table,
    shape_report,
    verify_connectivity,
    verify_coverage,
)
from .routing import DEAD_END, DELIVERED, RoutePath, greedy_route, neighbor_choice_count
from .simulator import (
    AccuracyReport,
    Box,
    DeploymentConfig,
    EmptyRegionError,
    Node,
    SimResult,
    accuracy_experiment,
    active_count,
    deploy,
    lifetime_simulation,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport",
    "Box",
    "CellId",
    "CellShape",
    "ConnectivityReport",
    "DEAD_END",
    "DELIVERED",
    "DeploymentConfig",
    "EmptyRegionError",
    "LatticeSpec",
    "NEIGHBOR_COUNTS",
    "NeighborClass",
    "Node",
    "Polyhedron",
    "RoutePath",
    "ShapeReport",
    "SimResult",
    "VERTEX_COUNTS",
    "accuracy_experiment",
    "active_count",
    "active_node_ratio",
    "all_reports",
    "assign_cell",
    "assign_cell_nearest_int",
    "assign_cell_oracle",
    "assign_cells",
    "assign_cells_nearest_int",
    "assign_cells_oracle",
    "build_polyhedron",
    "cell_center",
    "cell_centers",
    "cell_volume",
    "cell_volume_coeff",
    "deploy",
    "greedy_route",
    "lifetime_fraction",
    "lifetime_simulation",
    "lifetime_table",
    "max_cell_radius",
    "max_vertex_pair_distance",
    "min_sensing_range",
    "neighbor_choice_count",
    "neighbor_classes",
    "neighbors",
    "radius_table",
    "sample_inside",
    "shape_report",
    "verify_connectivity",
    "verify_coverage",
]
