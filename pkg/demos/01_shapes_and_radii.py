"""Walk through the four space-filling cell shapes and their radio limits.

For a fixed transmission range, a cell can only grow until the two farthest
points of two neighboring cells are exactly one radio hop apart. This demo
builds each shape, lists its first-tier neighbor classes, recomputes every
worst-case distance by exhaustive vertex search, and prints the resulting
maximum cell radius and minimum sensing range per unit of range.
"""

from topocell import (
    CellShape,
    LatticeSpec,
    build_polyhedron,
    cell_center,
    max_cell_radius,
    max_vertex_pair_distance,
    min_sensing_range,
    neighbor_classes,
)
from topocell.geometry import worst_neighbor_coeff

for shape in CellShape:
    spec = LatticeSpec(shape, worst_neighbor_coeff(shape))  # scaled so R = 1
    base = build_polyhedron(shape, (0.0, 0.0, 0.0), 1.0)
    print(f"\n=== {shape.name}: {len(base.vertices)} vertices ===")
    for cls in neighbor_classes(shape):
        worst = max(
            max_vertex_pair_distance(base, build_polyhedron(shape, cell_center(spec, off), 1.0))
            for off in cls.offset_generators
        )
        print(f"  {cls.label:24s} x{cls.count:2d}   worst pair = {worst:.10f} R"
              f"   (closed form {cls.max_pair_distance_coeff:.10f} R)")
    print(f"  max radius      = {max_cell_radius(shape, 1.0):.6f} r_t")
    print(f"  min sensing     = {min_sensing_range(shape, 1.0):.6f} r_t")

print("\nThe truncated octahedron tolerates the largest cells, at the price of")
print("the largest sensing range; cube and rhombic dodecahedron tie at 0.25 r_t.")
