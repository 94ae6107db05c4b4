"""Print the planning tables with reference values and deviations.

Table I compares, per shape, the largest usable cell radius and the
minimum sensing range per unit of transmission range. Table II compares
active-node counts and network lifetime relative to the truncated
octahedron tessellation. Each computed constant is shown next to its
rounded reference value; deviations sit at the reference's own printing
precision.
"""

from topocell import LatticeSpec, verify_connectivity, verify_coverage
from topocell.planner import (
    all_reports,
    lifetime_table,
    radius_table,
    render_csv,
)

print("Table I: cell radius and sensing range (per unit transmission range)")
print(render_csv(radius_table()))
print("Table II: active nodes and network lifetime (relative to TO)")
print(render_csv(lifetime_table()))

print("exact closed forms:")
for rep in all_reports():
    print(f"  {rep.shape.value}: R/r_t = {rep.max_radius_expr:22s}"
          f"  V/r_t^3 = {rep.cell_volume_expr:18s}  active ratio = {rep.active_node_ratio_expr}")

print("\nconnectivity check at the designed radius (binding class sits exactly at r_t):")
for rep in all_reports():
    spec = LatticeSpec(rep.shape, 1.0)
    con = verify_connectivity(spec)
    cov = verify_coverage(spec, rep.min_sensing_coeff)
    print(f"  {rep.shape.value}: worst neighbor distance {con.max_neighbor_distance:.9f} r_t"
          f"  ({con.binding_class}), connected={con.ok}, covered={cov}")
