"""Analytical comparison of the four cell shapes for a fixed radio range.

For each shape this module reports, per unit of transmission range r_t:
the largest usable cell circumradius, the minimum sensing range (the cell
diameter, since the active sensor can sit anywhere in its cell), the cell
volume, and the resulting active-node and lifetime ratios relative to the
truncated octahedron. Every decimal constant is carried next to its exact
closed form, and a rounded reference value with its printed precision so
reports can flag regressions without fighting rounding noise.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    CellShape,
    NEIGHBOR_COUNTS,
    build_polyhedron,
    cell_volume,
    max_cell_radius,
    max_vertex_pair_distance,
    neighbor_classes,
    sample_inside,
)
from .lattice import LatticeSpec, cell_center

SHAPE_ORDER = (CellShape.CB, CellShape.HP, CellShape.RD, CellShape.TO)

_SQRT3 = math.sqrt(3.0)
_SQRT14 = math.sqrt(14.0)
_SQRT17 = math.sqrt(17.0)


@dataclass(frozen=True)
class Reference:
    """A rounded reference constant and the number of decimals it was printed with."""

    value: float
    decimals: int | None = None  # None means the value is exact

    def gate(self, base_tol: float) -> float:
        """Comparison tolerance: at least half an ulp of the printed precision."""
        if self.decimals is None:
            return base_tol
        return max(base_tol, 0.5 * 10.0 ** (-self.decimals) + 1e-12)


REFERENCE_RADIUS = {
    CellShape.CB: Reference(0.25),
    CellShape.HP: Reference(0.26726, 5),
    CellShape.RD: Reference(0.25),
    CellShape.TO: Reference(0.271163, 6),
}

REFERENCE_SENSING = {
    CellShape.CB: Reference(0.5),
    CellShape.HP: Reference(0.53452, 5),
    CellShape.RD: Reference(0.5),
    CellShape.TO: Reference(0.542326, 6),
}

REFERENCE_VOLUME = {
    CellShape.CB: Reference(0.024056, 6),
    CellShape.HP: Reference(0.03818, 5),
    CellShape.RD: Reference(0.03125),
    CellShape.TO: Reference(0.057, 3),
}

REFERENCE_ACTIVE_RATIO = {
    CellShape.CB: Reference(2.372239, 6),
    CellShape.HP: Reference(1.49468, 5),
    CellShape.RD: Reference(1.82615, 5),
    CellShape.TO: Reference(1.0),
}

REFERENCE_LIFETIME = {
    CellShape.CB: Reference(0.42154, 5),
    CellShape.HP: Reference(0.669, 3),
    CellShape.RD: Reference(0.5476, 4),
    CellShape.TO: Reference(1.0),
}

REFERENCE_CLASS_COEFF = {
    (CellShape.CB, "shared-face"): Reference(2.828427, 6),
    (CellShape.CB, "shared-edge"): Reference(3.4641, 4),
    (CellShape.CB, "shared-vertex"): Reference(4.0),
    (CellShape.HP, "shared-square-face"): Reference(3.16227766, 8),
    (CellShape.HP, "shared-hexagonal-face"): Reference(2.828427, 6),
    (CellShape.HP, "shared-edge"): Reference(3.741657387, 9),
    (CellShape.RD, "shared-face"): Reference(3.16227766, 8),
    (CellShape.RD, "shared-vertex"): Reference(4.0),
    (CellShape.TO, "shared-square-face"): Reference(3.6878177829, 10),
    (CellShape.TO, "shared-hexagonal-face"): Reference(3.34664, 5),
}

_RADIUS_EXPR = {
    CellShape.CB: "1/4",
    CellShape.HP: "1/sqrt(14)",
    CellShape.RD: "1/4",
    CellShape.TO: "sqrt(5)/(2*sqrt(17))",
}

_VOLUME_EXPR = {
    CellShape.CB: "1/(24*sqrt(3))",
    CellShape.HP: "1/(7*sqrt(14))",
    CellShape.RD: "1/32",
    CellShape.TO: "4/(17*sqrt(17))",
}

_RATIO_EXPR = {
    CellShape.CB: "96*sqrt(3)/(17*sqrt(17))",
    CellShape.HP: "28*sqrt(14)/(17*sqrt(17))",
    CellShape.RD: "128/(17*sqrt(17))",
    CellShape.TO: "1",
}


@dataclass(frozen=True)
class ShapeReport:
    """Per-shape planning constants, all normalized by the transmission range."""

    shape: CellShape
    neighbor_count: int
    max_radius_coeff: float
    max_radius_expr: str
    min_sensing_coeff: float
    cell_volume_coeff: float
    cell_volume_expr: str
    active_node_ratio_vs_to: float
    active_node_ratio_expr: str
    lifetime_fraction_vs_to: float


def min_sensing_range(shape: CellShape, r_t: float) -> float:
    """Smallest sensing radius covering the whole cell: the diameter 2R."""
    return 2.0 * max_cell_radius(shape, r_t)


def cell_volume_coeff(shape: CellShape) -> float:
    """Cell volume per unit r_t cubed, at the maximum usable radius."""
    return cell_volume(shape, max_cell_radius(shape, 1.0))


def active_node_ratio(shape: CellShape) -> float:
    """Active nodes needed relative to the TO tessellation (same region)."""
    return cell_volume_coeff(CellShape.TO) / cell_volume_coeff(shape)


def lifetime_fraction(shape: CellShape) -> float:
    """Network lifetime relative to TO; the reciprocal of the active-node ratio."""
    return 1.0 / active_node_ratio(shape)


def shape_report(shape: CellShape) -> ShapeReport:
    shape = CellShape(shape)
    return ShapeReport(
        shape=shape,
        neighbor_count=NEIGHBOR_COUNTS[shape],
        max_radius_coeff=max_cell_radius(shape, 1.0),
        max_radius_expr=_RADIUS_EXPR[shape],
        min_sensing_coeff=min_sensing_range(shape, 1.0),
        cell_volume_coeff=cell_volume_coeff(shape),
        cell_volume_expr=_VOLUME_EXPR[shape],
        active_node_ratio_vs_to=active_node_ratio(shape),
        active_node_ratio_expr=_RATIO_EXPR[shape],
        lifetime_fraction_vs_to=lifetime_fraction(shape),
    )


def all_reports() -> list[ShapeReport]:
    return [shape_report(s) for s in SHAPE_ORDER]


def radius_table() -> list[dict]:
    """Rows of table I: radius and sensing-range coefficients with deviations."""
    rows = []
    for rep in all_reports():
        r_ref = REFERENCE_RADIUS[rep.shape]
        s_ref = REFERENCE_SENSING[rep.shape]
        rows.append({
            "shape": rep.shape.value,
            "neighbor_count": rep.neighbor_count,
            "max_radius_coeff": rep.max_radius_coeff,
            "max_radius_reference": r_ref.value,
            "max_radius_deviation": abs(rep.max_radius_coeff - r_ref.value),
            "min_sensing_coeff": rep.min_sensing_coeff,
            "min_sensing_reference": s_ref.value,
            "min_sensing_deviation": abs(rep.min_sensing_coeff - s_ref.value),
        })
    return rows


def lifetime_table() -> list[dict]:
    """Rows of table II: active-node and lifetime ratios with deviations."""
    rows = []
    for rep in all_reports():
        a_ref = REFERENCE_ACTIVE_RATIO[rep.shape]
        l_ref = REFERENCE_LIFETIME[rep.shape]
        rows.append({
            "shape": rep.shape.value,
            "active_node_ratio": rep.active_node_ratio_vs_to,
            "active_node_reference": a_ref.value,
            "active_node_deviation": abs(rep.active_node_ratio_vs_to - a_ref.value),
            "lifetime_fraction": rep.lifetime_fraction_vs_to,
            "lifetime_reference": l_ref.value,
            "lifetime_deviation": abs(rep.lifetime_fraction_vs_to - l_ref.value),
        })
    return rows


def radius_table_gates_ok(base_tol: float = 1e-6) -> bool:
    for rep in all_reports():
        if abs(rep.max_radius_coeff - REFERENCE_RADIUS[rep.shape].value) > REFERENCE_RADIUS[rep.shape].gate(base_tol):
            return False
        if abs(rep.min_sensing_coeff - REFERENCE_SENSING[rep.shape].value) > REFERENCE_SENSING[rep.shape].gate(base_tol):
            return False
    return True


def lifetime_table_gates_ok(base_tol: float = 1e-5) -> bool:
    for rep in all_reports():
        if abs(rep.active_node_ratio_vs_to - REFERENCE_ACTIVE_RATIO[rep.shape].value) > REFERENCE_ACTIVE_RATIO[rep.shape].gate(base_tol):
            return False
        if abs(rep.lifetime_fraction_vs_to - REFERENCE_LIFETIME[rep.shape].value) > REFERENCE_LIFETIME[rep.shape].gate(base_tol):
            return False
    return True


@dataclass(frozen=True)
class ConnectivityReport:
    """Worst-case distance between two points of neighboring cells, vs r_t."""

    max_neighbor_distance: float
    ok: bool
    binding_class: str
    per_class: dict[str, float]


def verify_connectivity(spec: LatticeSpec, circumradius: float | None = None,
                        rel_tol: float = 1e-9) -> ConnectivityReport:
    """Check that any two points of any two neighboring cells are within r_t.

    The optimum sits exactly on the constraint, so the check allows a
    relative slack of ``rel_tol``. Pass ``circumradius`` to probe a cell
    size other than the derived maximum (useful to show oversized cells
    break connectivity).
    """
    R = spec.circumradius if circumradius is None else float(circumradius)
    base = build_polyhedron(spec.shape, (0.0, 0.0, 0.0), R)
    scale = R / spec.circumradius
    per_class: dict[str, float] = {}
    for cls in neighbor_classes(spec.shape):
        worst = 0.0
        for off in cls.offset_generators:
            # place the neighbor on the (rescaled) lattice; (0,0,0) is an even row
            center = (cell_center(spec, off) - spec.sink) * scale
            other = build_polyhedron(spec.shape, center, R)
            worst = max(worst, max_vertex_pair_distance(base, other))
        per_class[cls.label] = worst
    binding = max(per_class, key=per_class.get)
    max_dist = per_class[binding]
    return ConnectivityReport(
        max_neighbor_distance=max_dist,
        ok=max_dist <= spec.r_t * (1.0 + rel_tol),
        binding_class=binding,
        per_class=per_class,
    )


def verify_coverage(spec: LatticeSpec, sensing_range: float, *,
                    samples: int = 0, seed: int | None = None,
                    rel_tol: float = 1e-6) -> bool:
    """True when the sensing range covers the whole cell from anywhere in it.

    The requirement is the cell diameter 2R. The default tolerance is
    relative 1e-6 so sensing ranges quoted to six decimals validate. With
    ``samples`` > 0 the claim is additionally probed with random point
    pairs inside one cell; a sampled pair beyond the sensing range rejects.
    """
    if not (math.isfinite(sensing_range) and sensing_range > 0):
        raise ValueError("sensing range must be positive and finite")
    diameter = 2.0 * spec.circumradius
    ok = sensing_range >= diameter * (1.0 - rel_tol)
    if ok and samples > 0:
        rng = np.random.default_rng(seed)
        poly = build_polyhedron(spec.shape, spec.sink, spec.circumradius)
        p = sample_inside(poly, samples, rng)
        q = sample_inside(poly, samples, rng)
        worst = float(np.sqrt(((p - q) ** 2).sum(axis=1)).max())
        ok = worst <= sensing_range * (1.0 + rel_tol)
    return ok


def render_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    """Serialize report rows to CSV with a stable column order."""
    if not rows:
        return ""
    cols = columns if columns is not None else list(rows[0].keys())
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def render_json(payload) -> str:
    """Serialize a report payload to deterministic JSON."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
