"""Space-filling cell shapes for 3D sensor-network tessellations.

Four convex polyhedra are practical as virtual cells for dense 3D
deployments because congruent copies of each tile space with no gaps:
the cube (CB), the hexagonal prism with optimal height (HP), the rhombic
dodecahedron (RD) and the truncated octahedron (TO). This module fixes one
concrete orientation per shape, builds explicit vertex lists, and derives
the constants a deployment planner needs: circumradii, cell volumes,
first-tier neighbor classes, and the worst-case distance between points of
two neighboring cells (the quantity that bounds the usable cell size for a
given transmission range).

Orientation conventions, for a cell centered at the origin with
circumradius R:

* CB: axis-aligned cube of side s = 2R/sqrt(3); vertices (+-s/2, +-s/2, +-s/2).
* HP: hexagon side a = R*sqrt(2/3), prism height h = a*sqrt(2). Hexagon
  corners sit at angles 30, 90, ..., 330 degrees so a flat side faces +x;
  corner rings at z = +-h/2. This matches the offset-row column lattice
  used by the lattice module (in-plane neighbors along +-x).
* RD: six 4-edge vertices at (+-R/sqrt2, +-R/sqrt2, 0) and (0, 0, +-R),
  eight 3-edge vertices at (+-R/sqrt2, 0, +-R/2) and (0, +-R/sqrt2, +-R/2).
* TO: 24 vertices following the pattern (+-d, +-d/2, 0) over all axis
  placements, with d = 2R/sqrt(5).

"Radius" always means circumradius, the largest center-to-vertex distance.
For RD that is the distance to the six 4-edge vertices; the eight 3-edge
vertices sit closer, at R*sqrt(3)/2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.spatial import ConvexHull

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT5 = math.sqrt(5.0)


class CellShape(str, Enum):
    """The four supported space-filling cell shapes."""

    CB = "cb"  # cube
    HP = "hp"  # hexagonal prism, optimal height
    RD = "rd"  # rhombic dodecahedron
    TO = "to"  # truncated octahedron


VERTEX_COUNTS = {
    CellShape.CB: 8,
    CellShape.HP: 12,
    CellShape.RD: 14,
    CellShape.TO: 24,
}


def as_point(p) -> np.ndarray:
    """Validate and convert a 3D point to a float array of shape (3,)."""
    q = np.asarray(p, dtype=float)
    if q.shape != (3,):
        raise ValueError(f"expected a 3D point, got array of shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise ValueError("point coordinates must be finite")
    return q


@dataclass(frozen=True, eq=False)
class Polyhedron:
    """A concrete cell instance: shape, center, circumradius, vertex list."""

    shape: CellShape
    center: np.ndarray
    circumradius: float
    vertices: np.ndarray  # (n, 3), one row per vertex

    def axis_extents(self) -> np.ndarray:
        """Half-widths of the axis-aligned bounding box about the center."""
        return np.abs(self.vertices - self.center).max(axis=0)

    def face_equations(self) -> np.ndarray:
        """Outward face planes, rows (a, b, c, off) with a*x+b*y+c*z+off <= 0 inside."""
        return ConvexHull(self.vertices).equations

    def contains(self, points, rel_tol: float = 1e-9):
        """Half-space membership test against the face planes.

        Accepts a single point or an (n, 3) array; returns a bool or a bool
        array accordingly. The tolerance is relative to the circumradius.
        """
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        eqs = self.face_equations()
        slack = eqs[:, :3] @ pts.T + eqs[:, 3:4]
        inside = (slack <= rel_tol * self.circumradius).all(axis=0)
        return bool(inside[0]) if single else inside

    def volume(self) -> float:
        return cell_volume(self.shape, self.circumradius)


@dataclass(frozen=True)
class NeighborClass:
    """One class of first-tier neighbors (cells sharing a face, edge or vertex).

    ``offset_generators`` are integer cell-id deltas producing every neighbor
    of the class from a reference cell. For HP they are valid as stated for
    cells in even rows (even v); the lattice module applies the odd-row
    parity correction.  ``max_pair_distance_coeff`` is the largest distance
    between any point of the cell and any point of a class neighbor, divided
    by the circumradius R.
    """

    shape: CellShape
    label: str
    count: int
    offset_generators: tuple[tuple[int, int, int], ...]
    max_pair_distance_coeff: float


def build_polyhedron(shape: CellShape, center, circumradius: float) -> Polyhedron:
    """Build the vertex list of a cell with the module's fixed orientations."""
    if not (math.isfinite(circumradius) and circumradius > 0):
        raise ValueError("circumradius must be positive and finite")
    shape = CellShape(shape)
    c = as_point(center)
    R = float(circumradius)

    if shape is CellShape.CB:
        half = R / _SQRT3
        local = half * np.array(list(itertools.product((-1.0, 1.0), repeat=3)))
    elif shape is CellShape.HP:
        a = R * math.sqrt(2.0 / 3.0)
        h = a * _SQRT2
        angles = np.deg2rad(np.arange(30.0, 360.0, 60.0))
        ring = np.column_stack([a * np.cos(angles), a * np.sin(angles)])
        local = np.vstack([
            np.column_stack([ring, np.full(6, h / 2.0)]),
            np.column_stack([ring, np.full(6, -h / 2.0)]),
        ])
    elif shape is CellShape.RD:
        q = R / _SQRT2
        local = np.array([
            (q, 0.0, R / 2), (q, 0.0, -R / 2), (q, q, 0.0), (q, -q, 0.0),
            (-q, 0.0, R / 2), (-q, 0.0, -R / 2), (-q, q, 0.0), (-q, -q, 0.0),
            (0.0, q, R / 2), (0.0, q, -R / 2), (0.0, -q, R / 2), (0.0, -q, -R / 2),
            (0.0, 0.0, R), (0.0, 0.0, -R),
        ])
    else:  # TO
        d = 2.0 * R / _SQRT5
        e = d / 2.0
        rows = []
        for sd in (d, -d):
            for se in (e, -e):
                rows += [
                    (sd, se, 0.0), (sd, 0.0, se), (se, sd, 0.0),
                    (0.0, sd, se), (se, 0.0, sd), (0.0, se, sd),
                ]
        local = np.array(rows)

    return Polyhedron(shape=shape, center=c, circumradius=R, vertices=c + local)


def max_vertex_pair_distance(a: Polyhedron, b: Polyhedron) -> float:
    """Largest distance between a vertex of ``a`` and a vertex of ``b``.

    For two convex polyhedra this equals the largest distance between any
    two points of the two bodies, which is why it bounds the transmission
    range needed between neighboring cells.
    """
    if a.shape is not b.shape:
        raise ValueError("polyhedra must share the same shape")
    if not math.isclose(a.circumradius, b.circumradius, rel_tol=1e-12):
        raise ValueError("polyhedra must share the same circumradius")
    diff = a.vertices[:, None, :] - b.vertices[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=-1)).max())


def _classes() -> dict[CellShape, tuple[NeighborClass, ...]]:
    cb_face = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))
    cb_edge = tuple(
        t for t in itertools.product((-1, 0, 1), repeat=3)
        if sum(abs(x) for x in t) == 2
    )
    cb_vertex = tuple(itertools.product((-1, 1), repeat=3))

    hp_square = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (-1, 1, 0), (-1, -1, 0))
    hp_hex = ((0, 0, 1), (0, 0, -1))
    hp_edge = tuple((du, dv, dw) for (du, dv, _) in hp_square for dw in (1, -1))

    rd_face = (
        (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0),
        (0, 0, 1), (-1, 0, 1), (0, -1, 1), (-1, -1, 1),
        (0, 0, -1), (1, 0, -1), (0, 1, -1), (1, 1, -1),
    )
    rd_vertex = ((1, 1, 0), (-1, -1, 0), (1, -1, 0), (-1, 1, 0), (-1, -1, 2), (1, 1, -2))

    to_square = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (-1, -1, 2), (1, 1, -2))
    to_hex = (
        (0, 0, 1), (0, 0, -1), (-1, 0, 1), (1, 0, -1),
        (0, -1, 1), (0, 1, -1), (-1, -1, 1), (1, 1, -1),
    )

    return {
        CellShape.CB: (
            NeighborClass(CellShape.CB, "shared-face", 6, cb_face, 2.0 * _SQRT2),
            NeighborClass(CellShape.CB, "shared-edge", 12, cb_edge, 2.0 * _SQRT3),
            NeighborClass(CellShape.CB, "shared-vertex", 8, cb_vertex, 4.0),
        ),
        CellShape.HP: (
            NeighborClass(CellShape.HP, "shared-square-face", 6, hp_square, math.sqrt(10.0)),
            NeighborClass(CellShape.HP, "shared-hexagonal-face", 2, hp_hex, math.sqrt(8.0)),
            NeighborClass(CellShape.HP, "shared-edge", 12, hp_edge, math.sqrt(14.0)),
        ),
        CellShape.RD: (
            NeighborClass(CellShape.RD, "shared-face", 12, rd_face, math.sqrt(10.0)),
            NeighborClass(CellShape.RD, "shared-vertex", 6, rd_vertex, 4.0),
        ),
        CellShape.TO: (
            NeighborClass(CellShape.TO, "shared-square-face", 6, to_square, 2.0 * math.sqrt(17.0) / _SQRT5),
            NeighborClass(CellShape.TO, "shared-hexagonal-face", 8, to_hex, 2.0 * math.sqrt(14.0) / _SQRT5),
        ),
    }


_NEIGHBOR_CLASSES = _classes()

NEIGHBOR_COUNTS = {
    shape: sum(cls.count for cls in classes)
    for shape, classes in _NEIGHBOR_CLASSES.items()
}


def neighbor_classes(shape: CellShape) -> tuple[NeighborClass, ...]:
    """First-tier neighbor classes of a cell of the given shape."""
    return _NEIGHBOR_CLASSES[CellShape(shape)]


def worst_neighbor_coeff(shape: CellShape) -> float:
    """Largest ``max_pair_distance_coeff`` over the shape's neighbor classes."""
    return max(cls.max_pair_distance_coeff for cls in neighbor_classes(shape))


def max_cell_radius(shape: CellShape, r_t: float) -> float:
    """Largest usable circumradius for transmission range ``r_t``.

    Sized so the two farthest points of any two first-tier neighboring
    cells are still within ``r_t`` of each other: r_t/4 for CB and RD,
    r_t/sqrt(14) for HP, r_t*sqrt(5)/(2*sqrt(17)) for TO.
    """
    if not (math.isfinite(r_t) and r_t > 0):
        raise ValueError("transmission range must be positive and finite")
    return r_t / worst_neighbor_coeff(shape)


def cell_volume(shape: CellShape, circumradius: float) -> float:
    """Volume of a cell with the given circumradius."""
    if not (math.isfinite(circumradius) and circumradius > 0):
        raise ValueError("circumradius must be positive and finite")
    R3 = float(circumradius) ** 3
    shape = CellShape(shape)
    if shape is CellShape.CB:
        return 8.0 * R3 / (3.0 * _SQRT3)
    if shape is CellShape.HP:
        return 2.0 * R3
    if shape is CellShape.RD:
        return 2.0 * R3
    return 32.0 * R3 / (5.0 * _SQRT5)


def sample_inside(poly: Polyhedron, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` points uniformly inside a cell by rejection from its bbox."""
    lo = poly.vertices.min(axis=0)
    hi = poly.vertices.max(axis=0)
    out = []
    have = 0
    while have < n:
        cand = rng.uniform(lo, hi, size=(max(2 * (n - have), 64), 3))
        keep = cand[poly.contains(cand)]
        out.append(keep)
        have += len(keep)
    return np.vstack(out)[:n]
