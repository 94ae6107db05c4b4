"""Integer cell addressing for the four space-filling tessellations.

Every cell is named by an integer triple (u, v, w). Cell centers are
anchored at the information sink and spaced by constants derived from the
transmission range r_t, with R = max_cell_radius(shape, r_t):

* CB: center = sink + (u*s, v*s, w*s), cube side s = 2R/sqrt(3).
* RD: center = sink + ((2u+w)*R/sqrt2, (2v+w)*R/sqrt2, w*R).
* TO: center = sink + ((2u+w)*d, (2v+w)*d, w*d), d = 2R/sqrt(5) = r_t/sqrt(17).
* HP: layers at z = w*h; within a layer, rows at y = 1.5*a*v with centers at
  x = sqrt(3)*a*(u + (v mod 2)/2), i.e. odd rows shifted half a step along x.

A sensor at point p finds its cell without search: solve the center
equations for real-valued (u, v, w), take floor and ceiling of each
coordinate (eight integer candidates), and keep the candidate whose center
is nearest to p. The real solutions put the true cell within one unit of
each rounded coordinate for every interior point, so the eight candidates
always contain the answer; ``assign_cell_oracle`` provides the brute-force
cross-check. The cheaper nearest-integer shortcut rounds each coordinate
independently; it is wrong for 3/8 of random points (the rounding box and
the cell disagree on that much volume) and is kept only to quantify that
failure rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import CellShape, as_point, max_cell_radius, neighbor_classes

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT5 = math.sqrt(5.0)


class CellId(NamedTuple):
    """Integer lattice coordinates naming one cell."""

    u: int
    v: int
    w: int


@dataclass(frozen=True, eq=False)
class LatticeSpec:
    """Complete tessellation description: shape, transmission range, sink."""

    shape: CellShape
    r_t: float
    sink: np.ndarray = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "shape", CellShape(self.shape))
        if not (math.isfinite(self.r_t) and self.r_t > 0):
            raise ValueError("transmission range must be positive and finite")
        object.__setattr__(self, "r_t", float(self.r_t))
        object.__setattr__(self, "sink", as_point(self.sink))

    @property
    def circumradius(self) -> float:
        """Cell circumradius R at the maximum usable size for r_t."""
        return max_cell_radius(self.shape, self.r_t)


def _steps(spec: LatticeSpec) -> tuple[float, ...]:
    """Per-shape center-spacing constants."""
    R = spec.circumradius
    if spec.shape is CellShape.CB:
        return (2.0 * R / _SQRT3,)
    if spec.shape is CellShape.RD:
        return (R / _SQRT2, R)
    if spec.shape is CellShape.TO:
        return (2.0 * R / _SQRT5,)
    a = R * math.sqrt(2.0 / 3.0)
    return (a, a * _SQRT2)  # hexagon side, prism height


def cell_centers(spec: LatticeSpec, ids) -> np.ndarray:
    """Centers for an array of ids of shape (..., 3)."""
    ids = np.asarray(ids, dtype=np.int64)
    u = ids[..., 0].astype(float)
    v = ids[..., 1].astype(float)
    w = ids[..., 2].astype(float)
    if spec.shape is CellShape.CB:
        (s,) = _steps(spec)
        local = np.stack([u * s, v * s, w * s], axis=-1)
    elif spec.shape is CellShape.RD:
        q, R = _steps(spec)
        local = np.stack([(2 * u + w) * q, (2 * v + w) * q, w * R], axis=-1)
    elif spec.shape is CellShape.TO:
        (d,) = _steps(spec)
        local = np.stack([(2 * u + w) * d, (2 * v + w) * d, w * d], axis=-1)
    else:
        a, h = _steps(spec)
        parity = np.mod(ids[..., 1], 2).astype(float)
        local = np.stack([
            _SQRT3 * a * (u + parity / 2.0),
            1.5 * a * v,
            h * w,
        ], axis=-1)
    return spec.sink + local


def cell_center(spec: LatticeSpec, cid) -> np.ndarray:
    """Center of a single cell."""
    return cell_centers(spec, np.asarray(tuple(cid), dtype=np.int64))


def _fractional_ids(spec: LatticeSpec, rel: np.ndarray) -> np.ndarray:
    """Real-valued (u, v, w) solving the center equations, for CB/RD/TO."""
    if spec.shape is CellShape.CB:
        (s,) = _steps(spec)
        return rel / s
    if spec.shape is CellShape.RD:
        q, R = _steps(spec)
        w = rel[:, 2] / R
        u = (rel[:, 0] / q - w) / 2.0
        v = (rel[:, 1] / q - w) / 2.0
        return np.stack([u, v, w], axis=-1)
    if spec.shape is CellShape.TO:
        (d,) = _steps(spec)
        w = rel[:, 2] / d
        u = (rel[:, 0] / d - w) / 2.0
        v = (rel[:, 1] / d - w) / 2.0
        return np.stack([u, v, w], axis=-1)
    raise ValueError("HP has row-dependent fractional coordinates")


def _candidate_ids(spec: LatticeSpec, pts: np.ndarray) -> np.ndarray:
    """The eight floor/ceil integer candidates per point, shape (n, 8, 3)."""
    rel = pts - spec.sink
    n = len(pts)
    cands = np.empty((n, 8, 3), dtype=np.int64)
    if spec.shape is CellShape.HP:
        a, h = _steps(spec)
        w_r = rel[:, 2] / h
        v_r = rel[:, 1] / (1.5 * a)
        w_lo, w_hi = np.floor(w_r), np.ceil(w_r)
        i = 0
        for v in (np.floor(v_r), np.ceil(v_r)):
            # x-index of this row depends on the row's parity
            u_r = rel[:, 0] / (_SQRT3 * a) - np.mod(v, 2.0) / 2.0
            for u in (np.floor(u_r), np.ceil(u_r)):
                for w in (w_lo, w_hi):
                    cands[:, i, 0] = u
                    cands[:, i, 1] = v
                    cands[:, i, 2] = w
                    i += 1
        return cands
    fr = _fractional_ids(spec, rel)
    lo = np.floor(fr)
    hi = np.ceil(fr)
    i = 0
    for bu in (0, 1):
        for bv in (0, 1):
            for bw in (0, 1):
                cands[:, i, 0] = hi[:, 0] if bu else lo[:, 0]
                cands[:, i, 1] = hi[:, 1] if bv else lo[:, 1]
                cands[:, i, 2] = hi[:, 2] if bw else lo[:, 2]
                i += 1
    return cands


def _argmin_lex(ids: np.ndarray, d2: np.ndarray) -> np.ndarray:
    """Row-wise argmin of d2, breaking exact ties by smallest (u, v, w)."""
    tie = d2 <= d2.min(axis=1, keepdims=True)
    big = np.iinfo(np.int64).max
    for axis in range(3):
        comp = np.where(tie, ids[:, :, axis], big)
        tie &= comp == comp.min(axis=1, keepdims=True)
    pick = tie.argmax(axis=1)
    return ids[np.arange(len(ids)), pick]


def _nearest_of(spec: LatticeSpec, pts: np.ndarray, cands: np.ndarray) -> np.ndarray:
    centers = cell_centers(spec, cands)
    d2 = ((pts[:, None, :] - centers) ** 2).sum(axis=-1)
    return _argmin_lex(cands, d2)


def _check_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    pts = np.atleast_2d(pts)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError(f"expected points of shape (n, 3), got {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("point coordinates must be finite")
    return pts


def assign_cells(spec: LatticeSpec, points) -> np.ndarray:
    """Cell ids for an (n, 3) array of points, as an (n, 3) integer array.

    Constant work per point: eight candidate cells from the floor/ceil
    brackets of the real-valued lattice solution, then the nearest center
    wins. Points equidistant from several centers go to the candidate with
    the smallest (u, v, w).
    """
    pts = _check_points(points)
    return _nearest_of(spec, pts, _candidate_ids(spec, pts))


def assign_cell(spec: LatticeSpec, p) -> CellId:
    """Cell id of a single point."""
    row = assign_cells(spec, as_point(p)[None, :])[0]
    return CellId(int(row[0]), int(row[1]), int(row[2]))


def _round_half_away(x: np.ndarray) -> np.ndarray:
    return np.trunc(x + np.copysign(0.5, x))


def assign_cells_nearest_int(spec: LatticeSpec, points) -> np.ndarray:
    """Nearest-integer shortcut (TO only): round u, v, w independently.

    Halves round away from zero. Kept as the documented approximation; it
    misassigns 3/8 of uniformly random points, so callers wanting the true
    cell should use ``assign_cells``.
    """
    if spec.shape is not CellShape.TO:
        raise ValueError("nearest-integer assignment is only defined for the TO lattice")
    pts = _check_points(points)
    fr = _fractional_ids(spec, pts - spec.sink)
    return _round_half_away(fr).astype(np.int64)


def assign_cell_nearest_int(spec: LatticeSpec, p) -> CellId:
    row = assign_cells_nearest_int(spec, as_point(p)[None, :])[0]
    return CellId(int(row[0]), int(row[1]), int(row[2]))


def _rounded_base(spec: LatticeSpec, pts: np.ndarray) -> np.ndarray:
    rel = pts - spec.sink
    if spec.shape is CellShape.HP:
        a, h = _steps(spec)
        w = _round_half_away(rel[:, 2] / h)
        v = _round_half_away(rel[:, 1] / (1.5 * a))
        u = _round_half_away(rel[:, 0] / (_SQRT3 * a) - np.mod(v, 2.0) / 2.0)
        return np.stack([u, v, w], axis=-1).astype(np.int64)
    return _round_half_away(_fractional_ids(spec, rel)).astype(np.int64)


def _center_offset_for(spec: LatticeSpec, offs: np.ndarray, v_parity: int) -> np.ndarray:
    """Center displacement produced by adding id offsets, per base-row parity."""
    if spec.shape is not CellShape.HP:
        return cell_centers(spec, offs) - spec.sink
    a, h = _steps(spec)
    parity_after = np.mod(v_parity + offs[:, 1], 2)
    dx = _SQRT3 * a * (offs[:, 0] + (parity_after - v_parity) / 2.0)
    return np.stack([dx, 1.5 * a * offs[:, 1], h * offs[:, 2]], axis=-1)


def assign_cells_oracle(spec: LatticeSpec, points, window: int = 3) -> np.ndarray:
    """Exhaustive-search assignment over a (2*window+1)^3 id neighborhood.

    Ground truth for the constant-time method: enumerates every id within
    ``window`` of the rounded real solution and returns the nearest center,
    with the same smallest-(u, v, w) tie rule. Centers further than the
    window are farther away than any candidate inside it, so window >= 2 is
    already exhaustive in effect; the default of 3 leaves margin.
    """
    if window < 2:
        raise ValueError("oracle window must be at least 2")
    pts = _check_points(points)
    base = _rounded_base(spec, pts)
    rng = np.arange(-window, window + 1, dtype=np.int64)
    offs = np.stack(np.meshgrid(rng, rng, rng, indexing="ij"), axis=-1).reshape(-1, 3)
    # lexicographic candidate order makes the first tie the smallest id
    order = np.lexsort((offs[:, 2], offs[:, 1], offs[:, 0]))
    offs = offs[order]

    out = np.empty((len(pts), 3), dtype=np.int64)
    chunk = max(1, int(2_000_000 // len(offs)))
    for start in range(0, len(pts), chunk):
        sl = slice(start, min(start + chunk, len(pts)))
        out[sl] = _oracle_chunk(spec, pts[sl], base[sl], offs)
    return out


def _oracle_chunk(spec, pts, base, offs):
    if spec.shape is CellShape.HP:
        result = np.empty((len(pts), 3), dtype=np.int64)
        for parity in (0, 1):
            mask = (base[:, 1] & 1) == parity
            if not mask.any():
                continue
            doff = _center_offset_for(spec, offs, parity)
            result[mask] = _oracle_gemm(spec, pts[mask], base[mask], offs, doff)
        return result
    doff = _center_offset_for(spec, offs, 0)
    return _oracle_gemm(spec, pts, base, offs, doff)


def _oracle_gemm(spec, pts, base, offs, doff):
    # candidate center = center(base) + doff[k]; distances via the expansion
    # |q - doff|^2 = |q|^2 - 2 q.doff + |doff|^2 with q = p - center(base)
    q = pts - cell_centers(spec, base)
    d2 = (q ** 2).sum(axis=1, keepdims=True) - 2.0 * (q @ doff.T) + (doff ** 2).sum(axis=1)
    tie = d2 <= d2.min(axis=1, keepdims=True)
    pick = tie.argmax(axis=1)
    return base + offs[pick]


def assign_cell_oracle(spec: LatticeSpec, p, window: int = 3) -> CellId:
    row = assign_cells_oracle(spec, as_point(p)[None, :], window=window)[0]
    return CellId(int(row[0]), int(row[1]), int(row[2]))


def neighbors(spec: LatticeSpec, cid) -> list[CellId]:
    """All first-tier neighbor ids of a cell (14 TO, 18 RD, 20 HP, 26 CB)."""
    cid = CellId(*map(int, tuple(cid)))
    odd_row = spec.shape is CellShape.HP and (cid.v & 1) == 1
    out = []
    for cls in neighbor_classes(spec.shape):
        for du, dv, dw in cls.offset_generators:
            if odd_row and dv % 2 != 0:
                du += 1  # odd rows sit half a step further along x
            out.append(CellId(cid.u + du, cid.v + dv, cid.w + dw))
    return out
