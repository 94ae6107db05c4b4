import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from topocell.geometry import (
    CellShape,
    NEIGHBOR_COUNTS,
    VERTEX_COUNTS,
    build_polyhedron,
    cell_volume,
    max_cell_radius,
    max_vertex_pair_distance,
    neighbor_classes,
    sample_inside,
    worst_neighbor_coeff,
)
from topocell.lattice import LatticeSpec, cell_center

SHAPES = list(CellShape)


def brute_class_coeff(shape, cls):
    """Worst vertex-pair distance over a class, from lattice-placed cells at R=1."""
    spec = LatticeSpec(shape, worst_neighbor_coeff(shape))  # R = 1
    base = build_polyhedron(shape, (0.0, 0.0, 0.0), 1.0)
    worst = 0.0
    for off in cls.offset_generators:
        other = build_polyhedron(shape, cell_center(spec, off), 1.0)
        worst = max(worst, max_vertex_pair_distance(base, other))
    return worst


class TestBuildPolyhedron:
    def test_to_contains_printed_vertex(self):
        R = 1.7
        d = 2.0 * R / math.sqrt(5.0)
        poly = build_polyhedron(CellShape.TO, (0, 0, 0), R)
        target = np.array([d, d / 2.0, 0.0])
        assert np.min(np.linalg.norm(poly.vertices - target, axis=1)) < 1e-12

    def test_rd_contains_apex_vertex(self):
        R = 0.83
        poly = build_polyhedron(CellShape.RD, (0, 0, 0), R)
        target = np.array([0.0, 0.0, R])
        assert np.min(np.linalg.norm(poly.vertices - target, axis=1)) < 1e-12

    def test_cb_unit_cube(self):
        poly = build_polyhedron(CellShape.CB, (0, 0, 0), math.sqrt(3.0) / 2.0)
        got = {tuple(np.round(v, 12)) for v in poly.vertices}
        want = {(sx / 2, sy / 2, sz / 2)
                for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)}
        assert got == want

    @pytest.mark.parametrize("shape", SHAPES)
    @pytest.mark.parametrize("R", [1e-3, 0.37, 1.0, 42.0, 1e3])
    def test_vertex_count_and_radius_invariants(self, shape, R):
        poly = build_polyhedron(shape, (1.0, -2.0, 0.5), R)
        assert len(poly.vertices) == VERTEX_COUNTS[shape]
        dists = np.linalg.norm(poly.vertices - poly.center, axis=1)
        assert np.max(dists) <= R * (1 + 1e-9)
        if shape is CellShape.RD:
            at_R = np.isclose(dists, R, rtol=1e-9)
            near = np.isclose(dists, R * math.sqrt(3.0) / 2.0, rtol=1e-9)
            assert at_R.sum() == 6 and near.sum() == 8
        else:
            assert np.allclose(dists, R, rtol=1e-9)

    def test_rejects_bad_radius(self):
        for bad in (0.0, -1.0, math.nan, math.inf):
            with pytest.raises(ValueError):
                build_polyhedron(CellShape.TO, (0, 0, 0), bad)


class TestMaxVertexPairDistance:
    def test_rd_shared_face_pair(self):
        R = 1.3
        a = build_polyhedron(CellShape.RD, (0, 0, 0), R)
        b = build_polyhedron(CellShape.RD, (R * math.sqrt(2.0), 0, 0), R)
        assert max_vertex_pair_distance(a, b) == pytest.approx(R * math.sqrt(10.0), rel=1e-12)

    def test_to_shared_square_face_pair(self):
        R = 0.9
        d = 2.0 * R / math.sqrt(5.0)
        a = build_polyhedron(CellShape.TO, (0, 0, 0), R)
        b = build_polyhedron(CellShape.TO, (2 * d, 0, 0), R)
        assert max_vertex_pair_distance(a, b) == pytest.approx(d * math.sqrt(17.0), rel=1e-12)
        assert max_vertex_pair_distance(a, b) == pytest.approx(3.6878177829 * R, abs=1e-6)

    @pytest.mark.parametrize("shape", SHAPES)
    def test_self_distance_is_diameter(self, shape):
        poly = build_polyhedron(shape, (2.0, 2.0, 2.0), 1.7)
        assert max_vertex_pair_distance(poly, poly) == pytest.approx(2 * 1.7, rel=1e-12)

    def test_shape_mismatch_rejected(self):
        a = build_polyhedron(CellShape.TO, (0, 0, 0), 1.0)
        b = build_polyhedron(CellShape.RD, (0, 0, 0), 1.0)
        with pytest.raises(ValueError):
            max_vertex_pair_distance(a, b)


class TestNeighborClasses:
    @pytest.mark.parametrize("shape,counts", [
        (CellShape.CB, {6, 12, 8}),
        (CellShape.HP, {6, 2, 12}),
        (CellShape.RD, {12, 6}),
        (CellShape.TO, {6, 8}),
    ])
    def test_class_counts(self, shape, counts):
        classes = neighbor_classes(shape)
        assert {c.count for c in classes} == counts
        assert sum(c.count for c in classes) == NEIGHBOR_COUNTS[shape]
        for c in classes:
            assert len(c.offset_generators) == c.count

    def test_to_coefficients(self):
        by_label = {c.label: c for c in neighbor_classes(CellShape.TO)}
        assert by_label["shared-square-face"].max_pair_distance_coeff == pytest.approx(3.6878177829, abs=1e-6)
        assert by_label["shared-hexagonal-face"].max_pair_distance_coeff == pytest.approx(3.34664, abs=5e-6)

    def test_cb_worst_is_vertex_sharing(self):
        classes = neighbor_classes(CellShape.CB)
        assert max(c.max_pair_distance_coeff for c in classes) == pytest.approx(4.0)

    def test_hp_worst_is_edge_sharing(self):
        assert worst_neighbor_coeff(CellShape.HP) == pytest.approx(math.sqrt(14.0), rel=1e-12)

    @pytest.mark.parametrize("shape", SHAPES)
    def test_coefficients_match_exhaustive_search(self, shape):
        for cls in neighbor_classes(shape):
            brute = brute_class_coeff(shape, cls)
            assert brute == pytest.approx(cls.max_pair_distance_coeff, rel=1e-9)


class TestMaxCellRadius:
    def test_examples(self):
        assert max_cell_radius(CellShape.TO, 1.0) == pytest.approx(0.271163, abs=1e-6)
        assert max_cell_radius(CellShape.CB, 4.0) == pytest.approx(1.0, rel=1e-12)
        assert max_cell_radius(CellShape.HP, 1.0) == pytest.approx(0.26726, abs=5e-6)

    @pytest.mark.parametrize("shape", SHAPES)
    def test_binding_class_meets_transmission_range(self, shape):
        # at the maximum radius the worst neighbor pair sits exactly at r_t
        r_t = 2.31
        R = max_cell_radius(shape, r_t)
        spec = LatticeSpec(shape, r_t)
        base = build_polyhedron(shape, (0.0, 0.0, 0.0), R)
        worst = 0.0
        for cls in neighbor_classes(shape):
            for off in cls.offset_generators:
                other = build_polyhedron(shape, cell_center(spec, off), R)
                worst = max(worst, max_vertex_pair_distance(base, other))
        assert worst == pytest.approx(r_t, rel=1e-9)

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            max_cell_radius(CellShape.TO, 0.0)


class TestCellVolume:
    def test_printed_values(self):
        assert cell_volume(CellShape.TO, 1.0) == pytest.approx(2.862, abs=5e-4)
        assert cell_volume(CellShape.CB, 1.0) == pytest.approx(1.5396, abs=5e-5)

    @pytest.mark.parametrize("shape", SHAPES)
    @pytest.mark.parametrize("R", [0.25, 1.0, 3.7])
    def test_matches_convex_hull_volume(self, shape, R):
        poly = build_polyhedron(shape, (0.5, -1.0, 2.0), R)
        hull = ConvexHull(poly.vertices)
        assert cell_volume(shape, R) == pytest.approx(hull.volume, rel=1e-9)

    def test_rejects_bad_radius(self):
        with pytest.raises(ValueError):
            cell_volume(CellShape.RD, -2.0)


class TestConvexityWitness:
    @pytest.mark.parametrize("shape", SHAPES)
    def test_sampled_pairs_within_vertex_bound(self, shape):
        # random interior point pairs can never exceed the vertex-pair maximum
        rng = np.random.default_rng(7)
        spec = LatticeSpec(shape, worst_neighbor_coeff(shape))  # R = 1
        a = build_polyhedron(shape, (0.0, 0.0, 0.0), 1.0)
        cls = neighbor_classes(shape)[0]
        b = build_polyhedron(shape, cell_center(spec, cls.offset_generators[0]), 1.0)
        bound = max_vertex_pair_distance(a, b)
        pa = sample_inside(a, 1000, rng)
        pb = sample_inside(b, 1000, rng)
        dists = np.linalg.norm(pa - pb, axis=1)
        assert dists.max() <= bound * (1 + 1e-12)

    def test_contains_rejects_outside_points(self):
        poly = build_polyhedron(CellShape.TO, (0, 0, 0), 1.0)
        assert poly.contains((0.0, 0.0, 0.0))
        assert not poly.contains((0.0, 0.0, 1.001))
        flags = poly.contains(np.array([[0, 0, 0], [2, 2, 2]], dtype=float))
        assert list(flags) == [True, False]
