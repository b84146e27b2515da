"""Tests for polygon primitives, clipping, and proportional splitting."""

from __future__ import annotations

import math
import random

import pytest

from hidmap.geometry import (
    BadFractionsError,
    ConvexPolygon,
    CutDirection,
    GeometryConfig,
    GeometryError,
    Point,
    TooFewSidesError,
    area,
    clip_half_plane,
    contains_point,
    cut_segment,
    erode,
    longest_edge,
    nearest_edge_distance,
    offset_for_area_fraction,
    regular_polygon,
    side_cut,
    split_proportional,
)

SQUARE = ConvexPolygon((Point(0, 1), Point(1, 0), Point(0, -1), Point(-1, 0)))


def random_convex(rng: random.Random, max_sides: int = 9) -> ConvexPolygon:
    """Random convex polygon: circle points at sorted angles, then an
    orientation-preserving affine map."""
    k = rng.randint(3, max_sides)
    while True:
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(k))
        if all(angles[i + 1] - angles[i] > 0.15 for i in range(k - 1)):
            if 2 * math.pi - (angles[-1] - angles[0]) > 0.15:
                break
    a = rng.uniform(0.5, 2.0)
    b = rng.uniform(-0.8, 0.8)
    c = rng.uniform(0.5, 2.0)
    tx, ty = rng.uniform(-1, 1), rng.uniform(-1, 1)
    pts = []
    for t in reversed(angles):  # descending angle = clockwise
        x, y = math.cos(t), math.sin(t)
        pts.append(Point(a * x + b * y + tx, c * y + ty))
    return ConvexPolygon(tuple(pts))


def random_cut(rng: random.Random) -> CutDirection:
    t = rng.uniform(0, 2 * math.pi)
    d = Point(math.cos(t), math.sin(t))
    return CutDirection(
        direction=d,
        inward_normal=Point(d.y, -d.x),
        anchor=Point(rng.uniform(-2, 2), rng.uniform(-2, 2)),
    )


def random_fractions(rng: random.Random) -> list[float]:
    k = rng.randint(1, 6)
    weights = [rng.choice([0.0, rng.uniform(0.05, 1.0)]) for _ in range(k)]
    if sum(weights) == 0:
        weights[rng.randrange(k)] = 1.0
    total = sum(weights)
    return [w / total for w in weights]


class TestRegularPolygon:
    def test_vertex_zero_at_top(self):
        for k in (3, 5, 7):
            p = regular_polygon(k)
            assert p.vertices[0].x == pytest.approx(0.0, abs=1e-12)
            assert p.vertices[0].y == pytest.approx(1.0)

    def test_clockwise_from_top(self):
        p = regular_polygon(5)
        # First step goes right and down.
        assert p.vertices[1].x > 0
        assert p.vertices[1].y < p.vertices[0].y

    def test_area_formula(self):
        for k in (3, 4, 5, 6, 9):
            expected = 0.5 * k * math.sin(2 * math.pi / k)
            assert area(regular_polygon(k)) == pytest.approx(expected, rel=1e-12)
        assert area(regular_polygon(4, 2.0)) == pytest.approx(8.0)

    def test_too_few_sides(self):
        with pytest.raises(TooFewSidesError):
            regular_polygon(2)

    def test_vertices_on_circle(self):
        p = regular_polygon(7, 1.5)
        for v in p:
            assert math.hypot(v.x, v.y) == pytest.approx(1.5)


class TestPolygonValidation:
    def test_rejects_counterclockwise(self):
        with pytest.raises(GeometryError):
            ConvexPolygon((Point(0, 0), Point(1, 0), Point(0, 1)))

    def test_rejects_nonconvex(self):
        with pytest.raises(GeometryError):
            ConvexPolygon((
                Point(0, 1), Point(1, 0), Point(0.05, 0.05), Point(-1, 0),
            ))

    def test_rejects_duplicate_vertex(self):
        with pytest.raises(GeometryError):
            ConvexPolygon((Point(0, 1), Point(0, 1), Point(1, 0), Point(0, -1)))

    def test_config_validation(self):
        with pytest.raises(GeometryError):
            GeometryConfig(area_tolerance=0.0)
        with pytest.raises(GeometryError):
            GeometryConfig(max_bisection_iters=4)


class TestQueries:
    def test_contains_center_and_boundary(self):
        p = regular_polygon(5)
        assert contains_point(p, Point(0, 0))
        assert contains_point(p, p.vertices[2])
        assert not contains_point(p, Point(0, 1.001))
        # Slightly outside but within a fat tolerance.
        assert contains_point(p, Point(0, 1.0005), eps=1e-3)

    def test_nearest_edge_distance_is_apothem_at_center(self):
        for k in (3, 4, 6, 9):
            p = regular_polygon(k)
            assert nearest_edge_distance(p, Point(0, 0)) == pytest.approx(
                math.cos(math.pi / k)
            )

    def test_longest_edge(self):
        assert longest_edge(SQUARE) == pytest.approx(math.sqrt(2))
        p = regular_polygon(6, 2.0)
        assert longest_edge(p) == pytest.approx(2.0)

    def test_side_cut_square(self):
        cut = side_cut(SQUARE, 0)
        s = math.sqrt(0.5)
        assert cut.direction.x == pytest.approx(s)
        assert cut.direction.y == pytest.approx(-s)
        assert cut.inward_normal.x == pytest.approx(-s)
        assert cut.inward_normal.y == pytest.approx(-s)
        # Center depth equals the apothem.
        assert cut.depth(Point(0, 0)) == pytest.approx(s)

    def test_side_cut_normals_point_inward(self):
        rng = random.Random(1)
        for _ in range(20):
            p = random_convex(rng)
            cx = sum(v.x for v in p) / len(p)
            cy = sum(v.y for v in p) / len(p)
            for i in range(len(p)):
                cut = side_cut(p, i)
                assert cut.depth(Point(cx, cy)) > 0


class TestClip:
    def test_half_square(self):
        cut = side_cut(SQUARE, 0)
        apothem = math.sqrt(0.5)
        half = clip_half_plane(SQUARE, cut, apothem / 2)
        assert half is not None
        # Clipping a triangle corner of the square at half depth keeps 3/4
        # of the corner triangle's area: the near region is a trapezoid.
        assert area(half) + area(
            clip_half_plane(
                SQUARE,
                CutDirection(cut.direction,
                             Point(-cut.inward_normal.x, -cut.inward_normal.y),
                             cut.anchor),
                -apothem / 2,
            )
        ) == pytest.approx(area(SQUARE), abs=1e-12)

    def test_clip_outside_returns_none(self):
        cut = side_cut(SQUARE, 0)
        assert clip_half_plane(SQUARE, cut, -0.5) is None

    def test_clip_beyond_far_side_returns_whole(self):
        cut = side_cut(SQUARE, 0)
        whole = clip_half_plane(SQUARE, cut, 10.0)
        assert whole is not None
        assert area(whole) == pytest.approx(area(SQUARE))

    def test_complement_areas_sum(self):
        rng = random.Random(5)
        for _ in range(50):
            p = random_convex(rng)
            cut = random_cut(rng)
            depths = [cut.depth(v) for v in p]
            o = rng.uniform(min(depths), max(depths))
            near = clip_half_plane(p, cut, o)
            flipped = CutDirection(
                cut.direction,
                Point(-cut.inward_normal.x, -cut.inward_normal.y),
                cut.anchor,
            )
            far = clip_half_plane(p, flipped, -o)
            total = (area(near) if near else 0.0) + (area(far) if far else 0.0)
            assert total == pytest.approx(area(p), rel=1e-9)

    def test_monte_carlo_area(self):
        rng = random.Random(11)
        p = random_convex(rng)
        cut = random_cut(rng)
        depths = [cut.depth(v) for v in p]
        o = 0.5 * (min(depths) + max(depths))
        clipped = clip_half_plane(p, cut, o)
        assert clipped is not None

        xs = [v.x for v in p]
        ys = [v.y for v in p]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        box = (x1 - x0) * (y1 - y0)
        n = 20000
        hits = 0
        for _ in range(n):
            q = Point(rng.uniform(x0, x1), rng.uniform(y0, y1))
            if contains_point(p, q) and cut.depth(q) <= o:
                hits += 1
        estimate = box * hits / n
        sigma = box * math.sqrt(0.25 / n)
        assert abs(estimate - area(clipped)) < 4 * sigma


class TestSplit:
    def test_single_fraction_returns_original(self):
        [only] = split_proportional(SQUARE, side_cut(SQUARE, 0), [1.0])
        assert only is not None
        assert only.vertices == SQUARE.vertices

    def test_bad_fractions(self):
        cut = side_cut(SQUARE, 0)
        with pytest.raises(BadFractionsError):
            split_proportional(SQUARE, cut, [0.5, 0.6])
        with pytest.raises(BadFractionsError):
            split_proportional(SQUARE, cut, [1.5, -0.5])
        with pytest.raises(BadFractionsError):
            split_proportional(SQUARE, cut, [])

    def test_zero_fraction_yields_none_slab(self):
        cut = side_cut(SQUARE, 0)
        slabs = split_proportional(SQUARE, cut, [0.25, 0.0, 0.75])
        assert slabs[1] is None
        assert area(slabs[0]) == pytest.approx(0.25 * area(SQUARE), rel=1e-8)
        assert area(slabs[2]) == pytest.approx(0.75 * area(SQUARE), rel=1e-8)

    def test_slab_areas_match_fractions(self):
        rng = random.Random(23)
        for _ in range(100):
            p = random_convex(rng)
            cut = random_cut(rng)
            fr = random_fractions(rng)
            slabs = split_proportional(p, cut, fr)
            total = area(p)
            got = [(area(s) if s else 0.0) / total for s in slabs]
            for want, have in zip(fr, got):
                assert abs(want - have) <= 2e-9

    def test_slabs_tile_and_order_by_depth(self):
        rng = random.Random(31)
        for _ in range(40):
            p = random_convex(rng)
            cut = random_cut(rng)
            fr = random_fractions(rng)
            slabs = split_proportional(p, cut, fr)
            assert sum(area(s) for s in slabs if s) == pytest.approx(
                area(p), rel=1e-9
            )
            prev_max = -math.inf
            for s in slabs:
                if s is None:
                    continue
                ds = [cut.depth(v) for v in s]
                assert min(ds) >= prev_max - 1e-9
                prev_max = max(ds)

    def test_offset_matches_independent_reclip(self):
        rng = random.Random(77)
        for _ in range(200):
            p = random_convex(rng)
            cut = random_cut(rng)
            f = rng.uniform(0.01, 0.99)
            offset, iters = offset_for_area_fraction(p, cut, f)
            assert iters <= 64
            clipped = clip_half_plane(p, cut, offset)
            assert clipped is not None
            assert area(clipped) / area(p) == pytest.approx(f, abs=1e-9)

    def test_split_along_every_side_of_regular_polygons(self):
        rng = random.Random(13)
        for k in (3, 5, 7, 9):
            p = regular_polygon(k)
            for side in range(k):
                fr = random_fractions(rng)
                slabs = split_proportional(p, side_cut(p, side), fr)
                total = area(p)
                for want, s in zip(fr, slabs):
                    have = (area(s) if s else 0.0) / total
                    assert abs(want - have) <= 2e-9

    def test_resplit_slab_same_family(self):
        # A slab re-split along the same cut family has two edges exactly on
        # cut lines; the profile must stay accurate for those.
        p = regular_polygon(5)
        cut = side_cut(p, 2)
        [_, mid, _] = split_proportional(p, cut, [0.3, 0.4, 0.3])
        sub = split_proportional(mid, cut, [0.5, 0.5])
        for s in sub:
            assert area(s) == pytest.approx(0.5 * area(mid), rel=1e-8)


class TestCutSegment:
    def test_square_mid_chord(self):
        cut = side_cut(SQUARE, 0)
        apothem = math.sqrt(0.5)
        seg = cut_segment(SQUARE, cut, apothem)
        assert seg is not None
        a, b = seg
        # The chord through the center is the other diagonal's length.
        assert math.hypot(b.x - a.x, b.y - a.y) == pytest.approx(math.sqrt(2))

    def test_no_chord_outside(self):
        cut = side_cut(SQUARE, 0)
        assert cut_segment(SQUARE, cut, -1.0) is None


class TestErode:
    def test_regular_polygon_shrinks_to_scaled_copy(self):
        for k in (3, 5, 8):
            p = regular_polygon(k)
            apothem = math.cos(math.pi / k)
            margin = 0.2 * apothem
            inner = erode(p, margin)
            assert inner is not None
            scale = (apothem - margin) / apothem
            expected = 0.5 * k * math.sin(2 * math.pi / k) * scale**2
            assert area(inner) == pytest.approx(expected, rel=1e-9)
            for v in inner:
                assert nearest_edge_distance(p, v) >= margin - 1e-9

    def test_erode_to_nothing(self):
        assert erode(regular_polygon(4), 5.0) is None

    def test_eroded_region_feasible_for_disc(self):
        rng = random.Random(41)
        for _ in range(20):
            p = random_convex(rng)
            margin = 0.05
            inner = erode(p, margin)
            if inner is None:
                continue
            for v in inner:
                assert nearest_edge_distance(p, v) >= margin - 1e-9
                assert contains_point(p, v, eps=1e-9)
