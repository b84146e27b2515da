"""Tests for the partition tree, side assignment, and hit testing."""

from __future__ import annotations

import math
import random
from collections import Counter

import pytest

from helpers import leaf_count_oracle, random_dataset

from hidmap.dataset import CategoryPath, parse_csv
from hidmap.geometry import Point, area, contains_point, segment_distance
from hidmap.layout import (
    EdgeHit,
    EmptySelectionError,
    LayoutConfig,
    LayoutError,
    LeafHit,
    Miss,
    NoVisibleDimensionsError,
    assign_sides,
    build_tree,
    hit_test,
    node_summary,
    sides_for,
)

SMALL = "g,a\nF,teen\nM,teen\nM,adult\n"


def path(*entries):
    return CategoryPath(entries=tuple(entries))


class TestSidesFor:
    def test_examples(self):
        assert sides_for(5) == 5
        assert sides_for(4) == 5
        assert sides_for(1) == 3
        assert sides_for(2) == 3

    def test_always_odd_and_sufficient(self):
        for n in range(1, 20):
            k = sides_for(n)
            assert k % 2 == 1
            assert k >= max(3, n)
            assert k - n <= 2

    def test_zero_dimensions(self):
        with pytest.raises(NoVisibleDimensionsError):
            sides_for(0)


class TestAssignSides:
    def test_consecutive_from_side_zero(self):
        sa = assign_sides([3, 1, 0])
        assert sa.sides == 3
        assert [s.dimension for s in sa.slots] == [3, 1, 0]
        assert [s.side for s in sa.slots] == [0, 1, 2]

    def test_even_count_leaves_unmapped_side(self):
        sa = assign_sides([0, 1, 2, 3])
        assert sa.sides == 5
        assert len(sa.slots) == 4

    def test_pinned_side_count(self):
        sa = assign_sides([0, 1], sides=7)
        assert sa.sides == 7
        assert len(sa.polygon) == 7

    def test_rejects_bad_side_count(self):
        with pytest.raises(LayoutError):
            assign_sides([0, 1], sides=4)
        with pytest.raises(LayoutError):
            assign_sides([0, 1, 2, 3], sides=3)

    def test_cuts_parallel_to_their_sides(self):
        sa = assign_sides([0, 1, 2])
        for slot in sa.slots:
            a = sa.polygon.vertices[slot.side]
            b = sa.polygon.vertices[(slot.side + 1) % sa.sides]
            ex, ey = b.x - a.x, b.y - a.y
            cross = ex * slot.cut.direction.y - ey * slot.cut.direction.x
            assert abs(cross) < 1e-12


class TestBuildTree:
    def test_single_dimension_equal_split(self):
        ds = parse_csv("g\nx\ny\n")
        root = build_tree(ds, [0])
        assert len(root.children) == 2
        triangle = area(root.polygon)
        for child in root.children:
            assert area(child.polygon) == pytest.approx(triangle / 2, rel=1e-8)
            assert child.is_leaf

    def test_small_table_structure(self):
        ds = parse_csv(SMALL)
        root = build_tree(ds, [0, 1])
        assert root.dim_order_pos == -1
        assert root.count == 3
        assert root.fraction == 1.0
        assert [c.value_index for c in root.children] == [0, 1]
        assert [c.count for c in root.children] == [1, 2]
        # F has no adult rows: one grandchild; M has both.
        assert [len(c.children) for c in root.children] == [1, 2]
        for node in root.iter_nodes():
            if node.children:
                assert sum(c.count for c in node.children) == node.count
                assert sum(area(c.polygon) for c in node.children) == (
                    pytest.approx(area(node.polygon), rel=1e-8)
                )

    def test_leaf_counts_match_row_scan(self):
        rng = random.Random(10)
        ds, rows = random_dataset(rng, 5, 3, 400)
        order = [2, 0, 4, 1, 3]
        root = build_tree(ds, order)
        want = leaf_count_oracle(rows, order)
        got = Counter()
        for leaf in root.leaves():
            by_dim = dict(leaf.path)
            names = tuple(
                ds.dimensions[d].values[by_dim[d]] for d in order
            )
            got[names] = leaf.count
        assert got == want
        total = sum(want.values())
        for leaf in root.leaves():
            assert leaf.fraction == pytest.approx(leaf.count / total, abs=1e-12)

    def test_area_proportionality_random(self):
        rng = random.Random(21)
        for _ in range(8):
            n = rng.randint(1, 4)
            ds, _ = random_dataset(rng, n, 4, rng.randint(10, 500))
            order = list(range(n))
            rng.shuffle(order)
            root = build_tree(ds, order)
            root_area = area(root.polygon)
            for node in root.iter_nodes():
                assert abs(
                    area(node.polygon) / root_area - node.count / root.count
                ) <= 1e-6

    def test_order_invariance_multiset(self):
        rng = random.Random(33)
        ds, _ = random_dataset(rng, 4, 3, 300)
        base = None
        for _ in range(4):
            order = list(range(4))
            rng.shuffle(order)
            root = build_tree(ds, order)
            sizes = sorted(
                (leaf.count, round(area(leaf.polygon), 8))
                for leaf in root.leaves()
            )
            if base is None:
                base = sizes
            else:
                assert sizes == base

    def test_drill_filters_and_rescales(self):
        ds = parse_csv(SMALL)
        root = build_tree(ds, [1], drill=path((0, 1)))  # g = M
        assert root.count == 2
        leaves = list(root.leaves())
        assert [leaf.count for leaf in leaves] == [1, 1]
        for leaf in leaves:
            assert leaf.fraction == pytest.approx(0.5)

    def test_drill_empty_selection(self):
        ds = parse_csv("g,a,z\nF,teen,p\nM,teen,p\nM,adult,q\n")
        # No F adult rows.
        with pytest.raises(EmptySelectionError):
            build_tree(ds, [2], drill=path((0, 0), (1, 0)))
        # Even valid drills fail once nothing is left after a zero match.
        with pytest.raises(EmptySelectionError):
            build_tree(ds.__class__(dimensions=ds.dimensions, row_count=0,
                                    counts={}), [0, 1])

    def test_rejects_bad_order(self):
        ds = parse_csv(SMALL)
        with pytest.raises(NoVisibleDimensionsError):
            build_tree(ds, [])
        with pytest.raises(LayoutError):
            build_tree(ds, [0, 0])
        with pytest.raises(LayoutError):
            build_tree(ds, [0, 5])
        with pytest.raises(LayoutError):
            build_tree(ds, [0, 1], drill=path((0, 1)))

    def test_node_ids_stable_and_unique(self):
        ds = parse_csv(SMALL)
        a = build_tree(ds, [0, 1], seed=1)
        b = build_tree(ds, [0, 1], seed=9)
        ids_a = [n.id for n in a.iter_nodes()]
        ids_b = [n.id for n in b.iter_nodes()]
        assert ids_a == ids_b  # ids do not depend on the seed
        assert len(set(ids_a)) == len(ids_a)
        c = build_tree(ds, [1, 0], seed=1)
        assert [n.id for n in c.iter_nodes()] != ids_a

    def test_marbles_on_leaves_only_and_counted(self):
        rng = random.Random(3)
        ds, _ = random_dataset(rng, 2, 3, 200)
        root = build_tree(ds, [0, 1], seed=4)
        total = root.count
        for node in root.iter_nodes():
            if not node.is_leaf:
                assert node.marbles == ()
        for leaf in root.leaves():
            want = math.floor(100 * leaf.count / total + 0.5)
            assert len(leaf.marbles) == want
            for m in leaf.marbles:
                assert contains_point(leaf.polygon, m.position, eps=1e-9)

    def test_marble_ids_globally_unique(self):
        rng = random.Random(14)
        ds, _ = random_dataset(rng, 3, 3, 500)
        root = build_tree(ds, [0, 1, 2])
        ids = [m.id for leaf in root.leaves() for m in leaf.marbles]
        assert len(set(ids)) == len(ids)
        assert ids == sorted(ids)

    def test_saturation_endpoints_across_leaves(self):
        rng = random.Random(17)
        ds, _ = random_dataset(rng, 3, 3, 300)
        root = build_tree(ds, [0, 1, 2])
        sats = [leaf.style.saturation for leaf in root.leaves()]
        counts = [leaf.count for leaf in root.leaves()]
        assert min(sats) == 0.25
        assert max(sats) == 1.0
        # Saturation non-decreasing in leaf count.
        order = sorted(zip(counts, sats))
        for (c1, s1), (c2, s2) in zip(order, order[1:]):
            assert s2 >= s1 - 1e-12

    def test_leaf_hue_is_last_dimension(self):
        rng = random.Random(19)
        ds, _ = random_dataset(rng, 3, 3, 100)
        root = build_tree(ds, [0, 1, 2])
        for leaf in root.leaves():
            assert leaf.style.hue == pytest.approx(0.9)

    def test_pinned_sides_keep_outer_polygon(self):
        ds = parse_csv(SMALL)
        narrow = build_tree(ds, [0], sides=None)
        pinned = build_tree(ds, [0], sides=5)
        assert len(narrow.polygon) == 3
        assert len(pinned.polygon) == 5

    def test_disjoint_leaf_coverage(self):
        rng = random.Random(51)
        ds, _ = random_dataset(rng, 3, 3, 200)
        root = build_tree(ds, [0, 1, 2])
        leaves = list(root.leaves())
        tol = 0.01
        inside = 0
        for _ in range(2000):
            p = Point(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if not contains_point(root.polygon, p):
                continue
            near_edge = any(
                segment_distance(a, b, p) <= tol
                for node in root.iter_nodes()
                for a, b in node.own_edges
            )
            if near_edge:
                continue
            inside += 1
            holders = [
                leaf for leaf in leaves
                if contains_point(leaf.polygon, p, eps=1e-12)
            ]
            assert len(holders) == 1
        assert inside > 200


class TestHitTest:
    @pytest.fixture()
    def tree(self):
        return build_tree(parse_csv(SMALL), [0, 1])

    def test_leaf_centroid(self, tree):
        for leaf in tree.leaves():
            v = leaf.polygon.vertices
            c = Point(sum(q.x for q in v) / len(v), sum(q.y for q in v) / len(v))
            edge_near = any(
                segment_distance(a, b, c) <= 0.02
                for node in tree.iter_nodes()
                for a, b in node.own_edges
            )
            if edge_near:
                continue
            hit = hit_test(tree, c)
            assert isinstance(hit, LeafHit)
            assert hit.node.id == leaf.id

    def test_outside_is_miss(self, tree):
        assert hit_test(tree, Point(2, 2)) == Miss()
        assert hit_test(tree, Point(0, 1.2)) == Miss()

    def test_first_cut_returns_value_zero_child(self, tree):
        first = tree.children[0]
        (a, b) = first.own_edges[0]
        mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
        hit = hit_test(tree, mid)
        assert isinstance(hit, EdgeHit)
        assert hit.node.id == first.id

    def test_deeper_cut_wins_over_shallow_membership(self, tree):
        m_child = tree.children[1]
        assert len(m_child.children) == 2
        (a, b) = m_child.children[0].own_edges[0]
        mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
        hit = hit_test(tree, mid)
        assert isinstance(hit, EdgeHit)
        assert hit.node.id == m_child.children[0].id

    def test_root_outline_is_root_edge(self, tree):
        v0, v1 = tree.polygon.vertices[1], tree.polygon.vertices[2]
        mid = Point((v0.x + v1.x) / 2, (v0.y + v1.y) / 2)
        hit = hit_test(tree, mid)
        assert isinstance(hit, EdgeHit)
        assert hit.node.id == tree.id

    def test_matches_exhaustive_distance_oracle(self):
        rng = random.Random(61)
        ds, _ = random_dataset(rng, 3, 3, 150)
        tree = build_tree(ds, [0, 1, 2])
        tol = 0.01
        for _ in range(300):
            p = Point(rng.uniform(-1.1, 1.1), rng.uniform(-1.1, 1.1))
            candidates = [
                node
                for node in tree.iter_nodes()
                if any(segment_distance(a, b, p) <= tol
                       for a, b in node.own_edges)
            ]
            hit = hit_test(tree, p, tol)
            if candidates:
                best = max(
                    candidates,
                    key=lambda nd: (nd.dim_order_pos, -(nd.value_index or 0)),
                )
                assert isinstance(hit, EdgeHit)
                assert hit.node.dim_order_pos == best.dim_order_pos
                assert (hit.node.value_index or 0) == (best.value_index or 0)
            elif contains_point(tree.polygon, p, eps=1e-12):
                assert isinstance(hit, LeafHit)
                assert contains_point(hit.node.polygon, p, eps=1e-9)
            else:
                assert hit == Miss()


class TestNodeSummary:
    def test_root(self):
        ds = parse_csv(SMALL)
        tree = build_tree(ds, [0, 1])
        s = node_summary(ds, tree)
        assert s.value_path == ()
        assert s.percentage == 100.0

    def test_leaf_fraction(self):
        rows = ["g,a"] + ["M,teen"] * 37 + ["F,adult"] * 463
        ds = parse_csv("\n".join(rows))
        tree = build_tree(ds, [0, 1])
        target = None
        for leaf in tree.leaves():
            if leaf.count == 37:
                target = leaf
        s = node_summary(ds, target)
        assert s.percentage == pytest.approx(7.4)
        assert s.value_path == (("g", "M"), ("a", "teen"))

    def test_drilled_percentage_against_drilled_total(self):
        ds = parse_csv(SMALL)
        tree = build_tree(ds, [1], drill=path((0, 1)))
        for leaf in tree.leaves():
            s = node_summary(ds, leaf)
            assert s.percentage == pytest.approx(50.0)
