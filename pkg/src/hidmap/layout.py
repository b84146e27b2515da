"""Hierarchical area-proportional partition of a regular polygon.

Each visible dimension claims one polygon side, consecutive clockwise from
the top-right side. The tree splits the polygon once per dimension with cuts
parallel to that dimension's side; slab order puts the lexicographically
smallest value nearest the side, and every node's area is proportional to
its row count. Leaves receive the marble glyphs.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional, Sequence

from .dataset import CategoryPath, Dataset, filter_count, partition_items
from .encoding import (
    Style,
    hue_for_dimension,
    leaf_fill,
    lightness_for_value,
    stroke_width_for_depth,
)
from .geometry import (
    ConvexPolygon,
    CutDirection,
    GeometryConfig,
    Point,
    contains_point,
    cut_segment,
    regular_polygon,
    segment_distance,
    side_cut,
    split_proportional,
)
from .marbles import Marble, marble_count, place_marbles

MARBLE_RADIUS_FACTOR = 0.02
_ID_BITS = 48
_ID_MASK = (1 << _ID_BITS) - 1

Segment = tuple[Point, Point]


class LayoutError(Exception):
    pass


class NoVisibleDimensionsError(LayoutError):
    pass


class EmptySelectionError(LayoutError):
    """The drill path matches zero rows."""


@dataclass(frozen=True)
class LayoutConfig:
    circumradius: float = 1.0
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    marble_total: int = 100

    def __post_init__(self):
        if not self.circumradius > 0:
            raise LayoutError("circumradius must be positive")
        if self.marble_total < 1:
            raise LayoutError("marble_total must be >= 1")


def sides_for(n_visible: int) -> int:
    """Smallest odd side count that fits every visible dimension."""
    if n_visible < 1:
        raise NoVisibleDimensionsError("need at least one visible dimension")
    k = max(3, n_visible)
    return k if k % 2 == 1 else k + 1


@dataclass(frozen=True)
class DimensionSide:
    dimension: int
    side: int
    cut: CutDirection


@dataclass(frozen=True)
class SideAssignment:
    """Root polygon plus the side and cut family of each visible dimension."""

    polygon: ConvexPolygon
    sides: int
    slots: tuple[DimensionSide, ...]

    def cut_for_position(self, order_pos: int) -> CutDirection:
        return self.slots[order_pos].cut


def assign_sides(
    order: Sequence[int],
    cfg: LayoutConfig = LayoutConfig(),
    sides: Optional[int] = None,
) -> SideAssignment:
    """Map the ordered visible dimensions onto consecutive sides.

    `sides` may exceed the minimum so the outer polygon can stay put while
    dimensions are hidden; extra trailing sides are simply unmapped.
    """
    k = sides_for(len(order)) if sides is None else sides
    if k % 2 == 0 or k < max(3, len(order)):
        raise LayoutError(f"side count {k} cannot hold {len(order)} dimensions")
    poly = regular_polygon(k, cfg.circumradius)
    slots = tuple(
        DimensionSide(dimension=dim, side=i, cut=side_cut(poly, i))
        for i, dim in enumerate(order)
    )
    return SideAssignment(polygon=poly, sides=k, slots=slots)


@dataclass(frozen=True)
class LayoutNode:
    """One node of the partition tree.

    own_edges holds only the cut segments created when this node was carved
    out (the whole outline for the root): the shared boundary between two
    sibling slabs belongs to both, so the hit tester can resolve edge hovers
    by depth and value order.
    """

    id: int
    dim_order_pos: int              # -1 for the root
    value_index: Optional[int]      # None for the root
    count: int
    fraction: float
    polygon: ConvexPolygon
    style: Style
    path: CategoryPath
    own_edges: tuple[Segment, ...]
    children: tuple["LayoutNode", ...] = ()
    marbles: tuple[Marble, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def iter_nodes(self) -> Iterator["LayoutNode"]:
        yield self
        for child in self.children:
            yield from child.iter_nodes()

    def leaves(self) -> Iterator["LayoutNode"]:
        for node in self.iter_nodes():
            if node.is_leaf:
                yield node

    def find(self, node_id: int) -> Optional["LayoutNode"]:
        for node in self.iter_nodes():
            if node.id == node_id:
                return node
        return None


def _stable_id(drill: CategoryPath, order: Sequence[int],
               path: CategoryPath) -> int:
    canon = "drill:{};order:{};path:{}".format(
        ",".join(f"{d}={v}" for d, v in sorted(drill)),
        ",".join(str(d) for d in order),
        ",".join(f"{d}={v}" for d, v in path),
    )
    digest = hashlib.sha256(canon.encode("utf-8")).digest()
    return int.from_bytes(digest[:_ID_BITS // 8], "big")


def build_tree(
    ds: Dataset,
    order: Sequence[int],
    drill: CategoryPath = CategoryPath(()),
    cfg: LayoutConfig = LayoutConfig(),
    seed: int = 0,
    sides: Optional[int] = None,
) -> LayoutNode:
    """Build the full partition tree for the drilled subset.

    `order` lists the visible dimensions, first dimension first; `sides`
    optionally pins the outer polygon to more sides than the visible count
    needs. Marble placement is seeded by (seed, node id), so the layout is a
    pure function of (dataset, order, drill, cfg, seed, sides).
    """
    order = tuple(order)
    if not order:
        raise NoVisibleDimensionsError("order must name at least one dimension")
    if len(set(order)) != len(order):
        raise LayoutError(f"duplicate dimension in order {order}")
    drilled_dims = drill.dimensions
    for d in order:
        if not 0 <= d < len(ds.dimensions):
            raise LayoutError(f"unknown dimension index {d}")
        if d in drilled_dims:
            raise LayoutError(f"dimension {d} is both ordered and drilled")

    total = filter_count(ds, drill)
    if total == 0:
        raise EmptySelectionError("drill path matches no rows")

    assignment = assign_sides(order, cfg, sides)
    items = [
        (key, c)
        for key, c in ds.items()
        if all(key[d] == v for d, v in drill)
    ]

    n = len(order)
    radius = MARBLE_RADIUS_FACTOR * cfg.circumradius
    last_dim = order[-1]
    last_k = len(ds.dimensions[last_dim].values)

    leaf_counts: dict[tuple[int, ...], int] = {}
    for key, c in items:
        proj = tuple(key[d] for d in order)
        leaf_counts[proj] = leaf_counts.get(proj, 0) + c
    count_min = min(leaf_counts.values())
    count_max = max(leaf_counts.values())

    seen_ids: set[int] = set()
    marble_cursor = 0

    def claim_id(path: CategoryPath) -> int:
        nid = _stable_id(drill, order, path)
        while nid in seen_ids:
            nid = (nid + 1) & _ID_MASK
        seen_ids.add(nid)
        return nid

    def build(
        dpos: int,
        value_index: Optional[int],
        poly: ConvexPolygon,
        node_items: list,
        count: int,
        path: CategoryPath,
        own_edges: tuple[Segment, ...],
    ) -> LayoutNode:
        nonlocal marble_cursor
        nid = claim_id(path)
        fraction = count / total

        if dpos == n - 1:
            mcount = marble_count(fraction, cfg.marble_total)
            placed = place_marbles(
                poly, mcount, radius, seed, nid, first_id=marble_cursor
            )
            marble_cursor += len(placed)
            # Counts stand in for areas: the map is linear, so the
            # saturation endpoints stay exact. The stroke width still
            # describes the cut family that carved this leaf out.
            style = replace(
                leaf_fill(
                    n - 1, n, value_index if value_index is not None else 0,
                    last_k, count, count_min, count_max,
                ),
                stroke_width=stroke_width_for_depth(dpos, n),
            )
            return LayoutNode(
                id=nid, dim_order_pos=dpos, value_index=value_index,
                count=count, fraction=fraction, polygon=poly, style=style,
                path=path, own_edges=own_edges, marbles=tuple(placed),
            )

        dim = order[dpos + 1]
        p = len(ds.dimensions[dim].values)
        buckets = partition_items(node_items, dim, p)
        counts = [sum(c for _, c in bucket) for bucket in buckets]
        fractions = [c / count for c in counts]
        cut = assignment.cut_for_position(dpos + 1)
        slabs = split_proportional(poly, cut, fractions, cfg.geometry)

        present = [v for v in range(p) if counts[v] > 0]
        for v in present:
            if slabs[v] is None:
                raise LayoutError(
                    f"degenerate slab for value {v} with count {counts[v]}"
                )
        chords: list[Segment] = []
        for v in present[:-1]:
            offset = max(cut.depth(q) for q in slabs[v].vertices)
            seg = cut_segment(poly, cut, offset)
            if seg is None:
                raise LayoutError("lost boundary chord between siblings")
            chords.append(seg)

        children = []
        for idx, v in enumerate(present):
            child_edges = []
            if idx > 0:
                child_edges.append(chords[idx - 1])
            if idx < len(present) - 1:
                child_edges.append(chords[idx])
            children.append(build(
                dpos + 1, v, slabs[v], buckets[v], counts[v],
                path.extended(dim, v), tuple(child_edges),
            ))

        if dpos == -1:
            style = Style(hue=0.0, saturation=0.0, lightness=0.0,
                          stroke_width=1.5)
        else:
            own_dim = order[dpos]
            k = len(ds.dimensions[own_dim].values)
            style = Style(
                hue=hue_for_dimension(dpos, n),
                saturation=1.0,
                lightness=lightness_for_value(
                    value_index if value_index is not None else 0, k
                ),
                stroke_width=stroke_width_for_depth(dpos, n),
            )
        return LayoutNode(
            id=nid, dim_order_pos=dpos, value_index=value_index, count=count,
            fraction=fraction, polygon=poly, style=style, path=path,
            own_edges=own_edges, children=tuple(children),
        )

    root_poly = assignment.polygon
    outline = tuple(
        (root_poly.vertices[i], root_poly.vertices[(i + 1) % len(root_poly)])
        for i in range(len(root_poly))
    )
    return build(-1, None, root_poly, items, total, CategoryPath(()), outline)


@dataclass(frozen=True)
class LeafHit:
    node: LayoutNode


@dataclass(frozen=True)
class EdgeHit:
    node: LayoutNode


class Miss:
    def __eq__(self, other):  # all misses are the same miss
        return isinstance(other, Miss)

    def __hash__(self):
        return hash(Miss)


HitResult = "LeafHit | EdgeHit | Miss"


def hit_test(root: LayoutNode, p: Point,
             edge_tolerance: Optional[float] = None):
    """Resolve a pointer position to a leaf, a node edge, or a miss.

    Edge hovers win over containment: among all nodes with an own edge
    within tolerance, the deepest one is chosen, ties broken by the smaller
    value index, then document order.
    """
    if edge_tolerance is None:
        edge_tolerance = 0.01 * max(
            math.hypot(v.x, v.y) for v in root.polygon.vertices
        )
    best: Optional[LayoutNode] = None
    for node in root.iter_nodes():
        if best is not None:
            b_key = (best.dim_order_pos, -(best.value_index or 0))
            n_key = (node.dim_order_pos, -(node.value_index or 0))
            if n_key <= b_key:
                continue  # cannot beat the current best
        for a, b in node.own_edges:
            if segment_distance(a, b, p) <= edge_tolerance:
                best = node
                break
    if best is not None:
        return EdgeHit(best)

    if not contains_point(root.polygon, p, eps=1e-12):
        return Miss()
    node = root
    while node.children:
        for child in node.children:
            if contains_point(child.polygon, p, eps=1e-12):
                node = child
                break
        else:
            return Miss()  # inside a skipped zero-width band
    return LeafHit(node)


@dataclass(frozen=True)
class NodeSummary:
    value_path: tuple[tuple[str, str], ...]
    percentage: float

    def to_dict(self) -> dict:
        return {
            "valuePath": [[d, v] for d, v in self.value_path],
            "percentage": self.percentage,
        }


def node_summary(ds: Dataset, node: LayoutNode) -> NodeSummary:
    """Names along the node's path plus its share of the drilled total."""
    pairs = tuple(
        (ds.dimensions[d].name, ds.dimensions[d].values[v])
        for d, v in node.path
    )
    return NodeSummary(value_path=pairs, percentage=100.0 * node.fraction)
