"""Deterministic SVG emission of a layout tree.

The overview group paints leaf fills first, then cut segments from the
deepest dimension up (thick shallow lines cover thin deep ones), then the
outline, marbles, and labels. An optional detail group magnifies one node
into a side panel with its value path on top and its percentage below.
All numbers are written with fixed precision so identical inputs yield
byte-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

from .dataset import Dataset
from .encoding import hue_for_dimension, marble_style
from .geometry import ConvexPolygon, Point
from .layout import LayoutNode, SideAssignment, node_summary

FONT_FAMILY = "sans-serif"
FONT_HEIGHT_FRACTION = 0.022
POLYGON_FILL_FRACTION = 0.42   # circumradius relative to min(width, height)
CUT_LIGHTNESS = 0.45
LABEL_PUSH = 1.12              # radial nudge for dimension-name labels
OUTLINE_WIDTH = 1.5

# Panel placement when a detail node is requested (fractions of the
# viewport); the overview shifts into the left part.
DETAIL_SPLIT = 0.62
PANEL_X, PANEL_W = 0.66, 0.30
PANEL_Y, PANEL_H = 0.16, 0.68
CAPTION_TOP_Y = 0.10
CAPTION_BOTTOM_Y = 0.92


_MARBLE = marble_style()
_MARBLE_HSL = (_MARBLE.hue, _MARBLE.saturation, _MARBLE.lightness)


class RenderError(Exception):
    pass


class UnknownNodeError(RenderError):
    """The requested detail node id is not in the tree."""


@dataclass(frozen=True)
class RenderOptions:
    width: int = 1000
    height: int = 1000
    show_marbles: bool = True
    show_labels: bool = True
    detail_node: Optional[int] = None

    def __post_init__(self):
        if self.width < 100 or self.height < 100:
            raise RenderError("viewport must be at least 100x100")


@dataclass(frozen=True)
class Viewport:
    """Model-to-pixel mapping: uniform scale, y axis flipped."""

    cx: float
    cy: float
    scale: float

    def point(self, p: Point) -> tuple[float, float]:
        return (self.cx + p.x * self.scale, self.cy - p.y * self.scale)


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _hsl(hue: float, saturation: float, lightness: float) -> str:
    return "hsl({:.2f}, {:.2f}%, {:.2f}%)".format(
        hue * 360.0, saturation * 100.0, lightness * 100.0
    )


def _path_d(vp: Viewport, poly: ConvexPolygon) -> str:
    parts = []
    for i, v in enumerate(poly.vertices):
        x, y = vp.point(v)
        parts.append(f"{'M' if i == 0 else 'L'} {_fmt(x)},{_fmt(y)}")
    parts.append("Z")
    return " ".join(parts)


def _outline(vp: Viewport, poly: ConvexPolygon) -> str:
    return (
        f'<path class="outline" d="{_path_d(vp, poly)}" fill="none" '
        f'stroke="{_hsl(0.0, 0.0, 0.0)}" stroke-width="{_fmt(OUTLINE_WIDTH)}" '
        f'stroke-linejoin="round"/>'
    )


def _paint_region(node: LayoutNode, vp: Viewport,
                  show_marbles: bool) -> list[str]:
    """Fills, cuts, outline, and marbles for one subtree."""
    fills: list[str] = []
    cut_items: list[tuple[int, str]] = []
    marbles: list[str] = []
    for nd in node.iter_nodes():
        if nd.is_leaf and nd.count > 0:
            fills.append(
                '<path class="leaf" data-node="{}" d="{}" fill="{}" '
                'stroke="none"/>'.format(
                    nd.id,
                    _path_d(vp, nd.polygon),
                    _hsl(nd.style.hue, nd.style.saturation,
                         nd.style.lightness),
                )
            )
        for idx, child in enumerate(nd.children):
            if idx == 0:
                continue  # each inner chord is stored once on the upper slab
            a, b = child.own_edges[0]
            ax, ay = vp.point(a)
            bx, by = vp.point(b)
            cut_items.append((
                child.dim_order_pos,
                '<line class="cut" x1="{}" y1="{}" x2="{}" y2="{}" '
                'stroke="{}" stroke-width="{}" stroke-linecap="round"/>'.format(
                    _fmt(ax), _fmt(ay), _fmt(bx), _fmt(by),
                    _hsl(child.style.hue, 1.0, CUT_LIGHTNESS),
                    _fmt(child.style.stroke_width),
                ),
            ))
        if show_marbles:
            for m in nd.marbles:
                mx, my = vp.point(m.position)
                marbles.append(
                    '<circle class="marble" cx="{}" cy="{}" r="{}" '
                    'fill="{}"/>'.format(
                        _fmt(mx), _fmt(my), _fmt(m.radius * vp.scale),
                        _hsl(*_MARBLE_HSL),
                    )
                )
    cut_items.sort(key=lambda item: -item[0])
    out = fills
    out.extend(elem for _, elem in cut_items)
    out.append(_outline(vp, node.polygon))
    out.extend(marbles)
    return out


def _text(x: float, y: float, content: str, fill: str, font_px: float,
          cls: str) -> str:
    return (
        '<text class="{}" x="{}" y="{}" font-family="{}" font-size="{}" '
        'text-anchor="middle" fill="{}">{}</text>'.format(
            cls, _fmt(x), _fmt(y), FONT_FAMILY, _fmt(font_px), fill,
            escape(content),
        )
    )


def _centroid(poly: ConvexPolygon) -> Point:
    n = len(poly.vertices)
    return Point(
        sum(v.x for v in poly.vertices) / n,
        sum(v.y for v in poly.vertices) / n,
    )


def _overview_labels(ds: Dataset, root: LayoutNode,
                     assignment: SideAssignment, vp: Viewport,
                     font_px: float) -> list[str]:
    out = []
    n = len(assignment.slots)
    poly = assignment.polygon
    for pos, slot in enumerate(assignment.slots):
        a = poly.vertices[slot.side]
        b = poly.vertices[(slot.side + 1) % len(poly)]
        mid = Point((a.x + b.x) / 2 * LABEL_PUSH, (a.y + b.y) / 2 * LABEL_PUSH)
        x, y = vp.point(mid)
        out.append(_text(
            x, y, ds.dimensions[slot.dimension].name,
            _hsl(hue_for_dimension(pos, n), 1.0, 0.40), font_px, "dim-label",
        ))
    if assignment.slots:
        first_dim = assignment.slots[0].dimension
        for child in root.children:
            cx, cy = vp.point(_centroid(child.polygon))
            out.append(_text(
                cx, cy, ds.dimensions[first_dim].values[child.value_index],
                _hsl(child.style.hue, child.style.saturation,
                     child.style.lightness),
                font_px, "value-label",
            ))
    return out


def _viewport_for(root: LayoutNode, x0: float, y0: float, w: float,
                  h: float) -> Viewport:
    radius = max(math.hypot(v.x, v.y) for v in root.polygon.vertices)
    scale = POLYGON_FILL_FRACTION * min(w, h) / radius
    return Viewport(x0 + w / 2, y0 + h / 2, scale)


def _detail_group(ds: Dataset, root: LayoutNode, node: LayoutNode,
                  vp: Viewport, opts: RenderOptions) -> list[str]:
    w, h = float(opts.width), float(opts.height)
    px, pw = PANEL_X * w, PANEL_W * w
    py, ph = PANEL_Y * h, PANEL_H * h
    font_px = FONT_HEIGHT_FRACTION * h

    xs, ys = zip(*(vp.point(v) for v in node.polygon.vertices))
    bw, bh = max(xs) - min(xs), max(ys) - min(ys)
    mag = min(pw / bw, ph / bh)
    bcx, bcy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    tx = (px + pw / 2) - mag * bcx
    ty = (py + ph / 2) - mag * bcy

    summary = node_summary(ds, node)
    caption = ", ".join(f"{d} = {v}" for d, v in summary.value_path)
    if not caption:
        caption = "all data"

    out = ['<g id="detail">']
    out.append(
        '<rect class="panel" x="{}" y="{}" width="{}" height="{}" '
        'fill="none" stroke="{}" stroke-width="{}"/>'.format(
            _fmt(px), _fmt(py), _fmt(pw), _fmt(ph),
            _hsl(0.0, 0.0, 0.60), _fmt(1.0),
        )
    )
    out.append(_text(px + pw / 2, CAPTION_TOP_Y * h, caption,
                     _hsl(0.0, 0.0, 0.20), font_px, "detail-path"))
    out.append(
        '<g class="magnified" transform="translate({} {}) scale({})">'.format(
            _fmt(tx), _fmt(ty), _fmt(mag)
        )
    )
    out.extend(_paint_region(node, vp, opts.show_marbles))
    out.append("</g>")
    out.append(_text(
        px + pw / 2, CAPTION_BOTTOM_Y * h,
        f"{summary.percentage:.2f}%",
        _hsl(0.0, 0.0, 0.20), font_px, "detail-pct",
    ))
    out.append("</g>")
    return out


def to_svg(ds: Dataset, root: LayoutNode,
           assignment: Optional[SideAssignment] = None,
           opts: RenderOptions = RenderOptions()) -> str:
    """Render the tree (and optional detail panel) as an SVG 1.1 document.

    Pure function of its inputs: rendering twice gives identical bytes.
    `assignment` supplies the dimension-name side labels; without it only
    the geometry is drawn.
    """
    w, h = float(opts.width), float(opts.height)
    detail: Optional[LayoutNode] = None
    if opts.detail_node is not None:
        detail = root.find(opts.detail_node)
        if detail is None:
            raise UnknownNodeError(f"no node with id {opts.detail_node}")
        vp = _viewport_for(root, 0.0, 0.0, DETAIL_SPLIT * w, h)
    else:
        vp = _viewport_for(root, 0.0, 0.0, w, h)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="{0}" height="{1}" viewBox="0 0 {0} {1}">'.format(
            opts.width, opts.height
        ),
        '<g id="overview">',
    ]
    lines.extend(_paint_region(root, vp, opts.show_marbles))
    if opts.show_labels and assignment is not None:
        lines.extend(_overview_labels(
            ds, root, assignment, vp, FONT_HEIGHT_FRACTION * h
        ))
    lines.append("</g>")
    if detail is not None:
        lines.extend(_detail_group(ds, root, detail, vp, opts))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def detail_panel(ds: Dataset, root: LayoutNode, node_id: int,
                 opts: RenderOptions = RenderOptions()) -> str:
    """The detail side panel on its own, as an SVG group fragment."""
    node = root.find(node_id)
    if node is None:
        raise UnknownNodeError(f"no node with id {node_id}")
    w, h = float(opts.width), float(opts.height)
    vp = _viewport_for(root, 0.0, 0.0, DETAIL_SPLIT * w, h)
    return "\n".join(_detail_group(ds, root, node, vp, opts)) + "\n"
