"""Convex polygon primitives and area-proportional slab splitting.

Polygons are clockwise vertex lists in y-up model coordinates with the root
circumradius as the unit of length. Splitting cuts a polygon into parallel
slabs whose areas match requested fractions; cut positions are found by
binary search on the offset measured along a side's inward normal, so nested
cuts for the same dimension stay globally parallel.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence


class GeometryError(ValueError):
    pass


class TooFewSidesError(GeometryError):
    pass


class BadFractionsError(GeometryError):
    pass


class Point(NamedTuple):
    x: float
    y: float


Vertices = tuple[Point, ...]

# Minimum spacing between consecutive vertices and the degeneracy floor for
# cross products and areas.
DEGENERATE_EPS = 1e-12


@dataclass(frozen=True)
class GeometryConfig:
    """Tolerances for clipping and slab search.

    area_tolerance is relative to the polygon being split; 64 bisection
    iterations leave ample headroom since 2**-64 of any bracket is far below
    the tolerance at double precision.
    """

    area_tolerance: float = 1e-9
    max_bisection_iters: int = 64
    degenerate_eps: float = DEGENERATE_EPS

    def __post_init__(self):
        if not self.area_tolerance > 0:
            raise GeometryError("area_tolerance must be positive")
        if self.max_bisection_iters < 16:
            raise GeometryError("max_bisection_iters must be at least 16")


@dataclass(frozen=True)
class ConvexPolygon:
    """A convex polygon as a clockwise tuple of vertices.

    Construction validates vertex count, finiteness, consecutive-vertex
    spacing, and a consistent clockwise turn (cross products of consecutive
    edges non-positive within DEGENERATE_EPS).
    """

    vertices: Vertices

    def __post_init__(self):
        v = self.vertices
        if len(v) < 3:
            raise GeometryError(f"polygon needs at least 3 vertices, got {len(v)}")
        for p in v:
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise GeometryError(f"non-finite vertex {p}")
        n = len(v)
        for i in range(n):
            a, b = v[i], v[(i + 1) % n]
            if math.hypot(b.x - a.x, b.y - a.y) < DEGENERATE_EPS:
                raise GeometryError(f"vertices {i} and {(i + 1) % n} coincide")
        for i in range(n):
            a, b, c = v[i], v[(i + 1) % n], v[(i + 2) % n]
            cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)
            if cross > DEGENERATE_EPS:
                raise GeometryError(
                    f"counterclockwise turn at vertex {(i + 1) % n}"
                )

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class CutDirection:
    """The family of cut lines parallel to one polygon side.

    `direction` runs along the side, `inward_normal` is perpendicular and
    points into the root polygon, and `anchor` is a point on the side's
    supporting line. An offset o selects the line at depth o from the
    supporting line, measured along the inward normal.
    """

    direction: Point
    inward_normal: Point
    anchor: Point

    def __post_init__(self):
        d, n = self.direction, self.inward_normal
        if abs(math.hypot(d.x, d.y) - 1.0) > 1e-12:
            raise GeometryError("direction must be a unit vector")
        if abs(math.hypot(n.x, n.y) - 1.0) > 1e-12:
            raise GeometryError("inward_normal must be a unit vector")
        if abs(d.x * n.x + d.y * n.y) > 1e-12:
            raise GeometryError("direction and inward_normal must be orthogonal")

    def depth(self, p: Point) -> float:
        """Distance of p from the anchor line along the inward normal."""
        n = self.inward_normal
        return (p.x - self.anchor.x) * n.x + (p.y - self.anchor.y) * n.y


def regular_polygon(sides: int, circumradius: float = 1.0) -> ConvexPolygon:
    """Regular polygon with vertex 0 at the top, ordered clockwise.

    Vertex j sits at angle 90 degrees minus j * (360 / sides) in y-up
    coordinates; side i joins vertices i and i + 1, so side 0 is the
    top-right side.
    """
    if sides < 3:
        raise TooFewSidesError(f"need at least 3 sides, got {sides}")
    if not circumradius > 0:
        raise GeometryError("circumradius must be positive")
    verts = []
    for j in range(sides):
        angle = math.pi / 2 - 2 * math.pi * j / sides
        verts.append(Point(circumradius * math.cos(angle),
                           circumradius * math.sin(angle)))
    return ConvexPolygon(tuple(verts))


def side_cut(poly: ConvexPolygon, side: int) -> CutDirection:
    """CutDirection for side `side` of a clockwise polygon."""
    v = poly.vertices
    a, b = v[side % len(v)], v[(side + 1) % len(v)]
    dx, dy = b.x - a.x, b.y - a.y
    length = math.hypot(dx, dy)
    d = Point(dx / length, dy / length)
    # Clockwise orientation puts the interior on the (dy, -dx) side.
    return CutDirection(direction=d, inward_normal=Point(d.y, -d.x), anchor=a)


def _signed_area2(verts: Sequence[Point]) -> float:
    s = 0.0
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return s


def area(poly: ConvexPolygon) -> float:
    """Shoelace magnitude."""
    return abs(_signed_area2(poly.vertices)) / 2.0


def longest_edge(poly: ConvexPolygon) -> float:
    v = poly.vertices
    n = len(v)
    return max(
        math.hypot(v[(i + 1) % n].x - v[i].x, v[(i + 1) % n].y - v[i].y)
        for i in range(n)
    )


def contains_point(poly: ConvexPolygon, p: Point,
                   eps: float = DEGENERATE_EPS) -> bool:
    """True if p is inside poly or within eps of its boundary."""
    v = poly.vertices
    n = len(v)
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        ex, ey = b.x - a.x, b.y - a.y
        cross = ex * (p.y - a.y) - ey * (p.x - a.x)
        # Positive cross means p is outside this clockwise edge; scale the
        # tolerance by edge length so eps is a distance.
        if cross > eps * math.hypot(ex, ey):
            return False
    return True


def segment_distance(a: Point, b: Point, p: Point) -> float:
    """Distance from p to the closed segment ab."""
    ex, ey = b.x - a.x, b.y - a.y
    px, py = p.x - a.x, p.y - a.y
    denom = ex * ex + ey * ey
    t = 0.0 if denom == 0.0 else max(0.0, min(1.0, (px * ex + py * ey) / denom))
    return math.hypot(px - t * ex, py - t * ey)


def nearest_edge_distance(poly: ConvexPolygon, p: Point) -> float:
    """Distance from p to the nearest point of the polygon boundary."""
    v = poly.vertices
    n = len(v)
    return min(segment_distance(v[i], v[(i + 1) % n], p) for i in range(n))


def _clip_leq(verts: Sequence[Point], nx: float, ny: float,
              c: float, eps: float) -> list[Point]:
    """Vertices of verts intersected with the half-plane q . n <= c.

    Sutherland-Hodgman against a single plane; preserves clockwise order.
    Consecutive outputs closer than eps are merged.
    """
    out: list[Point] = []
    m = len(verts)
    a = verts[-1]
    da = a.x * nx + a.y * ny - c
    for i in range(m):
        b = verts[i]
        db = b.x * nx + b.y * ny - c
        if da <= 0.0:
            out.append(a)
            if db > 0.0:
                t = da / (da - db)
                out.append(Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
        elif db <= 0.0:
            t = da / (da - db)
            out.append(Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
        a, da = b, db
    # Merge near-coincident consecutive vertices (cut passing near a vertex).
    dedup: list[Point] = []
    for p in out:
        if not dedup or math.hypot(p.x - dedup[-1].x, p.y - dedup[-1].y) >= eps:
            dedup.append(p)
    while len(dedup) >= 2 and math.hypot(
        dedup[0].x - dedup[-1].x, dedup[0].y - dedup[-1].y
    ) < eps:
        dedup.pop()
    return dedup


def _as_polygon(verts: list[Point], eps: float) -> Optional[ConvexPolygon]:
    if len(verts) < 3 or abs(_signed_area2(verts)) / 2.0 < eps:
        return None
    return ConvexPolygon(tuple(verts))


def clip_half_plane(poly: ConvexPolygon, cut: CutDirection, offset: float,
                    cfg: GeometryConfig = GeometryConfig()) -> Optional[ConvexPolygon]:
    """Part of poly at depth <= offset from the cut's anchor line.

    Returns None (empty) when the kept region degenerates below
    cfg.degenerate_eps in area. Output stays convex and clockwise.
    """
    n = cut.inward_normal
    c = offset + cut.anchor.x * n.x + cut.anchor.y * n.y
    return _as_polygon(
        _clip_leq(poly.vertices, n.x, n.y, c, cfg.degenerate_eps),
        cfg.degenerate_eps,
    )


_PARALLEL_EPS = 1e-12


class _AreaProfile:
    """Area of the polygon at depth <= o, as a function of o.

    The area below a cut line is piecewise quadratic in the offset with
    breakpoints at vertex depths; evaluating it this way makes each bisection
    step O(log V) instead of re-clipping the polygon. Contributions are
    integrals of u dt per edge in the (direction, normal) frame; the cut
    segment itself contributes nothing because dt = 0 along it.

    Depths are shifted so the shallowest vertex sits at 0, which keeps the
    expanded quadratic coefficients small for thin slabs far from the anchor
    line. Edges within _PARALLEL_EPS of constant depth (the originating side
    and slab boundaries of the same cut family) would otherwise blow up the
    interpolation slope; they switch on as plain constants instead.
    """

    def __init__(self, verts: Sequence[Point], cut: CutDirection):
        d, n, anchor = cut.direction, cut.inward_normal, cut.anchor
        us = [(p.x - anchor.x) * d.x + (p.y - anchor.y) * d.y for p in verts]
        ts = [(p.x - anchor.x) * n.x + (p.y - anchor.y) * n.y for p in verts]
        self.t_min = min(ts)
        self.t_max = max(ts)
        ss = [t - self.t_min for t in ts]

        m = len(verts)
        starts: dict[float, list[tuple[float, float, float]]] = {}
        ends: dict[float, list[tuple[float, float, float]]] = {}
        consts: dict[float, float] = {}
        for i in range(m):
            t1, u1 = ss[i], us[i]
            t2, u2 = ss[(i + 1) % m], us[(i + 1) % m]
            full = 0.5 * (u1 + u2) * (t2 - t1)  # directed integral of u dt
            if abs(t2 - t1) <= _PARALLEL_EPS:
                lo = min(t1, t2)
                consts[lo] = consts.get(lo, 0.0) + full
                continue
            slope = (u2 - u1) / (t2 - t1)
            # W(t) = u1 * (t - t1) + slope * (t - t1)^2 / 2, expanded in t;
            # the active contribution runs from 0 at the shallow end to
            # `full` at the deep end for either edge direction.
            qc = slope / 2.0
            qb = u1 - slope * t1
            qa = (-u1 + slope * t1 / 2.0) * t1
            if t2 > t1:
                lo, hi = t1, t2
                tpl = (qa, qb, qc)
            else:
                lo, hi = t2, t1
                tpl = (full - qa, -qb, -qc)
            starts.setdefault(lo, []).append(tpl)
            ends.setdefault(hi, []).append(tpl)
            consts[hi] = consts.get(hi, 0.0) + full

        self._breaks = sorted({*ss, *consts})
        coeff_a = coeff_b = coeff_c = 0.0
        self._table: list[tuple[float, float, float]] = []
        for t in self._breaks:
            for a0, b0, c0 in ends.get(t, ()):
                coeff_a -= a0
                coeff_b -= b0
                coeff_c -= c0
            coeff_a += consts.get(t, 0.0)
            for a0, b0, c0 in starts.get(t, ()):
                coeff_a += a0
                coeff_b += b0
                coeff_c += c0
            self._table.append((coeff_a, coeff_b, coeff_c))

        total = self._raw(self.t_max)
        self._sign = -1.0 if total < 0 else 1.0
        self.total = abs(total)

    def _raw(self, o: float) -> float:
        s = o - self.t_min
        if s <= self._breaks[0]:
            return 0.0
        idx = min(bisect_right(self._breaks, s), len(self._table)) - 1
        a0, b0, c0 = self._table[idx]
        return a0 + b0 * s + c0 * s * s

    def area_below(self, o: float) -> float:
        if o >= self.t_max:
            return self.total
        return max(0.0, self._sign * self._raw(o))


def offset_for_area_fraction(
    poly: ConvexPolygon,
    cut: CutDirection,
    fraction: float,
    cfg: GeometryConfig = GeometryConfig(),
) -> tuple[float, int]:
    """Offset whose near-side clipped area is fraction * area(poly).

    Returns (offset, bisection iterations used). The clipped area is strictly
    monotone in the offset across the polygon's depth range, so plain
    bisection converges; iteration stops once the area error is within a
    quarter of cfg.area_tolerance (relative) or the bracket collapses.
    """
    profile = _AreaProfile(poly.vertices, cut)
    return _bisect_offset(profile, fraction, cfg)


def _bisect_offset(profile: _AreaProfile, fraction: float,
                   cfg: GeometryConfig) -> tuple[float, int]:
    target = fraction * profile.total
    tol = 0.25 * cfg.area_tolerance * profile.total
    lo, hi = profile.t_min, profile.t_max
    if fraction <= 0.0:
        return lo, 0
    if fraction >= 1.0:
        return hi, 0
    mid = 0.5 * (lo + hi)
    iters = 0
    for iters in range(1, cfg.max_bisection_iters + 1):
        mid = 0.5 * (lo + hi)
        err = profile.area_below(mid) - target
        if abs(err) <= tol or mid <= lo or mid >= hi:
            break
        if err < 0.0:
            lo = mid
        else:
            hi = mid
    return mid, iters


def split_proportional(
    poly: ConvexPolygon,
    cut: CutDirection,
    fractions: Sequence[float],
    cfg: GeometryConfig = GeometryConfig(),
) -> list[Optional[ConvexPolygon]]:
    """Cut poly into parallel slabs with the given area fractions.

    Slabs are ordered from the cut's originating side inward: fractions[0]
    is the region closest to that side. Zero fractions yield None entries;
    each nonzero slab's area fraction matches its target within
    cfg.area_tolerance (relative to area(poly)).
    """
    if any(f < 0 for f in fractions):
        raise BadFractionsError("fractions must be non-negative")
    if not fractions or abs(math.fsum(fractions) - 1.0) > 1e-9:
        raise BadFractionsError("fractions must sum to 1")

    profile = _AreaProfile(poly.vertices, cut)
    n = cut.inward_normal
    plane = cut.anchor.x * n.x + cut.anchor.y * n.y

    last_nonzero = max(i for i, f in enumerate(fractions) if f > 0)
    slabs: list[Optional[ConvexPolygon]] = []
    remaining: Sequence[Point] = poly.vertices
    cumulative = 0.0
    prev_offset = profile.t_min
    for i, f in enumerate(fractions):
        if f == 0.0:
            slabs.append(None)
            continue
        if i == last_nonzero:
            slabs.append(_as_polygon(list(remaining), cfg.degenerate_eps))
            break
        cumulative += f
        offset, _ = _bisect_offset(profile, cumulative, cfg)
        offset = max(offset, prev_offset)
        c = offset + plane
        slab = _clip_leq(remaining, n.x, n.y, c, cfg.degenerate_eps)
        slabs.append(_as_polygon(slab, cfg.degenerate_eps))
        remaining = _clip_leq(remaining, -n.x, -n.y, -c, cfg.degenerate_eps)
        prev_offset = offset
    slabs.extend([None] * (len(fractions) - len(slabs)))
    return slabs


def cut_segment(poly: ConvexPolygon, cut: CutDirection,
                offset: float) -> Optional[tuple[Point, Point]]:
    """Chord where the cut line at `offset` crosses the polygon, if any."""
    n = cut.inward_normal
    c = offset + cut.anchor.x * n.x + cut.anchor.y * n.y
    v = poly.vertices
    m = len(v)
    points: list[Point] = []
    for i in range(m):
        a, b = v[i], v[(i + 1) % m]
        da = a.x * n.x + a.y * n.y - c
        db = b.x * n.x + b.y * n.y - c
        if abs(da) < DEGENERATE_EPS:
            points.append(a)
        elif (da < 0) != (db < 0) and abs(db) >= DEGENERATE_EPS:
            t = da / (da - db)
            points.append(Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
    if len(points) < 2:
        return None
    d = cut.direction
    points.sort(key=lambda p: p.x * d.x + p.y * d.y)
    p0, p1 = points[0], points[-1]
    if math.hypot(p1.x - p0.x, p1.y - p0.y) < DEGENERATE_EPS:
        return None
    return p0, p1


def erode(poly: ConvexPolygon, margin: float) -> Optional[ConvexPolygon]:
    """Polygon of points at distance >= margin from every edge, or None.

    Intersects the inward-shifted half-plane of each edge; the result is the
    exact feasible region for a disc center of radius `margin`.
    """
    verts: list[Point] = list(poly.vertices)
    m = len(poly.vertices)
    src = poly.vertices
    for i in range(m):
        a, b = src[i], src[(i + 1) % m]
        ex, ey = b.x - a.x, b.y - a.y
        length = math.hypot(ex, ey)
        nx, ny = ey / length, -ex / length  # inward for clockwise order
        # Keep q . (-n) <= -(a . n) - margin, i.e. depth >= margin.
        c = -(a.x * nx + a.y * ny) - margin
        verts = _clip_leq(verts, -nx, -ny, c, DEGENERATE_EPS)
        if len(verts) < 3:
            return None
    return _as_polygon(verts, DEGENERATE_EPS)
