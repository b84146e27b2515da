/**
 * True when (x, y) lies inside the clockwise convex polygon or within
 * `eps` (scaled by edge length) of its boundary.
 */
export function containsPoint(polygon, x, y, eps = 1e-12) {
    const n = polygon.length;
    for (let i = 0; i < n; i++) {
        const [ax, ay] = polygon[i];
        const [bx, by] = polygon[(i + 1) % n];
        const ex = bx - ax;
        const ey = by - ay;
        const cross = ex * (y - ay) - ey * (x - ax);
        if (cross > eps * Math.hypot(ex, ey)) {
            return false;
        }
    }
    return true;
}
/** Distance from (px, py) to the closed segment (ax, ay)-(bx, by). */
export function segmentDistance(ax, ay, bx, by, px, py) {
    const ex = bx - ax;
    const ey = by - ay;
    const dx = px - ax;
    const dy = py - ay;
    const denom = ex * ex + ey * ey;
    const t = denom === 0 ? 0 : Math.max(0, Math.min(1, (dx * ex + dy * ey) / denom));
    return Math.hypot(dx - t * ex, dy - t * ey);
}
/** Largest distance from the origin to a polygon vertex. */
export function maxVertexNorm(polygon) {
    let best = 0;
    for (const [x, y] of polygon) {
        const norm = Math.hypot(x, y);
        if (norm > best) {
            best = norm;
        }
    }
    return best;
}
/** Vertex-average centroid, which is what the layout uses for label anchors. */
export function vertexCentroid(polygon) {
    let sx = 0;
    let sy = 0;
    for (const [x, y] of polygon) {
        sx += x;
        sy += y;
    }
    return [sx / polygon.length, sy / polygon.length];
}
