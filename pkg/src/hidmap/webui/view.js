/**
 * SVG and DOM rendering. Visual conventions (fill fraction, y-axis flip,
 * HSL encoding, cut paint order, marble styling, label placement) mirror
 * the server's own SVG renderer so the browser view and exported files
 * read the same way.
 */
import { vertexCentroid, maxVertexNorm } from "./geometry.js";
import { pathToNode } from "./hittest.js";
const SVG_NS = "http://www.w3.org/2000/svg";
/** Fraction of the viewport's short side covered by the outline's radius. */
export const POLYGON_FILL_FRACTION = 0.42;
/** Radial factor pushing dimension labels outside the outline. */
export const LABEL_PUSH = 1.12;
/** Lightness of cut strokes. */
export const CUT_LIGHTNESS = 0.45;
/** Marble fill: hue 0.5, saturation 0.6, lightness 0.5. */
export const MARBLE_FILL = "hsl(180, 60%, 50%)";
export const OUTLINE_WIDTH = 1.5;
/** Viewport that centers the outline and flips y so model +y points up. */
export function viewportFor(polygon, width, height) {
    const radius = maxVertexNorm(polygon);
    const scale = (POLYGON_FILL_FRACTION * Math.min(width, height)) / (radius > 0 ? radius : 1);
    return { cx: width / 2, cy: height / 2, scale };
}
/** Viewport fitting an arbitrary polygon's bounding box into the panel. */
export function viewportForBounds(polygon, width, height, margin = 0.85) {
    let minX = Infinity;
    let maxX = -Infinity;
    let minY = Infinity;
    let maxY = -Infinity;
    for (const [x, y] of polygon) {
        minX = Math.min(minX, x);
        maxX = Math.max(maxX, x);
        minY = Math.min(minY, y);
        maxY = Math.max(maxY, y);
    }
    const spanX = Math.max(maxX - minX, 1e-9);
    const spanY = Math.max(maxY - minY, 1e-9);
    const scale = margin * Math.min(width / spanX, height / spanY);
    const midX = (minX + maxX) / 2;
    const midY = (minY + maxY) / 2;
    return { cx: width / 2 - midX * scale, cy: height / 2 + midY * scale, scale };
}
export function toScreen(vp, x, y) {
    return [vp.cx + x * vp.scale, vp.cy - y * vp.scale];
}
export function toModel(vp, sx, sy) {
    return [(sx - vp.cx) / vp.scale, (vp.cy - sy) / vp.scale];
}
/** CSS hsl() from fractional hue/saturation/lightness. */
export function hslCss(hue, saturation, lightness) {
    const h = (hue * 360).toFixed(2);
    const s = (saturation * 100).toFixed(2);
    const l = (lightness * 100).toFixed(2);
    return `hsl(${h}, ${s}%, ${l}%)`;
}
export function svgEl(tag, attrs = {}) {
    const el = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) {
        el.setAttribute(key, value);
    }
    return el;
}
export function clearChildren(el) {
    while (el.firstChild !== null) {
        el.removeChild(el.firstChild);
    }
}
function polygonPoints(vp, polygon) {
    return polygon
        .map(([x, y]) => {
        const [sx, sy] = toScreen(vp, x, y);
        return `${sx.toFixed(2)},${sy.toFixed(2)}`;
    })
        .join(" ");
}
function* iterWithSelf(node) {
    yield node;
    for (const child of node.children) {
        yield* iterWithSelf(child);
    }
}
/**
 * Paint a region subtree: populated leaf fills, then cut chords deepest
 * first (so shallow, thicker cuts draw on top), then the region outline,
 * then marbles above everything.
 */
export function paintRegion(layer, region, vp, withMarbles = true) {
    const paint = { marbleById: new Map(), fillByNode: new Map() };
    const fills = svgEl("g", { class: "fills" });
    for (const node of iterWithSelf(region)) {
        if (node.children.length === 0 && node.count > 0) {
            const poly = svgEl("polygon", {
                points: polygonPoints(vp, node.polygon),
                fill: hslCss(node.style.hue, node.style.saturation, node.style.lightness),
                stroke: "none",
            });
            poly.dataset.nodeId = String(node.id);
            paint.fillByNode.set(node.id, poly);
            fills.appendChild(poly);
        }
    }
    layer.appendChild(fills);
    const cuts = svgEl("g", { class: "cuts" });
    const parents = [...iterWithSelf(region)].filter((n) => n.children.length > 1);
    parents.sort((a, b) => b.orderPos - a.orderPos);
    for (const parent of parents) {
        for (const child of parent.children.slice(1)) {
            const [[ax, ay], [bx, by]] = child.edges[0];
            const [sax, say] = toScreen(vp, ax, ay);
            const [sbx, sby] = toScreen(vp, bx, by);
            cuts.appendChild(svgEl("line", {
                x1: sax.toFixed(2),
                y1: say.toFixed(2),
                x2: sbx.toFixed(2),
                y2: sby.toFixed(2),
                stroke: hslCss(child.style.hue, 1.0, CUT_LIGHTNESS),
                "stroke-width": String(child.style.strokeWidth),
                "stroke-linecap": "round",
            }));
        }
    }
    layer.appendChild(cuts);
    layer.appendChild(svgEl("polygon", {
        class: "outline",
        points: polygonPoints(vp, region.polygon),
        fill: "none",
        stroke: "#000",
        "stroke-width": String(OUTLINE_WIDTH),
    }));
    if (withMarbles) {
        const marbles = svgEl("g", { class: "marbles" });
        for (const node of iterWithSelf(region)) {
            for (const marble of node.marbles) {
                const [sx, sy] = toScreen(vp, marble.x, marble.y);
                const circle = svgEl("circle", {
                    cx: sx.toFixed(2),
                    cy: sy.toFixed(2),
                    r: (marble.r * vp.scale).toFixed(2),
                    fill: MARBLE_FILL,
                });
                circle.dataset.marbleId = String(marble.id);
                paint.marbleById.set(marble.id, circle);
                marbles.appendChild(circle);
            }
        }
        layer.appendChild(marbles);
    }
    return paint;
}
/**
 * One draggable label per visible dimension, anchored just outside the
 * midpoint of its side. Side i of the outline hosts the i-th visible
 * legend entry.
 */
export function renderSideLabels(layer, doc, vp) {
    const outline = doc.tree.polygon;
    const n = outline.length;
    const visible = doc.legend.filter((entry) => !entry.hidden);
    visible.forEach((entry, pos) => {
        if (pos >= n) {
            return;
        }
        const [ax, ay] = outline[pos];
        const [bx, by] = outline[(pos + 1) % n];
        const mx = ((ax + bx) / 2) * LABEL_PUSH;
        const my = ((ay + by) / 2) * LABEL_PUSH;
        const [sx, sy] = toScreen(vp, mx, my);
        const text = svgEl("text", {
            x: sx.toFixed(2),
            y: sy.toFixed(2),
            class: "dim-label",
            fill: hslCss(entry.hue ?? 0, 1.0, 0.4),
            "text-anchor": "middle",
            "dominant-baseline": "middle",
        });
        text.textContent = entry.name;
        text.dataset.pos = String(pos);
        text.dataset.dim = String(entry.dimension);
        layer.appendChild(text);
    });
}
/** Value names of the leading dimension, anchored at each block's centroid. */
export function renderValueLabels(layer, doc, vp) {
    for (const child of doc.tree.children) {
        if (child.value === null) {
            continue;
        }
        const [cx, cy] = vertexCentroid(child.polygon);
        const [sx, sy] = toScreen(vp, cx, cy);
        const text = svgEl("text", {
            x: sx.toFixed(2),
            y: sy.toFixed(2),
            class: "value-label",
            fill: hslCss(child.style.hue, 1.0, 0.25),
            "text-anchor": "middle",
            "dominant-baseline": "middle",
        });
        text.textContent = child.value;
        layer.appendChild(text);
    }
}
/**
 * Legend rows with visibility checkboxes. The checkbox of the only
 * remaining visible dimension is disabled so the view can never be
 * emptied; value chips preview each value's lightness ramp.
 */
export function renderLegend(container, doc, onToggle) {
    clearChildren(container);
    const visibleCount = doc.legend.filter((entry) => !entry.hidden).length;
    for (const entry of doc.legend) {
        const row = document.createElement("label");
        row.className = "legend-row";
        const box = document.createElement("input");
        box.type = "checkbox";
        box.checked = !entry.hidden;
        box.disabled = !entry.hidden && visibleCount === 1;
        box.dataset.dim = String(entry.dimension);
        box.addEventListener("change", () => {
            onToggle(entry.dimension, !box.checked);
        });
        row.appendChild(box);
        const name = document.createElement("span");
        name.className = "legend-name";
        name.textContent = entry.name;
        name.style.color = entry.hidden ? "#999" : hslCss(entry.hue ?? 0, 1.0, 0.35);
        row.appendChild(name);
        const chips = document.createElement("span");
        chips.className = "legend-chips";
        for (const value of entry.values) {
            const chip = document.createElement("span");
            chip.className = "legend-chip";
            chip.title = value.name;
            chip.style.background = entry.hidden
                ? hslCss(0, 0, value.lightness)
                : hslCss(entry.hue ?? 0, 0.6, value.lightness);
            chips.appendChild(chip);
        }
        row.appendChild(chips);
        container.appendChild(row);
    }
}
/** Drill trail, oldest first; empty trail reads "all data". */
export function renderBreadcrumb(el, doc) {
    if (doc.breadcrumb.length === 0) {
        el.textContent = "all data";
        return;
    }
    el.textContent = doc.breadcrumb
        .map((entry) => `${entry.dimension} = ${entry.value}`)
        .join(" › ");
}
/**
 * Detail panel: caption naming the hovered region's fixed values, a
 * magnified rendering of the region, and its share of the visible data.
 */
export function renderDetailPanel(refs, doc, node) {
    clearChildren(refs.shape);
    if (node === null) {
        refs.path.textContent = "";
        refs.pct.textContent = "";
        return;
    }
    const dimName = new Map();
    for (const entry of doc.legend) {
        dimName.set(entry.dimension, entry.name);
    }
    const chain = pathToNode(doc.tree, node.id) ?? [node];
    const parts = chain
        .filter((link) => link.dimension !== null && link.value !== null)
        .map((link) => `${dimName.get(link.dimension) ?? "?"} = ${link.value}`);
    refs.path.textContent = parts.length > 0 ? parts.join(", ") : "all data";
    refs.pct.textContent = `${(100 * node.fraction).toFixed(2)}%`;
    const width = refs.shape.viewBox.baseVal.width || refs.shape.clientWidth || 300;
    const height = refs.shape.viewBox.baseVal.height || refs.shape.clientHeight || 260;
    const vp = viewportForBounds(node.polygon, width, height);
    const layer = svgEl("g", { class: "detail-scene" });
    paintRegion(layer, node, vp, true);
    refs.shape.appendChild(layer);
}
/** Show the server's error JSON verbatim; hide after a few seconds. */
export function showToast(el, text) {
    el.textContent = text;
    el.classList.add("visible");
    const token = String(Date.now());
    el.dataset.token = token;
    window.setTimeout(() => {
        if (el.dataset.token === token) {
            el.classList.remove("visible");
        }
    }, 4000);
}
