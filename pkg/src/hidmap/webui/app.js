/**
 * Application controller: wires pointer input, the session client, and the
 * renderer together, and drives the single animation loop that plays
 * command transitions (500 ms scene cross-fade plus marble motion advanced
 * by the shared stepper until it settles or hits the step cap).
 */
import { SessionClient } from "./client.js";
import { hitTest } from "./hittest.js";
import { allSettled, fadeProgress, makeSimState, snapToTargets, stepSimulation, } from "./simulation.js";
import { MARBLE_FILL, clearChildren, hslCss, paintRegion, renderBreadcrumb, renderDetailPanel, renderLegend, renderSideLabels, renderValueLabels, showToast, svgEl, toModel, toScreen, viewportFor, } from "./view.js";
function collectMarbles(root) {
    const out = new Map();
    const stack = [root];
    while (stack.length > 0) {
        const node = stack.pop();
        for (const marble of node.marbles) {
            out.set(marble.id, marble);
        }
        for (const child of node.children) {
            stack.push(child);
        }
    }
    return out;
}
export class App {
    constructor(refs, client, doc) {
        this.anim = null;
        this.dragFrom = null;
        this.dragMoved = false;
        this.animFrame = (now) => {
            const anim = this.anim;
            if (anim === null) {
                return;
            }
            if (anim.startTime === null) {
                anim.startTime = now;
            }
            const p = fadeProgress(now - anim.startTime);
            anim.oldScene.setAttribute("opacity", String(1 - p));
            anim.newScene.setAttribute("opacity", String(p));
            for (const circle of anim.fadeOutCircles) {
                circle.setAttribute("opacity", String(1 - p));
            }
            for (const circle of anim.fadeInCircles) {
                circle.setAttribute("opacity", String(p));
            }
            let simDone = true;
            if (anim.sim !== null) {
                if (!allSettled(anim.sim)) {
                    if (anim.sim.steps < anim.constants.maxSteps) {
                        stepSimulation(anim.sim, anim.constants);
                    }
                    if (!allSettled(anim.sim) && anim.sim.steps >= anim.constants.maxSteps) {
                        snapToTargets(anim.sim);
                    }
                    for (const mover of anim.movers) {
                        const [x, y] = anim.sim.positions[mover.index];
                        const [sx, sy] = toScreen(this.vp, x, y);
                        mover.circle.setAttribute("cx", sx.toFixed(2));
                        mover.circle.setAttribute("cy", sy.toFixed(2));
                    }
                }
                simDone = allSettled(anim.sim);
            }
            if (p >= 1 && simDone) {
                this.finalizeTransition();
                return;
            }
            requestAnimationFrame(this.animFrame);
        };
        this.refs = refs;
        this.client = client;
        this.doc = doc;
        this.width = refs.overview.width.baseVal.value || 640;
        this.height = refs.overview.height.baseVal.value || 640;
        this.vp = viewportFor(doc.tree.polygon, this.width, this.height);
        this.sceneLayer = svgEl("g", { class: "scene" });
        this.hoverLayer = svgEl("g", { class: "hover" });
        refs.overview.appendChild(this.sceneLayer);
        refs.overview.appendChild(this.hoverLayer);
        this.attachHandlers();
        this.render();
    }
    /** Fetch the initial layout and stand the app up. */
    static async boot(refs, baseUrl = "") {
        const client = new SessionClient(baseUrl);
        const doc = await client.fetchLayout();
        return new App(refs, client, doc);
    }
    /** Rebuild every static piece of the page from the current document. */
    render() {
        this.vp = viewportFor(this.doc.tree.polygon, this.width, this.height);
        const scene = this.buildScene(this.doc, this.vp);
        this.sceneLayer.replaceWith(scene);
        this.sceneLayer = scene;
        clearChildren(this.hoverLayer);
        renderLegend(this.refs.legend, this.doc, (dim, hidden) => {
            void this.client.hide(dim, hidden).then((outcome) => this.applyOutcome(outcome));
        });
        renderBreadcrumb(this.refs.breadcrumb, this.doc);
        this.refs.backButton.disabled = this.doc.breadcrumb.length === 0;
        renderDetailPanel({ path: this.refs.detailPath, pct: this.refs.detailPct, shape: this.refs.detailShape }, this.doc, null);
    }
    buildScene(doc, vp, withMarbles = true) {
        const scene = svgEl("g", { class: "scene" });
        paintRegion(scene, doc.tree, vp, withMarbles);
        const valueLabels = svgEl("g", { class: "value-labels" });
        renderValueLabels(valueLabels, doc, vp);
        scene.appendChild(valueLabels);
        const sideLabels = svgEl("g", { class: "side-labels" });
        renderSideLabels(sideLabels, doc, vp);
        scene.appendChild(sideLabels);
        return scene;
    }
    attachHandlers() {
        const svg = this.refs.overview;
        svg.addEventListener("pointermove", (event) => this.onPointerMove(event));
        svg.addEventListener("pointerleave", () => this.setHover({ kind: "miss" }));
        svg.addEventListener("pointerdown", (event) => this.onPointerDown(event));
        svg.addEventListener("pointerup", (event) => this.onPointerUp(event));
        this.refs.backButton.addEventListener("click", () => {
            void this.client.back().then((outcome) => this.applyOutcome(outcome));
        });
    }
    /** Pointer position in model coordinates, honouring CSS scaling. */
    eventToModel(event) {
        const rect = this.refs.overview.getBoundingClientRect();
        const sx = ((event.clientX - rect.left) * this.width) / Math.max(rect.width, 1);
        const sy = ((event.clientY - rect.top) * this.height) / Math.max(rect.height, 1);
        return toModel(this.vp, sx, sy);
    }
    labelAt(event) {
        const target = event.target;
        if (target instanceof SVGTextElement && target.classList.contains("dim-label")) {
            return target;
        }
        return null;
    }
    onPointerDown(event) {
        const label = this.labelAt(event);
        if (label !== null && label.dataset.pos !== undefined) {
            this.dragFrom = Number(label.dataset.pos);
            this.dragMoved = false;
            label.classList.add("dragging");
            this.refs.overview.setPointerCapture(event.pointerId);
            event.preventDefault();
        }
    }
    onPointerMove(event) {
        if (this.dragFrom !== null) {
            this.dragMoved = true;
            const over = document.elementFromPoint(event.clientX, event.clientY);
            for (const el of this.refs.overview.querySelectorAll(".dim-label.drop-target")) {
                el.classList.remove("drop-target");
            }
            if (over instanceof SVGTextElement &&
                over.classList.contains("dim-label") &&
                Number(over.dataset.pos) !== this.dragFrom) {
                over.classList.add("drop-target");
            }
            return;
        }
        if (this.anim !== null) {
            return;
        }
        const [mx, my] = this.eventToModel(event);
        this.setHover(hitTest(this.doc.tree, mx, my));
    }
    onPointerUp(event) {
        if (this.dragFrom !== null) {
            const from = this.dragFrom;
            this.dragFrom = null;
            for (const el of this.refs.overview.querySelectorAll(".dim-label.dragging, .dim-label.drop-target")) {
                el.classList.remove("dragging", "drop-target");
            }
            const over = document.elementFromPoint(event.clientX, event.clientY);
            if (this.dragMoved &&
                over instanceof SVGTextElement &&
                over.classList.contains("dim-label") &&
                over.dataset.pos !== undefined) {
                const to = Number(over.dataset.pos);
                if (to !== from) {
                    void this.client.reorder(from, to).then((outcome) => this.applyOutcome(outcome));
                }
            }
            return;
        }
        if (this.anim !== null) {
            return;
        }
        const [mx, my] = this.eventToModel(event);
        const hit = hitTest(this.doc.tree, mx, my);
        if (hit.kind === "edge" && hit.node.orderPos >= 0) {
            void this.client.drill(hit.node.id).then((outcome) => this.applyOutcome(outcome));
        }
    }
    /** Update the hover highlight and the detail panel for a hit. */
    setHover(hit) {
        clearChildren(this.hoverLayer);
        const node = hit.kind === "miss" ? null : hit.node;
        renderDetailPanel({ path: this.refs.detailPath, pct: this.refs.detailPct, shape: this.refs.detailShape }, this.doc, node);
        if (node === null) {
            return;
        }
        const points = node.polygon
            .map(([x, y]) => {
            const [sx, sy] = toScreen(this.vp, x, y);
            return `${sx.toFixed(2)},${sy.toFixed(2)}`;
        })
            .join(" ");
        this.hoverLayer.appendChild(svgEl("polygon", {
            points,
            fill: "none",
            stroke: hit.kind === "edge" ? hslCss(node.style.hue, 1.0, 0.3) : "#333",
            "stroke-width": hit.kind === "edge" ? "3" : "1.5",
            "stroke-dasharray": hit.kind === "edge" ? "" : "4 3",
            "pointer-events": "none",
        }));
    }
    /** Apply a command outcome: toast on refusal, animate on success. */
    applyOutcome(outcome) {
        if (!outcome.ok) {
            showToast(this.refs.toast, outcome.raw);
            return;
        }
        const oldDoc = this.doc;
        this.doc = outcome.document;
        if (outcome.transition === null) {
            this.render();
            return;
        }
        this.startTransition(oldDoc, outcome.document, outcome.transition);
    }
    /**
     * Begin the animated swap: the old scene cross-fades into the new one
     * over 500 ms while matched marbles travel under the stepper; appearing
     * and disappearing marbles fade in place.
     */
    startTransition(oldDoc, newDoc, transition) {
        if (this.anim !== null) {
            this.finalizeTransition();
        }
        clearChildren(this.hoverLayer);
        this.vp = viewportFor(newDoc.tree.polygon, this.width, this.height);
        const oldMarbles = collectMarbles(oldDoc.tree);
        const newMarbles = collectMarbles(newDoc.tree);
        const radiusSource = newMarbles.values().next().value ?? oldMarbles.values().next().value ?? null;
        const radius = radiusSource === null ? 0.015 : radiusSource.r;
        // Hide the old scene's own marbles; the animation layer re-creates
        // every old marble as either a mover or a fading ghost.
        const oldScene = this.sceneLayer;
        const oldMarbleGroup = oldScene.querySelector("g.marbles");
        if (oldMarbleGroup !== null) {
            oldMarbleGroup.setAttribute("display", "none");
        }
        const newScene = this.buildScene(newDoc, this.vp, false);
        newScene.setAttribute("opacity", "0");
        oldScene.after(newScene);
        const marbleLayer = svgEl("g", { class: "anim-marbles" });
        this.refs.overview.insertBefore(marbleLayer, this.hoverLayer);
        const starts = [];
        const targets = [];
        const ids = [];
        const movers = [];
        for (const [oldId, newId] of transition.matches) {
            const oldMarble = oldMarbles.get(oldId);
            const newMarble = newMarbles.get(newId);
            if (oldMarble === undefined || newMarble === undefined) {
                continue;
            }
            starts.push([oldMarble.x, oldMarble.y]);
            targets.push([newMarble.x, newMarble.y]);
            ids.push(newId);
            const [sx, sy] = toScreen(this.vp, oldMarble.x, oldMarble.y);
            const circle = svgEl("circle", {
                cx: sx.toFixed(2),
                cy: sy.toFixed(2),
                r: (newMarble.r * this.vp.scale).toFixed(2),
                fill: MARBLE_FILL,
            });
            circle.dataset.marbleId = String(newId);
            movers.push({ circle, index: movers.length });
            marbleLayer.appendChild(circle);
        }
        const fadeOutCircles = [];
        for (const oldId of transition.fadeOut) {
            const marble = oldMarbles.get(oldId);
            if (marble === undefined) {
                continue;
            }
            const [sx, sy] = toScreen(this.vp, marble.x, marble.y);
            const circle = svgEl("circle", {
                cx: sx.toFixed(2),
                cy: sy.toFixed(2),
                r: (marble.r * this.vp.scale).toFixed(2),
                fill: MARBLE_FILL,
                opacity: "1",
            });
            fadeOutCircles.push(circle);
            marbleLayer.appendChild(circle);
        }
        const fadeInCircles = [];
        for (const newId of transition.fadeIn) {
            const marble = newMarbles.get(newId);
            if (marble === undefined) {
                continue;
            }
            const [sx, sy] = toScreen(this.vp, marble.x, marble.y);
            const circle = svgEl("circle", {
                cx: sx.toFixed(2),
                cy: sy.toFixed(2),
                r: (marble.r * this.vp.scale).toFixed(2),
                fill: MARBLE_FILL,
                opacity: "0",
            });
            fadeInCircles.push(circle);
            marbleLayer.appendChild(circle);
        }
        this.anim = {
            oldScene,
            newScene,
            marbleLayer,
            movers,
            sim: starts.length > 0 ? makeSimState(starts, targets, radius, ids) : null,
            constants: transition.constants,
            fadeOutCircles,
            fadeInCircles,
            startTime: null,
        };
        this.sceneLayer = newScene;
        requestAnimationFrame(this.animFrame);
    }
    /** Tear the animation layers down and rebuild statically. */
    finalizeTransition() {
        const anim = this.anim;
        if (anim === null) {
            return;
        }
        this.anim = null;
        anim.oldScene.remove();
        anim.marbleLayer.remove();
        this.render();
    }
}
