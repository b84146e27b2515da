export class SessionClient {
    constructor(baseUrl = "") {
        this.baseUrl = baseUrl;
        /** Last document applied; null before the first fetch. */
        this.document = null;
        this.queue = Promise.resolve();
    }
    get revision() {
        return this.document === null ? null : this.document.revision;
    }
    async fetchLayout() {
        const res = await fetch(`${this.baseUrl}/api/layout`);
        if (!res.ok) {
            throw new Error(`layout fetch failed with status ${res.status}`);
        }
        this.document = (await res.json());
        return this.document;
    }
    async detail(nodeId) {
        const res = await fetch(`${this.baseUrl}/api/detail/${nodeId}`);
        const payload = (await res.json());
        if (!res.ok) {
            const err = payload;
            throw new Error(`${err.error}: ${err.message}`);
        }
        return payload;
    }
    /** Move the dimension at visible position `from` to visible position `to`. */
    reorder(from, to) {
        return this.command("/api/reorder", { from, to });
    }
    /** Hide or reveal a dimension by its dataset column index. */
    hide(dim, hidden) {
        return this.command("/api/hide", { dim, hidden });
    }
    /** Restrict the view to the subset under a node. */
    drill(nodeId) {
        return this.command("/api/drill", { nodeId });
    }
    /** Undo the most recent drill. */
    back() {
        return this.command("/api/back", {});
    }
    command(path, body) {
        const run = async () => {
            const res = await fetch(`${this.baseUrl}${path}`, {
                method: "POST",
                headers: { "Content-Type": "application/json" },
                body: JSON.stringify(body),
            });
            if (!res.ok) {
                const raw = await res.text();
                const error = JSON.parse(raw);
                return { ok: false, status: res.status, error, raw };
            }
            const payload = (await res.json());
            const expected = this.document === null ? null : this.document.revision + 1;
            if (expected !== null && payload.revision !== expected) {
                // Stale view: resynchronize wholesale instead of animating.
                const fresh = await this.fetchLayout();
                return { ok: true, document: fresh, transition: null };
            }
            this.document = payload.document;
            return { ok: true, document: payload.document, transition: payload.transition };
        };
        const next = this.queue.then(run, run);
        this.queue = next.catch(() => undefined);
        return next;
    }
}
/**
 * Top-level child whose value matches `valueName` of the named dimension,
 * or null when that dimension does not lead the cut order.
 */
export function findChildByValue(doc, dimensionName, valueName) {
    const entry = doc.legend.find((e) => e.name === dimensionName);
    if (entry === undefined) {
        return null;
    }
    for (const child of doc.tree.children) {
        if (child.dimension === entry.dimension && child.value === valueName) {
            return child;
        }
    }
    return null;
}
