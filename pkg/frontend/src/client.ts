/**
 * Typed access to the session API. Commands are queued so at most one
 * request is in flight and responses apply strictly in order. When a
 * response's revision is not the expected successor (another client
 * advanced the shared session), the whole layout is refetched and the
 * transition for that command is dropped.
 */
import type {
  CommandResponseJson,
  DetailJson,
  DocumentJson,
  ErrorJson,
  NodeJson,
  TransitionJson,
} from "./types.js";

export type CommandOutcome =
  | { ok: true; document: DocumentJson; transition: TransitionJson | null }
  | {
      ok: false;
      status: number;
      error: ErrorJson;
      /** The response body exactly as the server sent it. */
      raw: string;
    };

export class SessionClient {
  /** Last document applied; null before the first fetch. */
  document: DocumentJson | null = null;

  private queue: Promise<unknown> = Promise.resolve();

  constructor(private readonly baseUrl: string = "") {}

  get revision(): number | null {
    return this.document === null ? null : this.document.revision;
  }

  async fetchLayout(): Promise<DocumentJson> {
    const res = await fetch(`${this.baseUrl}/api/layout`);
    if (!res.ok) {
      throw new Error(`layout fetch failed with status ${res.status}`);
    }
    this.document = (await res.json()) as DocumentJson;
    return this.document;
  }

  async detail(nodeId: number): Promise<DetailJson> {
    const res = await fetch(`${this.baseUrl}/api/detail/${nodeId}`);
    const payload = (await res.json()) as DetailJson | ErrorJson;
    if (!res.ok) {
      const err = payload as ErrorJson;
      throw new Error(`${err.error}: ${err.message}`);
    }
    return payload as DetailJson;
  }

  /** Move the dimension at visible position `from` to visible position `to`. */
  reorder(from: number, to: number): Promise<CommandOutcome> {
    return this.command("/api/reorder", { from, to });
  }

  /** Hide or reveal a dimension by its dataset column index. */
  hide(dim: number, hidden: boolean): Promise<CommandOutcome> {
    return this.command("/api/hide", { dim, hidden });
  }

  /** Restrict the view to the subset under a node. */
  drill(nodeId: number): Promise<CommandOutcome> {
    return this.command("/api/drill", { nodeId });
  }

  /** Undo the most recent drill. */
  back(): Promise<CommandOutcome> {
    return this.command("/api/back", {});
  }

  private command(path: string, body: Record<string, unknown>): Promise<CommandOutcome> {
    const run = async (): Promise<CommandOutcome> => {
      const res = await fetch(`${this.baseUrl}${path}`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      });
      if (!res.ok) {
        const raw = await res.text();
        const error = JSON.parse(raw) as ErrorJson;
        return { ok: false, status: res.status, error, raw };
      }
      const payload = (await res.json()) as CommandResponseJson;
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
export function findChildByValue(
  doc: DocumentJson,
  dimensionName: string,
  valueName: string,
): NodeJson | null {
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
