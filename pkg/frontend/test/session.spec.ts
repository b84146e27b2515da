/**
 * End-to-end session conformance against a real server process. The
 * scripted command sequence (reorder, three drills, back) must leave the
 * client holding a document identical to the engine-computed expectation,
 * and the client must honour its error and resynchronization contracts.
 */
import { spawn, type ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { SessionClient, findChildByValue, type CommandOutcome } from "../src/client.js";
import type { DocumentJson } from "../src/types.js";

interface ScriptCommand {
  op: "reorder" | "drill" | "back";
  from?: number;
  to?: number;
  dimension?: string;
  value?: string;
}

interface SessionFixture {
  input: string;
  seed: number;
  commands: ScriptCommand[];
  expected: DocumentJson;
}

interface HitFixture {
  documents: DocumentJson[];
}

const here = dirname(fileURLToPath(import.meta.url));
const repoRoot = resolve(here, "../..");
const fixture = JSON.parse(
  readFileSync(resolve(here, "fixtures/scripted_session.json"), "utf-8"),
) as SessionFixture;
const hitFixture = JSON.parse(
  readFileSync(resolve(here, "fixtures/hittest_cases.json"), "utf-8"),
) as HitFixture;

let server: ChildProcess | undefined;
let baseUrl = "";
let client: SessionClient;

describe("live session", () => {
  beforeAll(async () => {
    server = spawn(
      "python3",
      [
        "-m",
        "hidmap",
        "serve",
        "--input",
        fixture.input,
        "--seed",
        String(fixture.seed),
        "--port",
        "0",
      ],
      { cwd: repoRoot, stdio: ["ignore", "pipe", "pipe"] },
    );
    baseUrl = await new Promise<string>((resolveUrl, reject) => {
      let buffer = "";
      const timer = setTimeout(
        () => reject(new Error(`server did not announce a port; stderr so far:\n${buffer}`)),
        30_000,
      );
      server?.stderr?.on("data", (chunk: Buffer) => {
        buffer += chunk.toString();
        const match = buffer.match(/serving on (http:\/\/127\.0\.0\.1:\d+)\//);
        if (match !== null) {
          clearTimeout(timer);
          resolveUrl(match[1]);
        }
      });
      server?.on("exit", (code) => {
        clearTimeout(timer);
        reject(new Error(`server exited early with code ${code}; stderr:\n${buffer}`));
      });
    });
    client = new SessionClient(baseUrl);
  });

  afterAll(() => {
    server?.kill("SIGTERM");
  });

  it("serves the same initial document the fixtures were exported from", async () => {
    const doc = await client.fetchLayout();
    expect(doc.revision).toBe(0);
    expect(doc).toEqual(hitFixture.documents[0]);
  });

  it("reports node details consistent with the document", async () => {
    const doc = client.document as DocumentJson;
    const child = doc.tree.children[0];
    const detail = await client.detail(child.id);
    expect(detail.nodeId).toBe(child.id);
    expect(detail.revision).toBe(doc.revision);
    expect(detail.percentage).toBe(100 * child.fraction);
    expect(detail.valuePath.length).toBe(1);
    const dimName = doc.legend.find((e) => e.dimension === child.dimension)?.name;
    expect(detail.valuePath[0][0]).toBe(dimName);
    expect(detail.valuePath[0][1]).toBe(child.value);
  });

  it("ends the scripted session on the engine-computed document", async () => {
    for (const command of fixture.commands) {
      let outcome: CommandOutcome;
      if (command.op === "reorder") {
        outcome = await client.reorder(command.from as number, command.to as number);
      } else if (command.op === "drill") {
        const doc = client.document as DocumentJson;
        const target = findChildByValue(
          doc,
          command.dimension as string,
          command.value as string,
        );
        expect(target, `drill target ${command.dimension}=${command.value}`).not.toBeNull();
        outcome = await client.drill((target as { id: number }).id);
      } else {
        outcome = await client.back();
      }
      expect(outcome.ok, `command ${JSON.stringify(command)} was refused`).toBe(true);
      if (outcome.ok) {
        expect(outcome.transition).not.toBeNull();
        expect(Array.isArray(outcome.transition?.matches)).toBe(true);
      }
    }
    expect(client.revision).toBe(fixture.expected.revision);
    expect(client.document).toEqual(fixture.expected);
  });

  it("leaves the document untouched when the server refuses a command", async () => {
    const before = client.document;
    const outcome = await client.reorder(99, 0);
    expect(outcome.ok).toBe(false);
    if (!outcome.ok) {
      expect(outcome.status).toBe(400);
      expect(outcome.error.error).toBe("invalid-position");
      expect(typeof outcome.error.message).toBe("string");
      // The toast shows this exact payload; it must be the raw bytes.
      expect(JSON.parse(outcome.raw)).toEqual(outcome.error);
    }
    expect(client.document).toBe(before);
    expect(client.document).toEqual(fixture.expected);
  });

  it("maps unknown drill targets to a 404 without state changes", async () => {
    const outcome = await client.drill(999999999);
    expect(outcome.ok).toBe(false);
    if (!outcome.ok) {
      expect(outcome.status).toBe(404);
      expect(outcome.error.error).toBe("unknown-node");
    }
    expect(client.document).toEqual(fixture.expected);
  });

  it("refetches the full layout when its revision goes stale", async () => {
    const doc = client.document as DocumentJson;
    const visible = doc.legend.filter((e) => !e.hidden);
    expect(visible.length).toBeGreaterThan(1);
    // Another client advances the session out of band.
    const dim = visible[visible.length - 1].dimension;
    const res = await fetch(`${baseUrl}/api/hide`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ dim, hidden: true }),
    });
    expect(res.ok).toBe(true);
    const outOfBand = (await res.json()) as { revision: number };
    expect(outOfBand.revision).toBe(doc.revision + 1);

    // The stale client's next command succeeds server-side but must come
    // back as a transition-free full resync.
    const outcome = await client.back();
    expect(outcome.ok).toBe(true);
    if (outcome.ok) {
      expect(outcome.transition).toBeNull();
      expect(outcome.document.revision).toBe(doc.revision + 2);
    }
    const independent = await fetch(`${baseUrl}/api/layout`);
    expect(await independent.json()).toEqual(client.document);
  });

  it("keeps at most one command in flight and applies responses in order", async () => {
    const results = await Promise.all([
      client.reorder(0, 1),
      client.reorder(0, 1),
      client.reorder(0, 1),
    ]);
    const revisions = results.map((r) => (r.ok ? r.document.revision : -1));
    expect(revisions[0]).toBeGreaterThan(0);
    expect(revisions[1]).toBe(revisions[0] + 1);
    expect(revisions[2]).toBe(revisions[1] + 1);
    const live = await fetch(`${baseUrl}/api/layout`);
    expect(await live.json()).toEqual(client.document);
  });
});
