/**
 * Pointer resolution over a layout document. This is a direct port of the
 * server-side rule so hover feedback never needs a network round trip; the
 * fixture suite in test/hittest.spec.ts holds the two implementations to
 * identical answers.
 */
import { containsPoint, maxVertexNorm, segmentDistance } from "./geometry.js";
import type { NodeJson } from "./types.js";

export type Hit =
  | { kind: "leaf"; node: NodeJson }
  | { kind: "edge"; node: NodeJson }
  | { kind: "miss" };

/** Preorder walk: a node before its children, children in stored order. */
export function* iterNodes(node: NodeJson): Generator<NodeJson> {
  yield node;
  for (const child of node.children) {
    yield* iterNodes(child);
  }
}

/** Default hover tolerance: 1% of the outline's largest vertex radius. */
export function defaultEdgeTolerance(root: NodeJson): number {
  return 0.01 * maxVertexNorm(root.polygon);
}

/**
 * Resolve a pointer position in model coordinates. Edge hovers win over
 * region containment; among edge candidates the deepest node wins, ties
 * broken toward the smaller value index and then toward document order.
 */
export function hitTest(root: NodeJson, x: number, y: number, edgeTolerance?: number): Hit {
  const tol = edgeTolerance ?? defaultEdgeTolerance(root);

  let best: NodeJson | null = null;
  for (const node of iterNodes(root)) {
    if (best !== null) {
      const nodeKey: [number, number] = [node.orderPos, -(node.valueIndex ?? 0)];
      const bestKey: [number, number] = [best.orderPos, -(best.valueIndex ?? 0)];
      if (
        nodeKey[0] < bestKey[0] ||
        (nodeKey[0] === bestKey[0] && nodeKey[1] <= bestKey[1])
      ) {
        continue;
      }
    }
    for (const [[ax, ay], [bx, by]] of node.edges) {
      if (segmentDistance(ax, ay, bx, by, x, y) <= tol) {
        best = node;
        break;
      }
    }
  }
  if (best !== null) {
    return { kind: "edge", node: best };
  }

  if (!containsPoint(root.polygon, x, y)) {
    return { kind: "miss" };
  }
  let node = root;
  while (node.children.length > 0) {
    let next: NodeJson | null = null;
    for (const child of node.children) {
      if (containsPoint(child.polygon, x, y)) {
        next = child;
        break;
      }
    }
    if (next === null) {
      // The point sits in a zero-width band between siblings.
      return { kind: "miss" };
    }
    node = next;
  }
  return { kind: "leaf", node };
}

/** Root-to-node chain (inclusive) for a node id, or null when absent. */
export function pathToNode(root: NodeJson, nodeId: number): NodeJson[] | null {
  if (root.id === nodeId) {
    return [root];
  }
  for (const child of root.children) {
    const sub = pathToNode(child, nodeId);
    if (sub !== null) {
      return [root, ...sub];
    }
  }
  return null;
}

/** Find a node by id anywhere in the tree. */
export function findNode(root: NodeJson, nodeId: number): NodeJson | null {
  for (const node of iterNodes(root)) {
    if (node.id === nodeId) {
      return node;
    }
  }
  return null;
}
