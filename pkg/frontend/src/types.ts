/**
 * JSON shapes exchanged with the session server. Field names and value
 * conventions match the server's serialization exactly; these interfaces
 * only describe the wire format, they never transform it.
 */

/** A point or vector as a `[x, y]` pair in model coordinates. */
export type Vec2 = [number, number];

/** A line segment as a pair of endpoints. */
export type Segment = [Vec2, Vec2];

export interface ValueJson {
  name: string;
  lightness: number;
}

export interface LegendEntryJson {
  /** Dataset column index of this dimension. */
  dimension: number;
  name: string;
  hidden: boolean;
  /** Null while the dimension is hidden. */
  hue: number | null;
  /** Null while the dimension is hidden. */
  strokeWidth: number | null;
  values: ValueJson[];
}

export interface BreadcrumbEntryJson {
  /** Dimension NAME (unlike node.dimension, which is an index). */
  dimension: string;
  value: string;
}

export interface StyleJson {
  hue: number;
  saturation: number;
  lightness: number;
  strokeWidth: number;
}

export interface MarbleJson {
  id: number;
  x: number;
  y: number;
  r: number;
  group: number;
}

export interface NodeJson {
  id: number;
  /** Depth in cut order; -1 for the root. */
  orderPos: number;
  /** Dataset column index of the dimension this node's value belongs to; null for the root. */
  dimension: number | null;
  /** Value name; null for the root. */
  value: string | null;
  /** Index of the value within its dimension; null for the root. */
  valueIndex: number | null;
  count: number;
  fraction: number;
  /** Clockwise convex polygon. */
  polygon: Vec2[];
  style: StyleJson;
  /** Edges introduced by this node: the outline for the root, cut chords otherwise. */
  edges: Segment[];
  marbles: MarbleJson[];
  children: NodeJson[];
}

export interface DocumentJson {
  revision: number;
  sides: number;
  seed: number;
  legend: LegendEntryJson[];
  breadcrumb: BreadcrumbEntryJson[];
  tree: NodeJson;
}

export interface SimConstantsJson {
  kAttract: number;
  vMax: number;
  blend: number;
  separationMargin: number;
  delta: number;
  dt: number;
  maxSteps: number;
}

export interface TransitionJson {
  /** Pairs of [oldMarbleId, newMarbleId] that persist across the command. */
  matches: Array<[number, number]>;
  /** New-document marble ids that appear. */
  fadeIn: number[];
  /** Old-document marble ids that disappear. */
  fadeOut: number[];
  constants: SimConstantsJson;
}

export interface CommandResponseJson {
  revision: number;
  document: DocumentJson;
  transition: TransitionJson;
}

export interface ErrorJson {
  error: string;
  message: string;
}

export interface DetailJson {
  nodeId: number;
  revision: number;
  percentage: number;
  valuePath: Array<[string, string]>;
}
