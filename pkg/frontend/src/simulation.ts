/**
 * Marble transition dynamics: the same constants and update rule the server
 * reports in each command's transition block, so animated positions evolve
 * the way the engine's own stepper would. Marbles attract toward their
 * targets, shove close neighbours apart with a swirl so opposed pairs slide
 * past each other, and settle one by one once their target spot is free.
 */
import type { SimConstantsJson, Vec2 } from "./types.js";

export const DEFAULT_CONSTANTS: SimConstantsJson = {
  kAttract: 4.0,
  vMax: 0.5,
  blend: 0.35,
  separationMargin: 0.002,
  delta: 0.002,
  dt: 1 / 60,
  maxSteps: 600,
};

/** Duration of the cross-fade between the old and new scene, in ms. */
export const FADE_MS = 500;

/** Fraction of the cross-fade elapsed, clamped to [0, 1]. */
export function fadeProgress(elapsedMs: number): number {
  if (elapsedMs <= 0) {
    return 0;
  }
  if (elapsedMs >= FADE_MS) {
    return 1;
  }
  return elapsedMs / FADE_MS;
}

export interface SimState {
  positions: Vec2[];
  velocities: Vec2[];
  targets: Vec2[];
  settled: boolean[];
  radius: number;
  ids: number[];
  steps: number;
  /** True when the run was capped and positions were snapped to targets. */
  snapped: boolean;
}

export function makeSimState(
  starts: Vec2[],
  targets: Vec2[],
  radius: number,
  ids?: number[],
): SimState {
  if (starts.length !== targets.length) {
    throw new Error("starts and targets must pair up");
  }
  if (ids !== undefined && ids.length !== starts.length) {
    throw new Error("ids must pair up with starts");
  }
  return {
    positions: starts.map(([x, y]) => [x, y] as Vec2),
    velocities: starts.map(() => [0, 0] as Vec2),
    targets: targets.map(([x, y]) => [x, y] as Vec2),
    settled: starts.map(() => false),
    radius,
    ids: ids !== undefined ? ids.slice() : starts.map((_, i) => i),
    steps: 0,
    snapped: false,
  };
}

export function allSettled(state: SimState): boolean {
  return state.settled.every(Boolean);
}

/** Smallest center-to-center distance, or +Infinity below two marbles. */
export function minPairwise(state: SimState): number {
  const pos = state.positions;
  const n = pos.length;
  if (n < 2) {
    return Infinity;
  }
  let best = Infinity;
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      const d = Math.hypot(pos[i][0] - pos[j][0], pos[i][1] - pos[j][1]);
      if (d < best) {
        best = d;
      }
    }
  }
  return best;
}

function clampNorm(x: number, y: number, limit: number): Vec2 {
  const norm = Math.hypot(x, y);
  if (norm > limit) {
    const f = limit / norm;
    return [x * f, y * f];
  }
  return [x, y];
}

/**
 * Push every overlapping pair back to just over 2r. Settled marbles hold
 * still, so an unsettled partner absorbs the whole correction; contacts
 * that survive eight sweeps wake both marbles so a wedged pair cannot
 * oscillate forever. Pairs are gathered from a positions snapshot in
 * row-major order, then re-checked against live positions as applied.
 */
function projectOverlaps(state: SimState): void {
  const pos = state.positions;
  const n = pos.length;
  if (n < 2) {
    return;
  }
  const twoR = 2 * state.radius;
  const slack = 1e-9;
  const tol = 1e-10;
  for (let sweep = 0; sweep < 128; sweep++) {
    const pairs: Array<[number, number]> = [];
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const d = Math.hypot(pos[i][0] - pos[j][0], pos[i][1] - pos[j][1]);
        if (d < twoR - tol) {
          pairs.push([i, j]);
        }
      }
    }
    if (pairs.length === 0) {
      break;
    }
    for (const [i, j] of pairs) {
      if (state.settled[i] && state.settled[j]) {
        continue;
      }
      const dx = pos[i][0] - pos[j][0];
      const dy = pos[i][1] - pos[j][1];
      const dd = Math.hypot(dx, dy);
      if (dd >= twoR - tol) {
        continue;
      }
      if (sweep >= 8) {
        state.settled[i] = false;
        state.settled[j] = false;
      }
      let ux: number;
      let uy: number;
      if (dd < 1e-12) {
        ux = 1;
        uy = 0;
      } else {
        ux = dx / dd;
        uy = dy / dd;
      }
      const push = twoR - dd + slack;
      if (state.settled[j]) {
        pos[i][0] += push * ux;
        pos[i][1] += push * uy;
      } else if (state.settled[i]) {
        pos[j][0] -= push * ux;
        pos[j][1] -= push * uy;
      } else {
        pos[i][0] += 0.5 * push * ux;
        pos[i][1] += 0.5 * push * uy;
        pos[j][0] -= 0.5 * push * ux;
        pos[j][1] -= 0.5 * push * uy;
      }
    }
  }
}

/** Advance one frame: attract, wake, repel, integrate, separate, settle. */
export function stepSimulation(
  state: SimState,
  k: SimConstantsJson = DEFAULT_CONSTANTS,
): SimState {
  const pos = state.positions;
  const n = pos.length;
  if (n === 0 || allSettled(state)) {
    return state;
  }

  const desired: Vec2[] = new Array(n);
  for (let i = 0; i < n; i++) {
    desired[i] = clampNorm(
      k.kAttract * (state.targets[i][0] - pos[i][0]),
      k.kAttract * (state.targets[i][1] - pos[i][1]),
      k.vMax,
    );
  }

  const reach = 2 * state.radius + k.separationMargin;
  const dist: number[][] = new Array(n);
  for (let i = 0; i < n; i++) {
    dist[i] = new Array(n);
    for (let j = 0; j < n; j++) {
      dist[i][j] =
        i === j ? Infinity : Math.hypot(pos[i][0] - pos[j][0], pos[i][1] - pos[j][1]);
    }
  }

  // A settled marble wakes when an unsettled mover enters its contact zone;
  // otherwise frozen neighbours could pocket the last movers in a repulsion
  // equilibrium short of their targets. The settled flags are snapshotted
  // first so one wake cannot cascade into others within the same frame.
  const wasSettled = state.settled.slice();
  for (let i = 0; i < n; i++) {
    if (!wasSettled[i]) {
      continue;
    }
    for (let j = 0; j < n; j++) {
      if (dist[i][j] < reach && !wasSettled[j]) {
        state.settled[i] = false;
        break;
      }
    }
  }

  const repulsion: Vec2[] = new Array(n);
  for (let i = 0; i < n; i++) {
    let rx = 0;
    let ry = 0;
    for (let j = 0; j < n; j++) {
      const d = dist[i][j];
      if (d >= reach) {
        continue;
      }
      const safe = d < 1e-12 ? 1e-12 : d;
      const ux = (pos[i][0] - pos[j][0]) / safe;
      const uy = (pos[i][1] - pos[j][1]) / safe;
      // Radial push plus half a fixed-chirality tangential component, so
      // head-on marbles swirl around each other instead of stalling.
      const strength = k.kAttract * (reach - d);
      rx += (ux - 0.5 * uy) * strength;
      ry += (uy + 0.5 * ux) * strength;
    }
    repulsion[i] = [rx, ry];
  }

  for (let i = 0; i < n; i++) {
    if (state.settled[i]) {
      state.velocities[i] = [0, 0];
      continue;
    }
    const vel = clampNorm(
      (1 - k.blend) * state.velocities[i][0] + k.blend * (desired[i][0] + repulsion[i][0]),
      (1 - k.blend) * state.velocities[i][1] + k.blend * (desired[i][1] + repulsion[i][1]),
      k.vMax,
    );
    state.velocities[i] = vel;
    pos[i][0] += vel[0] * k.dt;
    pos[i][1] += vel[1] * k.dt;
  }

  projectOverlaps(state);

  // Settle pass in ascending index order: a marble snaps exactly onto its
  // target once it is within delta and no other marble blocks the spot.
  const twoR = 2 * state.radius;
  for (let i = 0; i < n; i++) {
    if (state.settled[i]) {
      continue;
    }
    const [tx, ty] = state.targets[i];
    if (Math.hypot(pos[i][0] - tx, pos[i][1] - ty) >= k.delta) {
      continue;
    }
    let free = true;
    for (let j = 0; j < n; j++) {
      if (j === i) {
        continue;
      }
      if (Math.hypot(pos[j][0] - tx, pos[j][1] - ty) < twoR - 1e-12) {
        free = false;
        break;
      }
    }
    if (free) {
      pos[i][0] = tx;
      pos[i][1] = ty;
      state.velocities[i] = [0, 0];
      state.settled[i] = true;
    }
  }

  state.steps += 1;
  return state;
}

export interface SimResult {
  steps: number;
  snapped: boolean;
  /** Smallest pairwise distance observed at any recorded frame. */
  minPairwise: number;
  /** Per-frame positions (initial frame included) when tracing is on. */
  trace: Vec2[][];
}

/**
 * Run to completion or to the step cap; a capped run snaps every marble to
 * its exact target so the final frame always matches the new document.
 */
export function runSimulation(
  state: SimState,
  k: SimConstantsJson = DEFAULT_CONSTANTS,
  recordTrace = false,
): SimResult {
  const result: SimResult = {
    steps: 0,
    snapped: false,
    minPairwise: minPairwise(state),
    trace: [],
  };
  if (recordTrace) {
    result.trace.push(state.positions.map(([x, y]) => [x, y] as Vec2));
  }
  while (!allSettled(state) && state.steps < k.maxSteps) {
    stepSimulation(state, k);
    const d = minPairwise(state);
    if (d < result.minPairwise) {
      result.minPairwise = d;
    }
    if (recordTrace) {
      result.trace.push(state.positions.map(([x, y]) => [x, y] as Vec2));
    }
  }
  result.steps = state.steps;
  if (!allSettled(state)) {
    snapToTargets(state);
    result.snapped = true;
    if (recordTrace) {
      result.trace.push(state.positions.map(([x, y]) => [x, y] as Vec2));
    }
  }
  return result;
}

/** Force the terminal frame: every marble exactly on target, at rest. */
export function snapToTargets(state: SimState): void {
  for (let i = 0; i < state.positions.length; i++) {
    state.positions[i] = [state.targets[i][0], state.targets[i][1]];
    state.velocities[i] = [0, 0];
    state.settled[i] = true;
  }
  state.snapped = true;
}
