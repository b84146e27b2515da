"""Countable marble glyphs: per-leaf counts, grouped placement, greedy
reassignment between layouts, and the agent-based transition stepper.

Marbles approximate each leaf's share of the whole map (one marble per
percent by default); they do not correspond to individual data rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .geometry import ConvexPolygon, Point, contains_point, erode

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Marble:
    id: int
    position: Point
    radius: float
    group_index: int


@dataclass(frozen=True)
class SimConstants:
    """Stepper constants; lengths are in model units (circumradius 1)."""

    k_attract: float = 4.0          # 1/s: pull toward target
    v_max: float = 0.5              # model units per second
    blend: float = 0.35             # velocity low-pass factor
    separation_margin: float = 0.002  # 0.1 * marble radius
    delta: float = 0.002            # settle distance
    dt: float = 1.0 / 60.0
    max_steps: int = 600

    def __post_init__(self):
        for name in ("k_attract", "v_max", "blend", "separation_margin",
                     "delta", "dt", "max_steps"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def to_dict(self) -> dict:
        return {
            "kAttract": self.k_attract,
            "vMax": self.v_max,
            "blend": self.blend,
            "separationMargin": self.separation_margin,
            "delta": self.delta,
            "dt": self.dt,
            "maxSteps": self.max_steps,
        }


@dataclass(frozen=True)
class Matching:
    """Result of pairing old marble positions with new ones."""

    matches: tuple[tuple[int, int], ...]  # (old index, new index)
    fade_out: tuple[int, ...]             # unmatched old indices
    fade_in: tuple[int, ...]              # unmatched new indices


@dataclass(frozen=True)
class TransitionPlan:
    """Serializable animation recipe: id-based matching plus fade sets."""

    matches: tuple[tuple[int, int], ...]  # (old marble id, new marble id)
    fade_in: tuple[int, ...]
    fade_out: tuple[int, ...]
    constants: SimConstants = SimConstants()

    def to_dict(self) -> dict:
        return {
            "matches": [list(m) for m in self.matches],
            "fadeIn": list(self.fade_in),
            "fadeOut": list(self.fade_out),
            "constants": self.constants.to_dict(),
        }


def marble_count(fraction: float, total: int = 100) -> int:
    """Half-up rounding of total * fraction; a leaf under half a unit of
    share gets no marble."""
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction out of [0,1]: {fraction}")
    if total < 1:
        raise ValueError("total must be >= 1")
    return int(math.floor(total * fraction + 0.5))


def _rng(seed: int, node_id: int) -> np.random.Generator:
    seq = np.random.SeedSequence([seed & MASK64, node_id & MASK64])
    return np.random.Generator(np.random.PCG64(seq))


# Quincunx cluster offsets in units of the center-to-corner spacing: dice-five
# with the center first so short groups stay compact.
_CLUSTER = (
    (0.0, 0.0),
    (math.sqrt(0.5), math.sqrt(0.5)),
    (-math.sqrt(0.5), math.sqrt(0.5)),
    (-math.sqrt(0.5), -math.sqrt(0.5)),
    (math.sqrt(0.5), -math.sqrt(0.5)),
)

_GROUP_SIZE = 5
_MAX_ATTEMPTS = 200


def _min_dist(p: Point, others: Sequence[Point]) -> float:
    if not others:
        return math.inf
    return min(math.hypot(p.x - q.x, p.y - q.y) for q in others)


def place_marbles(
    poly: ConvexPolygon,
    count: int,
    radius: float,
    seed: int,
    node_id: int = 0,
    first_id: int = 0,
) -> list[Marble]:
    """Place `count` marbles inside poly in quincunx groups of five.

    Every marble keeps distance >= radius from the polygon boundary when the
    polygon is thick enough to allow it. Groups are rejection-sampled as
    rigid clusters (spacing 2.2 * radius); after _MAX_ATTEMPTS failures a
    group falls back to individual placement, and after as many further
    failures the pairwise-overlap constraint is relaxed marble by marble.
    A polygon too thin to erode by the full radius keeps marble centers as
    deep inside as erosion allows and lets the discs overhang the boundary:
    the count is the quantity being communicated, so marbles are never
    dropped. Centers always stay inside the polygon.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if count == 0:
        return []
    inner = erode(poly, radius)
    shrink = radius
    while inner is None and shrink > radius * 1e-6:
        shrink *= 0.5
        inner = erode(poly, shrink)
    if inner is None:
        inner = poly
    rng = _rng(seed, node_id)
    xs = [v.x for v in inner]
    ys = [v.y for v in inner]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    spacing = 2.2 * radius

    def sample() -> Point:
        return Point(rng.uniform(x0, x1), rng.uniform(y0, y1))

    placed: list[Point] = []
    groups: list[int] = []
    full, rest = divmod(count, _GROUP_SIZE)
    sizes = [_GROUP_SIZE] * full + ([rest] if rest else [])
    for g, size in enumerate(sizes):
        cluster: Optional[list[Point]] = None
        for _ in range(_MAX_ATTEMPTS):
            anchor = sample()
            pts = [
                Point(anchor.x + spacing * dx, anchor.y + spacing * dy)
                for dx, dy in _CLUSTER[:size]
            ]
            if all(contains_point(inner, q) for q in pts) and all(
                _min_dist(q, placed) >= 2 * radius for q in pts
            ):
                cluster = pts
                break
        if cluster is None:
            cluster = []
            for _ in range(size):
                pt: Optional[Point] = None
                for _ in range(_MAX_ATTEMPTS):
                    q = sample()
                    if contains_point(inner, q) and _min_dist(
                        q, placed + cluster
                    ) >= 2 * radius:
                        pt = q
                        break
                if pt is None:
                    # Relax overlap, never containment.
                    for _ in range(_MAX_ATTEMPTS):
                        q = sample()
                        if contains_point(inner, q):
                            pt = q
                            break
                if pt is None:
                    # Vertex average of a convex region is always inside.
                    pt = Point(
                        sum(v.x for v in inner) / len(inner),
                        sum(v.y for v in inner) / len(inner),
                    )
                cluster.append(pt)
        placed.extend(cluster)
        groups.extend([g] * size)

    return [
        Marble(id=first_id + i, position=p, radius=radius, group_index=groups[i])
        for i, p in enumerate(placed)
    ]


def assign_targets(old: Sequence[Point], new: Sequence[Point]) -> Matching:
    """Greedy global matching by ascending distance.

    All old x new pairs are sorted by Euclidean distance (ties broken by
    index pair, so the result is deterministic); a pair is accepted when
    both endpoints are still free. Leftover old points fade out, leftover
    new points fade in.
    """
    pairs = sorted(
        (math.hypot(o.x - q.x, o.y - q.y), i, j)
        for i, o in enumerate(old)
        for j, q in enumerate(new)
    )
    free_old = set(range(len(old)))
    free_new = set(range(len(new)))
    matches: list[tuple[int, int]] = []
    for _, i, j in pairs:
        if i in free_old and j in free_new:
            matches.append((i, j))
            free_old.discard(i)
            free_new.discard(j)
    return Matching(
        matches=tuple(matches),
        fade_out=tuple(sorted(free_old)),
        fade_in=tuple(sorted(free_new)),
    )


@dataclass
class SimState:
    """Mutable stepper state for the marbles that move in a transition.

    Fading marbles hold still and are not part of the collision set; only
    matched movers live here.
    """

    positions: np.ndarray   # (N, 2)
    velocities: np.ndarray  # (N, 2)
    targets: np.ndarray     # (N, 2)
    settled: np.ndarray     # (N,) bool
    radius: float
    ids: tuple[int, ...] = ()
    steps: int = 0
    snapped: bool = False

    @property
    def all_settled(self) -> bool:
        return bool(self.settled.all())

    def min_pairwise(self) -> float:
        n = len(self.positions)
        if n < 2:
            return math.inf
        diff = self.positions[:, None, :] - self.positions[None, :, :]
        d = np.hypot(diff[..., 0], diff[..., 1])
        return float(d[~np.eye(n, dtype=bool)].min())


def make_sim_state(
    starts: Sequence[Point],
    targets: Sequence[Point],
    radius: float,
    ids: Sequence[int] = (),
) -> SimState:
    if len(starts) != len(targets):
        raise ValueError("starts and targets must pair up")
    n = len(starts)
    return SimState(
        positions=np.array(starts, dtype=float).reshape(n, 2),
        velocities=np.zeros((n, 2)),
        targets=np.array(targets, dtype=float).reshape(n, 2),
        settled=np.zeros(n, dtype=bool),
        radius=radius,
        ids=tuple(ids) if ids else tuple(range(n)),
    )


def _clamp_rows(v: np.ndarray, limit: float) -> np.ndarray:
    norms = np.hypot(v[:, 0], v[:, 1])
    factor = np.ones_like(norms)
    over = norms > limit
    factor[over] = limit / norms[over]
    return v * factor[:, None]


def _project_overlaps(state: SimState) -> None:
    """Push apart any overlapping pair to just over 2 * radius.

    Settled marbles hold still, so a mover takes the whole correction when
    its partner has settled. Pairs are re-selected per pass until a pass
    finds nothing left to fix. A mover wedged between two settled marbles
    would ping-pong forever, so stubborn contacts wake the settled partner:
    it yields a little and re-settles once the intruder passes.
    """
    pos = state.positions
    n = len(pos)
    if n < 2:
        return
    two_r = 2 * state.radius
    slack = 1e-9
    tol = 1e-10  # ignore hairline contacts left by settle-time rounding
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    for sweep in range(128):
        diff = pos[:, None, :] - pos[None, :, :]
        d = np.hypot(diff[..., 0], diff[..., 1])
        pairs = np.argwhere(upper & (d < two_r - tol))
        if len(pairs) == 0:
            break
        for i, j in pairs:
            if state.settled[i] and state.settled[j]:
                continue
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            dd = math.hypot(dx, dy)
            if dd >= two_r - tol:
                continue  # an earlier push already fixed this pair
            if sweep >= 8:
                state.settled[i] = False
                state.settled[j] = False
            if dd < 1e-12:
                ux, uy = 1.0, 0.0  # coincident: deterministic direction
            else:
                ux, uy = dx / dd, dy / dd
            push = two_r - dd + slack
            if state.settled[j]:
                pos[i, 0] += push * ux
                pos[i, 1] += push * uy
            elif state.settled[i]:
                pos[j, 0] -= push * ux
                pos[j, 1] -= push * uy
            else:
                pos[i, 0] += 0.5 * push * ux
                pos[i, 1] += 0.5 * push * uy
                pos[j, 0] -= 0.5 * push * ux
                pos[j, 1] -= 0.5 * push * uy


def step_simulation(state: SimState, k: SimConstants = SimConstants()) -> SimState:
    """Advance one frame: attract, separate, blend, integrate, settle."""
    n = len(state.positions)
    if n == 0 or state.all_settled:
        return state
    pos = state.positions

    desired = _clamp_rows(k.k_attract * (state.targets - pos), k.v_max)

    # Pairwise repulsion for close pairs. A fixed-chirality tangential
    # component rides along so exactly opposed marbles swirl past each other
    # instead of stalling nose to nose.
    diff = pos[:, None, :] - pos[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    np.fill_diagonal(dist, np.inf)
    reach = 2 * state.radius + k.separation_margin
    close = dist < reach

    # A settled marble is not a wall: when a mover crowds into its contact
    # zone it wakes, yields, and re-settles once the mover has passed.
    # Frozen neighbors would otherwise form pockets whose repulsion holds
    # the last movers in equilibrium short of their targets forever.
    crowded = state.settled & (close & ~state.settled[None, :]).any(axis=1)
    if crowded.any():
        state.settled = state.settled & ~crowded
    moving = ~state.settled

    repulsion = np.zeros_like(pos)
    if close.any():
        safe = np.where(dist < 1e-12, 1e-12, dist)
        unit = diff / safe[..., None]
        swirl = np.stack((-unit[..., 1], unit[..., 0]), axis=-1)
        strength = np.where(close, k.k_attract * (reach - dist), 0.0)
        push = unit + 0.5 * swirl
        repulsion = (push * strength[..., None]).sum(axis=1)

    vel = (1 - k.blend) * state.velocities + k.blend * (desired + repulsion)
    vel = _clamp_rows(vel, k.v_max)
    vel[state.settled] = 0.0
    state.velocities = vel
    pos[moving] += vel[moving] * k.dt

    _project_overlaps(state)

    # Settle pass in id order: snap when close to target and the target spot
    # is free of every other marble.
    two_r = 2 * state.radius
    for i in range(n):
        if state.settled[i]:
            continue
        tx, ty = state.targets[i]
        if math.hypot(pos[i, 0] - tx, pos[i, 1] - ty) >= k.delta:
            continue
        d_other = np.hypot(pos[:, 0] - tx, pos[:, 1] - ty)
        d_other[i] = np.inf
        if d_other.min() >= two_r - 1e-12:
            pos[i, 0], pos[i, 1] = tx, ty
            state.velocities[i] = 0.0
            state.settled[i] = True

    state.steps += 1
    return state


@dataclass
class SimResult:
    steps: int
    snapped: bool
    min_pairwise: float = math.inf
    trace: list = field(default_factory=list)


def run_simulation(
    state: SimState,
    k: SimConstants = SimConstants(),
    record_trace: bool = False,
) -> SimResult:
    """Run to all-settled or k.max_steps, then snap leftovers to targets.

    Tracks the minimum pairwise distance over every intermediate state.
    """
    result = SimResult(steps=0, snapped=False,
                       min_pairwise=state.min_pairwise())
    if record_trace:
        result.trace.append(state.positions.copy())
    while not state.all_settled and state.steps < k.max_steps:
        step_simulation(state, k)
        result.min_pairwise = min(result.min_pairwise, state.min_pairwise())
        if record_trace:
            result.trace.append(state.positions.copy())
    result.steps = state.steps
    if not state.all_settled:
        state.positions[:] = state.targets
        state.velocities[:] = 0.0
        state.settled[:] = True
        state.snapped = True
        result.snapped = True
    return result
