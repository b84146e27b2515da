"""Cross-implementation fixtures shared with the browser client.

The committed JSON files under frontend/test/fixtures/ pin three contracts
so the client test suite can prove conformance without importing the
engine: pointer hit-testing over full layout documents, the marble stepper
(valid start/target configurations it must settle), and one scripted
command sequence with the exact document it must end on. Every test here
recomputes the fixture content from the engine and compares it with the
committed file. Run this module as a script to (re)write the files.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from pathlib import Path

from helpers import random_dataset

from hidmap.dataset import parse_csv
from hidmap.geometry import Point, contains_point, segment_distance
from hidmap.layout import EdgeHit, LeafHit, hit_test
from hidmap.marbles import SimConstants, make_sim_state, run_simulation
from hidmap.session import Session

HERE = Path(__file__).parent
FIXTURES = HERE.parent / "frontend" / "test" / "fixtures"
DEMO_CSV = HERE.parent / "demos" / "data" / "demographics.csv"

# Decision margin for sampled pointer positions: a case is kept only when
# every own-edge distance clears the hover tolerance by at least this much,
# so float noise between implementations cannot flip the expected result.
EDGE_MARGIN = 1e-7

CASE_BUDGETS = (100, 90, 80, 80, 80, 70)

SCRIPT = (
    {"op": "reorder", "from": 3, "to": 4},
    {"op": "drill", "dimension": "gender", "value": "male"},
    {"op": "drill", "dimension": "age", "value": "teen"},
    {"op": "drill", "dimension": "education", "value": "high-school"},
    {"op": "back"},
)

TRANSITION_COUNTS = (2, 3, 5, 10, 15, 20, 40, 60, 80, 100, 110, 120)
TRANSITION_RADIUS = 0.015


def _demo_dataset():
    return parse_csv(DEMO_CSV.read_text(encoding="utf-8"))


def _documents():
    """Six documents spanning reorder, hide, drill, and both side counts."""
    ds = _demo_dataset()
    male = ds.dimensions[0].values.index("male")
    rng = random.Random(1130)
    ds3, _ = random_dataset(rng, 3, 3, 700)
    ds6, _ = random_dataset(rng, 6, 3, 900)
    return [
        Session(ds, seed=0).document(),
        Session(ds, seed=3, order=(4, 0, 2, 1, 3), hidden=(2,)).document(),
        Session(ds, seed=1, drill=((0, male),)).document(),
        Session(ds3, seed=5).document(),
        Session(ds6, seed=8).document(),
        Session(ds, seed=0, hidden=(1, 3)).document(),
    ]


def _edge_stable(root, p: Point, tol: float) -> bool:
    for node in root.iter_nodes():
        for a, b in node.own_edges:
            if abs(segment_distance(a, b, p) - tol) <= EDGE_MARGIN:
                return False
    return True


def _encode_hit(hit) -> dict:
    if isinstance(hit, LeafHit):
        return {"kind": "leaf", "nodeId": hit.node.id}
    if isinstance(hit, EdgeHit):
        return {"kind": "edge", "nodeId": hit.node.id}
    return {"kind": "miss"}


def _sample_point(rng: random.Random, root, mode: str):
    if mode == "leaf":
        leaves = [lf for lf in root.leaves() if lf.count > 0]
        leaf = rng.choice(leaves)
        xs = [v.x for v in leaf.polygon.vertices]
        ys = [v.y for v in leaf.polygon.vertices]
        for _ in range(200):
            p = Point(rng.uniform(min(xs), max(xs)),
                      rng.uniform(min(ys), max(ys)))
            if contains_point(leaf.polygon, p):
                return p
        return None
    if mode in ("edge", "near-edge"):
        nodes = [n for n in root.iter_nodes() if n.own_edges]
        node = rng.choice(nodes)
        a, b = rng.choice(node.own_edges)
        t = rng.uniform(0.08, 0.92)
        p = Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
        if mode == "edge":
            return p
        ex, ey = b.x - a.x, b.y - a.y
        length = math.hypot(ex, ey)
        if length < 1e-9:
            return None
        off = rng.uniform(0.002, 0.02) * rng.choice((-1.0, 1.0))
        return Point(p.x + off * (-ey / length), p.y + off * (ex / length))
    if mode == "outside":
        ang = rng.uniform(0.0, 2.0 * math.pi)
        r = rng.uniform(1.05, 1.8)
        return Point(r * math.cos(ang), r * math.sin(ang))
    return Point(rng.uniform(-1.3, 1.3), rng.uniform(-1.3, 1.3))


def _hit_fixture() -> dict:
    docs = _documents()
    rng = random.Random(424242)
    cases = []
    for di, (doc, budget) in enumerate(zip(docs, CASE_BUDGETS)):
        root = doc.root
        tol = 0.01 * max(math.hypot(v.x, v.y)
                         for v in root.polygon.vertices)
        made = 0
        while made < budget:
            mode = rng.choices(
                ("leaf", "edge", "near-edge", "outside", "box"),
                weights=(40, 25, 15, 12, 8),
            )[0]
            p = _sample_point(rng, root, mode)
            if p is None or not _edge_stable(root, p, tol):
                continue
            cases.append({
                "doc": di,
                "x": p.x,
                "y": p.y,
                "expect": _encode_hit(hit_test(root, p)),
            })
            made += 1
    assert len(cases) == sum(CASE_BUDGETS) == 500
    kinds = Counter(c["expect"]["kind"] for c in cases)
    assert kinds["leaf"] >= 120 and kinds["edge"] >= 120
    assert kinds["miss"] >= 40
    return {"documents": [d.to_dict() for d in docs], "cases": cases}


def _run_script() -> Session:
    ds = _demo_dataset()
    sess = Session(ds, seed=0)
    for cmd in SCRIPT:
        if cmd["op"] == "reorder":
            sess.reorder(cmd["from"], cmd["to"])
        elif cmd["op"] == "drill":
            dim = next(d for d in ds.dimensions
                       if d.name == cmd["dimension"])
            vidx = dim.values.index(cmd["value"])
            target = next(
                c for c in sess.document().root.children
                if c.path.entries[-1] == (dim.index, vidx)
            )
            sess.drill(target.id)
        else:
            sess.back()
    return sess


def _session_fixture() -> dict:
    sess = _run_script()
    return {
        "input": "demos/data/demographics.csv",
        "seed": 0,
        "commands": [dict(c) for c in SCRIPT],
        "expected": sess.document().to_dict(),
    }


def _valid_points(rng: random.Random, k: int, radius: float) -> list[Point]:
    pts: list[Point] = []
    while len(pts) < k:
        p = Point(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0))
        if all(math.hypot(p.x - q.x, p.y - q.y) >= 2 * radius + 1e-3
               for q in pts):
            pts.append(p)
    return pts


def _transition_fixture() -> dict:
    rng = random.Random(909)
    cases = []
    for k in TRANSITION_COUNTS:
        starts = _valid_points(rng, k, TRANSITION_RADIUS)
        targets = _valid_points(rng, k, TRANSITION_RADIUS)
        cases.append({
            "count": k,
            "starts": [[p.x, p.y] for p in starts],
            "targets": [[p.x, p.y] for p in targets],
        })
    return {
        "radius": TRANSITION_RADIUS,
        "constants": SimConstants().to_dict(),
        "cases": cases,
    }


def _load(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


class TestHitTestFixture:
    def test_committed_fixture_matches_engine(self):
        assert _load("hittest_cases.json") == _hit_fixture()


class TestScriptedSessionFixture:
    def test_committed_fixture_matches_engine(self):
        assert _load("scripted_session.json") == _session_fixture()

    def test_script_ends_two_levels_deep(self):
        doc = _run_script().document()
        assert [(d, v) for d, v in doc.breadcrumb] == [
            ("gender", "male"), ("age", "teen"),
        ]
        assert doc.revision == len(SCRIPT)


class TestTransitionFixture:
    def test_committed_fixture_matches_engine(self):
        assert _load("transition_cases.json") == _transition_fixture()

    def test_cases_settle_within_contract(self):
        fx = _transition_fixture()
        radius = fx["radius"]
        for case in fx["cases"]:
            state = make_sim_state(
                [Point(x, y) for x, y in case["starts"]],
                [Point(x, y) for x, y in case["targets"]],
                radius,
            )
            res = run_simulation(state)
            assert not res.snapped
            assert res.steps <= SimConstants().max_steps
            assert res.min_pairwise >= 2 * radius - 1e-9


def _write(name: str, payload: dict) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / name).write_text(
        json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"wrote {FIXTURES / name}")


if __name__ == "__main__":
    _write("hittest_cases.json", _hit_fixture())
    _write("scripted_session.json", _session_fixture())
    _write("transition_cases.json", _transition_fixture())
