"""Marbles and how they move when the view changes.

Marbles are countable glyphs: one per percent of the data, grouped in
clusters of five for easy counting. When the view changes, each marble is
matched to a nearby successor and an agent simulation walks it over,
avoiding every other marble on the way. Run from the repository root:

    python3 demos/04_marble_transitions.py
"""

from __future__ import annotations

import pathlib

from hidmap import Session, make_sim_state, parse_csv, run_simulation

HERE = pathlib.Path(__file__).parent


def main() -> None:
    ds = parse_csv((HERE / "data" / "demographics.csv").read_text())
    sess = Session(ds, seed=7)

    doc = sess.document()
    counts = {}
    for leaf in doc.root.leaves():
        if leaf.marbles:
            counts[len(leaf.marbles)] = counts.get(len(leaf.marbles), 0) + 1
    total = sum(len(lf.marbles) for lf in doc.root.leaves())
    print(f"{total} marbles across the map "
          f"(leaves with k marbles: {dict(sorted(counts.items()))})")
    group_sizes: dict[tuple[int, int], int] = {}
    for lf in doc.root.leaves():
        for m in lf.marbles:
            key = (lf.id, m.group_index)
            group_sizes[key] = group_sizes.get(key, 0) + 1
    print(f"placement groups: {len(group_sizes)}, largest "
          f"{max(group_sizes.values())} marbles (five is the cap)")

    # Reorder the polygon and ask for the transition plan.
    before = dict(doc.marble_index())
    new_doc, plan = sess.reorder(0, 3)
    after = dict(new_doc.marble_index())
    print(f"\nreorder(0 -> 3): {len(plan.matches)} marbles matched, "
          f"{len(plan.fade_in)} fade in, {len(plan.fade_out)} fade out")

    # Run the stepper on the matched marbles.
    starts = [before[i] for i, _ in plan.matches]
    targets = [after[j] for _, j in plan.matches]
    radius = next(m.radius for lf in new_doc.root.leaves() for m in lf.marbles)
    state = make_sim_state(starts, targets, radius)
    result = run_simulation(state, plan.constants)
    print(f"simulation: settled in {result.steps} steps "
          f"(cap {plan.constants.max_steps}), "
          f"min pairwise clearance {result.min_pairwise - 2 * radius:+.2e}")
    print(f"every marble within {plan.constants.delta} of its target: "
          f"{bool(state.settled.all())}")


if __name__ == "__main__":
    main()
