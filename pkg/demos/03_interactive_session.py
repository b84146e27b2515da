"""Drive a session through reorder, hide, drill, and back.

A Session owns the current view state: the dimension order on the polygon,
hidden dimensions, and a drill stack of category filters. Every command
rebuilds the layout document and bumps the revision. Run from the
repository root:

    python3 demos/03_interactive_session.py
"""

from __future__ import annotations

import pathlib

from hidmap import RenderOptions, Session, parse_csv, to_svg

HERE = pathlib.Path(__file__).parent
OUT = HERE / "out"


def describe(sess: Session, step: str) -> None:
    doc = sess.document()
    visible = [e.name for e in doc.legend if not e.hidden]
    crumb = " > ".join(f"{d}={v}" for d, v in doc.breadcrumb) or "(root)"
    print(f"  revision {doc.revision}: sides={doc.sides} "
          f"order={visible} drill={crumb}")
    OUT.mkdir(exist_ok=True)
    target = OUT / f"session_{doc.revision:02d}_{step}.svg"
    target.write_text(to_svg(doc.dataset, doc.root, doc.assignment,
                             RenderOptions(width=700, height=700)))


def main() -> None:
    ds = parse_csv((HERE / "data" / "demographics.csv").read_text())
    sess = Session(ds, seed=7)
    print("initial view:")
    describe(sess, "start")

    print("\nmove the last dimension to slot 1:")
    sess.reorder(4, 1)
    describe(sess, "reorder")

    print("\nhide education (the polygon keeps its shape):")
    sess.set_hidden(2, True)
    describe(sess, "hide")

    print("\ndrill into the largest top-level block:")
    doc = sess.document()
    biggest = max(doc.root.children, key=lambda c: c.count)
    dim_idx, val_idx = biggest.path.entries[0]
    print(f"  (drilling {ds.dimensions[dim_idx].name}="
          f"{ds.dimensions[dim_idx].values[val_idx]}, {biggest.count} rows)")
    sess.drill(biggest.id)
    describe(sess, "drill")

    print("\nthe drilled dimension left the polygon. The side count only"
          "\nshrinks once few enough dimensions remain (it stays odd, so"
          "\nfour slots still need a pentagon). Go back up:")
    sess.back()
    describe(sess, "back")

    print(f"\nwrote one SVG per step into {OUT}")


if __name__ == "__main__":
    main()
