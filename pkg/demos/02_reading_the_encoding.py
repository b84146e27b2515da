"""How to read a map: the four visual channels and their formulas.

Each dimension owns a hue, each of its values a lightness step, each leaf a
saturation proportional to its size, and each cut family a stroke width by
depth. This script prints the exact numbers the renderer uses for the
demographics table. Run from the repository root:

    python3 demos/02_reading_the_encoding.py
"""

from __future__ import annotations

import pathlib

from hidmap import (
    build_tree,
    hue_for_dimension,
    lightness_for_value,
    parse_csv,
    stroke_width_for_depth,
)

HERE = pathlib.Path(__file__).parent


def main() -> None:
    ds = parse_csv((HERE / "data" / "demographics.csv").read_text())
    n = len(ds.dimensions)

    print("dimension hues (0.4..0.6 is reserved for marbles, 1.0 unused):")
    for i, dim in enumerate(ds.dimensions):
        h = hue_for_dimension(i, n)
        w = stroke_width_for_depth(i, n)
        print(f"  side {i}: {dim.name:<15} hue {h:.3f} "
              f"({h * 360:5.1f} deg)  cut width {w:.2f}px")

    print("\nvalue lightness inside one dimension (first light, last dark"
          " is reversed: 0.4 first -> 0.7 last):")
    for dim in ds.dimensions[:2]:
        k = len(dim.values)
        steps = ", ".join(
            f"{v}={lightness_for_value(j, k):.2f}"
            for j, v in enumerate(dim.values)
        )
        print(f"  {dim.name}: {steps}")

    # Leaf fills take the hue of the LAST visible dimension, so all leaves
    # share one hue family and differ by lightness (their value) and
    # saturation (their relative size).
    root = build_tree(ds, order=list(range(n)), seed=7)
    leaves = sorted(root.leaves(), key=lambda lf: -lf.count)[:5]
    print("\nfive largest leaves (hue fixed by the last dimension):")
    for leaf in leaves:
        names = " & ".join(
            f"{ds.dimensions[d].name}={ds.dimensions[d].values[v]}"
            for d, v in leaf.path
        )
        st = leaf.style
        print(f"  {leaf.count:>3} rows  hsl({st.hue * 360:.0f}, "
              f"{st.saturation * 100:.0f}%, {st.lightness * 100:.0f}%)  {names}")


if __name__ == "__main__":
    main()
