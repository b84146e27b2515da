"""Build one map from a CSV file and write it out as SVG.

Every dimension of the table gets one side of a regular polygon; recursive
cuts parallel to those sides carve the area so each block is exactly
proportional to its row count. Run from the repository root:

    python3 demos/01_first_map.py
"""

from __future__ import annotations

import pathlib

from hidmap import area, build_tree, parse_csv, sides_for, to_svg, RenderOptions

HERE = pathlib.Path(__file__).parent
OUT = HERE / "out"


def main() -> None:
    ds = parse_csv((HERE / "data" / "demographics.csv").read_text())
    print(f"{ds.row_count} rows, {len(ds.dimensions)} dimensions:")
    for dim in ds.dimensions:
        print(f"  {dim.name}: {', '.join(dim.values)}")

    # One side per dimension; an odd side count keeps every side's opposite
    # vertex unambiguous, so five dimensions get a pentagon.
    n = len(ds.dimensions)
    print(f"\npolygon sides: {sides_for(n)}")

    root = build_tree(ds, order=list(range(n)), seed=7)
    total_area = area(root.polygon)

    # The first dimension's three largest children, with their area shares.
    print("\ntop-level blocks (first dimension):")
    for child in root.children:
        dim_idx, val_idx = child.path.entries[0]
        dim = ds.dimensions[dim_idx]
        value = dim.values[val_idx]
        share = area(child.polygon) / total_area
        print(f"  {dim.name} = {value:<8} rows {child.count:>3} "
              f"area share {share:.4f} (count share {child.fraction:.4f})")

    leaves = list(root.leaves())
    print(f"\nleaf regions: {len(leaves)} "
          f"(deepest possible: {n} cuts per region)")

    OUT.mkdir(exist_ok=True)
    svg = to_svg(ds, root, opts=RenderOptions(width=900, height=900))
    target = OUT / "first_map.svg"
    target.write_text(svg)
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
