"""Area-proportional polygon maps for multi-dimensional categorical data.

A dataset's dimensions are assigned to consecutive sides of a regular
polygon; recursive cuts parallel to each side partition the region so that
every block's area is exactly proportional to its row count. Countable
marble glyphs, a deterministic SVG renderer, an interactive session protocol
(reorder / hide / drill / back), a JSON HTTP API, and a command line front
end build on that core.

The usual entry points:

    parse_csv     -> Dataset
    build_tree    -> LayoutNode hierarchy for one fixed view
    Session       -> stateful view with reorder/hide/drill/back + documents
    to_svg        -> deterministic SVG for a layout
    ApiServer     -> the HTTP JSON API around a Session
"""

from .dataset import (
    CategoryPath,
    Dataset,
    DatasetError,
    Dimension,
    parse_csv,
)
from .encoding import (
    Style,
    hue_for_dimension,
    leaf_fill,
    lightness_for_value,
    marble_style,
    saturation_for_leaf,
    stroke_width_for_depth,
)
from .geometry import (
    ConvexPolygon,
    CutDirection,
    GeometryConfig,
    GeometryError,
    Point,
    area,
    offset_for_area_fraction,
    regular_polygon,
    side_cut,
    split_proportional,
)
from .layout import (
    EdgeHit,
    LayoutConfig,
    LayoutError,
    LayoutNode,
    LeafHit,
    Miss,
    NodeSummary,
    SideAssignment,
    assign_sides,
    build_tree,
    hit_test,
    node_summary,
    sides_for,
)
from .marbles import (
    Marble,
    Matching,
    SimConstants,
    TransitionPlan,
    assign_targets,
    make_sim_state,
    marble_count,
    place_marbles,
    run_simulation,
)
from .render import RenderOptions, detail_panel, to_svg
from .server import ApiServer
from .session import (
    LayoutDocument,
    Session,
    SessionError,
    SessionState,
    transition,
)

__version__ = "0.1.0"

__all__ = [
    "ApiServer",
    "CategoryPath",
    "ConvexPolygon",
    "CutDirection",
    "Dataset",
    "DatasetError",
    "Dimension",
    "EdgeHit",
    "GeometryConfig",
    "GeometryError",
    "LayoutConfig",
    "LayoutDocument",
    "LayoutError",
    "LayoutNode",
    "LeafHit",
    "Marble",
    "Matching",
    "Miss",
    "NodeSummary",
    "Point",
    "RenderOptions",
    "Session",
    "SessionError",
    "SessionState",
    "SideAssignment",
    "SimConstants",
    "Style",
    "TransitionPlan",
    "area",
    "assign_sides",
    "assign_targets",
    "build_tree",
    "detail_panel",
    "hit_test",
    "hue_for_dimension",
    "leaf_fill",
    "lightness_for_value",
    "make_sim_state",
    "marble_count",
    "marble_style",
    "node_summary",
    "offset_for_area_fraction",
    "parse_csv",
    "place_marbles",
    "regular_polygon",
    "run_simulation",
    "saturation_for_leaf",
    "side_cut",
    "sides_for",
    "split_proportional",
    "stroke_width_for_depth",
    "to_svg",
    "transition",
    "__version__",
]
