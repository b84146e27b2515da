"""Visual attribute formulas: hue per dimension, lightness per value,
saturation per leaf size, stroke width per cut depth.

Hues live on a two-segment track [0, 0.4] and [0.6, 0.9]: the band around
0.5 is reserved for the marble glyphs and 1.0 is never emitted, so dimension
colors cannot be confused with the area glyphs.
"""

from __future__ import annotations

from dataclasses import dataclass

HUE_TRACK = 0.7  # combined length of the two usable hue segments
MARBLE_STYLE_HUE = 0.5
MARBLE_STYLE_SATURATION = 0.6
MARBLE_STYLE_LIGHTNESS = 0.5


@dataclass(frozen=True)
class Style:
    hue: float
    saturation: float
    lightness: float
    stroke_width: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.hue < 1.0:
            raise ValueError(f"hue out of [0,1): {self.hue}")
        if not 0.0 <= self.saturation <= 1.0:
            raise ValueError(f"saturation out of [0,1]: {self.saturation}")
        if not 0.0 <= self.lightness <= 1.0:
            raise ValueError(f"lightness out of [0,1]: {self.lightness}")


def hue_for_dimension(i: int, n: int) -> float:
    """Hue of the dimension at order position i among n visible.

    Linear along the split track: positions map to [0.0, 0.4] then jump the
    reserved gap and continue on [0.6, 0.9]; first dimension 0.0, last 0.9.
    """
    if not 0 <= i < n:
        raise ValueError(f"order position {i} out of range for n={n}")
    s = 0.0 if n == 1 else HUE_TRACK * (i / (n - 1))
    if s <= 0.4:
        return s
    # Anchor the upper segment at 0.9 so the last position lands on it
    # exactly; s + 0.2 would drift an ulp below.
    return 0.9 - HUE_TRACK * ((n - 1 - i) / (n - 1))


def lightness_for_value(j: int, k: int) -> float:
    """Lightness of value j among k: 0.4 (first) to 0.7 (last)."""
    if not 0 <= j < k:
        raise ValueError(f"value index {j} out of range for k={k}")
    if k == 1:
        return 0.4
    return 0.4 + 0.3 * (j / (k - 1))


def saturation_for_leaf(a: float, amin: float, amax: float) -> float:
    """Saturation of a leaf by area: 0.25 smallest, 1.0 largest."""
    if not amin <= a <= amax:
        raise ValueError(f"area {a} outside [{amin}, {amax}]")
    if amax == amin:
        return 1.0
    # Group the ratio so the largest leaf lands on 1.0 exactly: x / x is
    # exact while (0.75 * x) / x can drift an ulp.
    return 0.25 + 0.75 * ((a - amin) / (amax - amin))


def stroke_width_for_depth(d: int, n: int) -> float:
    """Cut stroke width in px at the 1000x1000 reference viewport.

    First dimension thickest (6.0 px), last thinnest (1.5 px), strictly
    decreasing in between.
    """
    if not 0 <= d < n:
        raise ValueError(f"depth {d} out of range for n={n}")
    if n == 1:
        return 6.0
    return 6.0 - 4.5 * (d / (n - 1))


def leaf_fill(last_dim_pos: int, n_dims: int, value_index: int,
              value_count: int, leaf_area: float, area_min: float,
              area_max: float) -> Style:
    """Fill style of a leaf: hue of the last cut dimension, lightness of the
    leaf's value in it, saturation by relative leaf size."""
    return Style(
        hue=hue_for_dimension(last_dim_pos, n_dims),
        saturation=saturation_for_leaf(leaf_area, area_min, area_max),
        lightness=lightness_for_value(value_index, value_count),
    )


def marble_style() -> Style:
    """Marbles own the reserved mid-track hue."""
    return Style(
        hue=MARBLE_STYLE_HUE,
        saturation=MARBLE_STYLE_SATURATION,
        lightness=MARBLE_STYLE_LIGHTNESS,
    )
