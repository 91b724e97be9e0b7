"""All tunable layout constants in one place.

The plot designs pin the encodings (pod area proportional to track count,
chronological ordering, relevance curves inside discs, genre transitions
outside); exact spacing, curve counts, and bundling are free choices, so
every such constant lives here with its rationale.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class LayoutConfig:
    # --- shared ---------------------------------------------------------
    # Show at most this many relevance curves per plot, highest combined
    # relevance first (clutter control; the figures are dense but readable).
    max_relevance_pairs: int = 200
    # Curve stroke widths after min-max normalization of displayed pairs;
    # a degenerate single-value range collapses to the midpoint.
    curve_width_min: float = 0.5
    curve_width_max: float = 4.0

    # --- bean plot ------------------------------------------------------
    bean_canvas_width: float = 1000.0
    bean_row_height: float = 120.0
    bean_margin: float = 60.0
    # Pod radius is pod_radius_base * sqrt(track count): area tracks count.
    pod_radius_base: float = 8.0
    bean_radius: float = 3.0

    # --- transitional pie / instrument ----------------------------------
    disc_canvas: float = 800.0
    disc_radius: float = 300.0
    ring_thickness: float = 40.0
    # Track points sit on the arc band; curves attach to these points.
    track_point_radius_frac: float = 0.87  # of disc radius
    track_dot_radius: float = 4.0
    # Cubic control points: inner curves pull toward the center, outer
    # transition curves bow outside the disc.
    inner_pull: float = 0.30
    outer_pull: float = 1.30

    # --- instrument extras ----------------------------------------------
    instrument_canvas_height: float = 1150.0
    neck_length: float = 300.0
    neck_width: float = 44.0
    head_length: float = 110.0
    head_width: float = 120.0
    year_tick_length: float = 22.0
    year_tick_width_frac: float = 0.55  # of the wedge's arc step

    # --- calendar plot --------------------------------------------------
    calendar_cell_width: float = 40.0
    calendar_row_height: float = 56.0
    calendar_margin_left: float = 90.0
    calendar_margin_top: float = 70.0
    calendar_margin: float = 30.0
    # Expanded session line: bean spacing and radius in the overlay.
    expand_bean_spacing: float = 26.0
    expand_bean_radius: float = 8.0
