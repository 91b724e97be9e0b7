"""Instrument plot: chronological body disc, genre neck, release-year headstock.

The body disc is the timeline: every download occupies an equal angular
wedge, clockwise from 12 o'clock in chronological order, colored by genre,
with a gray radial tick outside encoding release year. Relevance curves run
inside the disc. The genre distribution stacks up the neck and the
release-year distribution fills the headstock. Clicking a track highlights
all its related tracks (positive combined relevance), listed inline in the
scene so the client never recomputes relevance.
"""

from __future__ import annotations

from collections import Counter

from ..model import Catalog, UserHistory
from ..relevance import RelevanceMatrix
from .common import (
    genre_order_for,
    genre_style_key,
    register_base_styles,
    register_genre_styles,
    register_year_styles,
    year_style_key,
)
from .config import LayoutConfig
from .pie import TAU, add_relevance_curves
from .scene import PLOT_INSTRUMENT, Interaction, Node, SceneGraph, arc, bar, circle, polar
from .styles import StyleEncoding


def layout_instrument(
    history: UserHistory,
    matrix: RelevanceMatrix,
    catalog: Catalog,
    styles: StyleEncoding,
    config: LayoutConfig | None = None,
) -> SceneGraph:
    config = config or LayoutConfig()
    width = config.disc_canvas
    height = config.instrument_canvas_height
    center = (width / 2, height - width / 2)
    scene = SceneGraph(
        plot_kind=PLOT_INSTRUMENT,
        canvas=(width, height),
        meta={"user_id": history.user_id},
    )
    register_base_styles(scene)
    events = history.events
    genres_present = {catalog.genre_of(ev.track_id) for ev in events}
    register_genre_styles(scene, sorted(genres_present), styles)
    years_present = sorted({catalog.year_of(ev.track_id) for ev in events})
    register_year_styles(scene, years_present, styles)
    n = len(events)
    if n == 0:
        scene.validate()
        return scene

    r_outer = config.disc_radius
    r_inner = config.disc_radius - config.ring_thickness
    point_radius = config.track_point_radius_frac * config.disc_radius
    tick_radius = r_outer + 4.0 + config.year_tick_length / 2
    tick_width = config.year_tick_width_frac * (TAU * r_outer / n)

    first_node: dict[str, Node] = {}
    track_nodes: dict[str, list[str]] = {}
    prev_bound = 0.0
    for idx, ev in enumerate(events):
        genre = catalog.genre_of(ev.track_id)
        year = catalog.year_of(ev.track_id)
        bound = TAU * ((idx + 1) / n)
        mid = (prev_bound + bound) / 2
        scene.add(
            arc(
                f"wedge-{idx}", center[0], center[1], r_inner, r_outer,
                prev_bound, bound, style=genre_style_key(genre),
                role="body-wedge", track_id=ev.track_id, genre=genre,
            )
        )
        tx, ty = polar(center[0], center[1], tick_radius, mid)
        scene.add(
            bar(
                # (x, y) is the unrotated top-left corner; rotation is about
                # the bar's center, which sits on the tick radius
                f"yeartick-{idx}",
                tx - tick_width / 2,
                ty - config.year_tick_length / 2,
                tick_width,
                config.year_tick_length,
                style=year_style_key(year), angle=mid,
                role="year-tick", track_id=ev.track_id, release_year=year,
            )
        )
        px, py = polar(center[0], center[1], point_radius, mid)
        node = scene.add(
            circle(
                f"track-{idx}", px, py, config.track_dot_radius,
                style=genre_style_key(genre), role="track",
                track_id=ev.track_id, timestamp=ev.timestamp, genre=genre,
                angle=mid,
            )
        )
        first_node.setdefault(ev.track_id, node)
        track_nodes.setdefault(ev.track_id, []).append(node.id)
        prev_bound = bound

    add_relevance_curves(scene, history, matrix, first_node, center, config)

    # click-to-highlight: related tracks resolved server-side
    distinct = sorted(track_nodes)
    for track_id in distinct:
        related = [
            other for other in distinct
            if other != track_id and matrix.combined(track_id, other) > 0
        ]
        related_node_ids = [nid for other in related for nid in track_nodes[other]]
        for node_id in track_nodes[track_id]:
            scene.interact(
                Interaction(
                    node_id=node_id,
                    action="highlight",
                    payload={"track_ids": related, "node_ids": related_node_ids},
                )
            )

    _distribution_bars(scene, history, catalog, config, center, r_outer)
    scene.validate()
    return scene


def _distribution_bars(scene, history, catalog, config, center, r_outer) -> None:
    """Genre distribution up the neck, release-year distribution in the head."""
    genre_counts = Counter(catalog.genre_of(ev.track_id) for ev in history.events)
    year_counts = Counter(catalog.year_of(ev.track_id) for ev in history.events)
    total = len(history.events)
    neck_top = center[1] - r_outer - config.neck_length
    x_neck = center[0] - config.neck_width / 2

    # neck: canonical genre order, stacked from the disc upward
    y = center[1] - r_outer
    for genre in genre_order_for(catalog, set(genre_counts)):
        seg = config.neck_length * genre_counts[genre] / total
        y -= seg
        scene.add(
            bar(
                f"neck-{genre}", x_neck, y, config.neck_width, seg,
                style=genre_style_key(genre), role="neck-segment",
                genre=genre, count=genre_counts[genre],
            )
        )

    # headstock: ascending years, stacked from its top down
    x_head = center[0] - config.head_width / 2
    y = neck_top - config.head_length
    for year in sorted(year_counts):
        seg = config.head_length * year_counts[year] / total
        scene.add(
            bar(
                f"head-{year}", x_head, y, config.head_width, seg,
                style=year_style_key(year), role="head-segment",
                release_year=year, count=year_counts[year],
            )
        )
        y += seg
