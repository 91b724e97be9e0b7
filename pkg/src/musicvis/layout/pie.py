"""Transitional pie plot: genre proportions with relevance and transition curves.

One arc per genre, angle proportional to download count, genres clockwise
from 12 o'clock in canonical order. Every download gets a point on its
genre arc in chronological order. Bezier curves inside the disc show
combined relevance between the user's tracks; curves outside the disc show
consecutive downloads that cross genres.
"""

from __future__ import annotations

from collections import Counter

from ..model import Catalog, UserHistory
from ..relevance import RelevanceMatrix
from .common import (
    curve_widths,
    genre_order_for,
    genre_style_key,
    register_base_styles,
    register_genre_styles,
    relevant_pairs,
)
from .config import LayoutConfig
from .scene import PLOT_TRANSITIONAL_PIE, Node, SceneGraph, arc, bezier, circle, polar
from .styles import StyleEncoding

TAU = 6.283185307179586


def _arc_bounds(ordered_genres: list[str], counts: Counter, total: int) -> dict[str, tuple[float, float]]:
    """Cumulative angular bounds per genre; spans telescope to a full turn."""
    bounds: dict[str, tuple[float, float]] = {}
    cum = 0
    prev_angle = 0.0
    for genre in ordered_genres:
        cum += counts[genre]
        next_angle = TAU * (cum / total)
        bounds[genre] = (prev_angle, next_angle)
        prev_angle = next_angle
    return bounds


def _pull(point: tuple[float, float], center: tuple[float, float], factor: float) -> tuple[float, float]:
    return (
        center[0] + (point[0] - center[0]) * factor,
        center[1] + (point[1] - center[1]) * factor,
    )


def add_relevance_curves(
    scene: SceneGraph,
    history: UserHistory,
    matrix: RelevanceMatrix,
    first_node: dict[str, Node],
    center: tuple[float, float],
    config: LayoutConfig,
    prefix: str = "rel",
) -> None:
    """Inner beziers between first-occurrence track points, width by relevance."""
    pairs = relevant_pairs(history, matrix, config)
    widths = curve_widths([value for _, _, value in pairs], config)
    for i, ((a, b, value), width) in enumerate(zip(pairs, widths)):
        na, nb = first_node[a], first_node[b]
        p1 = (na.geometry["cx"], na.geometry["cy"])
        p2 = (nb.geometry["cx"], nb.geometry["cy"])
        scene.add(
            bezier(
                f"{prefix}-{i}",
                p1,
                _pull(p1, center, config.inner_pull),
                _pull(p2, center, config.inner_pull),
                p2,
                width,
                style="relevance",
                role="relevance-curve",
                track_a=a,
                track_b=b,
                endpoints=[na.id, nb.id],
                combined=float(value),
            )
        )


def layout_transitional_pie(
    history: UserHistory,
    matrix: RelevanceMatrix,
    catalog: Catalog,
    styles: StyleEncoding,
    config: LayoutConfig | None = None,
) -> SceneGraph:
    config = config or LayoutConfig()
    size = config.disc_canvas
    center = (size / 2, size / 2)
    scene = SceneGraph(
        plot_kind=PLOT_TRANSITIONAL_PIE,
        canvas=(size, size),
        meta={"user_id": history.user_id},
    )
    register_base_styles(scene)
    counts = Counter(catalog.genre_of(ev.track_id) for ev in history.events)
    ordered = genre_order_for(catalog, set(counts))
    register_genre_styles(scene, ordered, styles)
    total = len(history.events)
    if total == 0:
        scene.validate()
        return scene

    bounds = _arc_bounds(ordered, counts, total)
    r_outer = config.disc_radius
    r_inner = config.disc_radius - config.ring_thickness
    for genre in ordered:
        start, end = bounds[genre]
        scene.add(
            arc(
                f"arc-{genre}", center[0], center[1], r_inner, r_outer, start, end,
                style=genre_style_key(genre), role="genre-arc", genre=genre,
                count=counts[genre],
            )
        )

    # one point per download, chronological within its genre arc
    point_radius = config.track_point_radius_frac * config.disc_radius
    slot_taken: Counter = Counter()
    first_node: dict[str, Node] = {}
    event_node: list[Node] = []
    for idx, ev in enumerate(history.events):
        genre = catalog.genre_of(ev.track_id)
        start, end = bounds[genre]
        j = slot_taken[genre]
        slot_taken[genre] += 1
        angle = start + (end - start) * ((j + 0.5) / counts[genre])
        x, y = polar(center[0], center[1], point_radius, angle)
        node = scene.add(
            circle(
                f"track-{idx}", x, y, config.track_dot_radius,
                style=genre_style_key(genre), role="track",
                track_id=ev.track_id, timestamp=ev.timestamp, genre=genre,
                angle=angle,
            )
        )
        first_node.setdefault(ev.track_id, node)
        event_node.append(node)

    add_relevance_curves(scene, history, matrix, first_node, center, config)

    # outer curves: consecutive downloads that cross genres
    transition = 0
    for idx in range(len(history.events) - 1):
        a, b = history.events[idx], history.events[idx + 1]
        if catalog.genre_of(a.track_id) == catalog.genre_of(b.track_id):
            continue
        na, nb = event_node[idx], event_node[idx + 1]
        p1 = (na.geometry["cx"], na.geometry["cy"])
        p2 = (nb.geometry["cx"], nb.geometry["cy"])
        scene.add(
            bezier(
                f"trans-{transition}",
                p1,
                _pull(p1, center, config.outer_pull),
                _pull(p2, center, config.outer_pull),
                p2,
                1.0,
                style="transition",
                role="transition-curve",
                from_track=a.track_id,
                to_track=b.track_id,
                endpoints=[na.id, nb.id],
            )
        )
        transition += 1
    scene.validate()
    return scene
