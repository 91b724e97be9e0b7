"""Bean plot: one row per user, sessions as pods, tracks as beans.

Pods sit on a shared time axis in chronological order; pod area is
proportional to track count (radius = base * sqrt(n)). Beans pack onto
concentric rings inside each pod, chronologically from the center outward.
Clicking a pod unfolds it into single-genre subsession pods, served as a
separate sub-scene.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

from ..model import Catalog, UserHistory
from ..sessions import Session, segment_subsessions
from .common import (
    api_plot_url,
    genre_style_key,
    register_base_styles,
    register_genre_styles,
)
from .config import LayoutConfig
from .scene import PLOT_BEAN, SceneGraph, circle, Interaction, polar, text
from .styles import StyleEncoding


def bean_offsets(n: int, pod_radius: float, bean_radius: float) -> list[tuple[float, float]]:
    """Chronological bean offsets on concentric rings (capacity 1, 6, 12...).

    Deterministic and near-optimal for the session sizes the plots see
    (n <= 50 or so); ring 0 is the pod center, ring r holds 6r beans.
    """
    if n <= 0:
        return []
    capacities = [1]
    while sum(capacities) < n:
        capacities.append(6 * len(capacities))
    n_rings = len(capacities)
    outer = max(pod_radius - 1.5 * bean_radius, 0.0)
    step = outer / (n_rings - 1) if n_rings > 1 else 0.0
    offsets: list[tuple[float, float]] = []
    for ring, capacity in enumerate(capacities):
        radius = ring * step
        for slot in range(capacity):
            if len(offsets) == n:
                return offsets
            angle = 2 * math.pi * slot / capacity
            offsets.append(polar(0.0, 0.0, radius, angle))
    return offsets


def pod_radius(n: int, config: LayoutConfig) -> float:
    return config.pod_radius_base * math.sqrt(n)


def _time_axis(histories: Sequence[UserHistory], config: LayoutConfig):
    stamps = [ev.timestamp for h in histories for ev in h.events]
    t_lo, t_hi = (min(stamps), max(stamps)) if stamps else (0, 0)
    x_lo = config.bean_margin
    x_hi = config.bean_canvas_width - config.bean_margin

    def to_x(ts: int) -> float:
        if t_hi == t_lo:
            return (x_lo + x_hi) / 2
        return x_lo + (ts - t_lo) / (t_hi - t_lo) * (x_hi - x_lo)

    return to_x


def _add_pod_with_beans(
    scene: SceneGraph,
    pod_id: str,
    cx: float,
    cy: float,
    events,
    catalog: Catalog,
    config: LayoutConfig,
    payload: dict,
) -> None:
    radius = pod_radius(len(events), config)
    scene.add(circle(pod_id, cx, cy, radius, style="pod", role="pod", **payload))
    for offset, (b, ev) in zip(bean_offsets(len(events), radius, config.bean_radius), enumerate(events)):
        genre = catalog.genre_of(ev.track_id)
        scene.add(
            circle(
                f"{pod_id}-bean-{b}",
                cx + offset[0],
                cy + offset[1],
                config.bean_radius,
                style=genre_style_key(genre),
                role="bean",
                track_id=ev.track_id,
                timestamp=ev.timestamp,
            )
        )


def layout_bean(
    histories: Sequence[UserHistory],
    sessions: Mapping[str, list[Session]],
    catalog: Catalog,
    styles: StyleEncoding,
    config: LayoutConfig | None = None,
) -> SceneGraph:
    """Folded bean plot for one or more users on a shared time axis."""
    if not histories:
        raise ValueError("layout_bean needs at least one history")
    config = config or LayoutConfig()
    height = 2 * config.bean_margin + len(histories) * config.bean_row_height
    scene = SceneGraph(
        plot_kind=PLOT_BEAN,
        canvas=(config.bean_canvas_width, height),
        meta={"users": [h.user_id for h in histories]},
    )
    register_base_styles(scene)
    genres = {catalog.genre_of(ev.track_id) for h in histories for ev in h.events}
    register_genre_styles(scene, sorted(genres), styles)
    to_x = _time_axis(histories, config)

    for row, history in enumerate(histories):
        cy = config.bean_margin + (row + 0.5) * config.bean_row_height
        scene.add(
            text(
                f"user-{row}-label", 8.0, cy, history.user_id,
                style="label", role="row-label", user_id=history.user_id,
            )
        )
        for s_idx, session in enumerate(sessions.get(history.user_id, [])):
            pod_id = f"u{row}-pod-{s_idx}"
            _add_pod_with_beans(
                scene, pod_id, to_x(session.start), cy, session.events, catalog, config,
                {"user_id": history.user_id, "session_index": s_idx,
                 "start": session.start, "end": session.end},
            )
            scene.interact(
                Interaction(
                    node_id=pod_id,
                    action="unfold",
                    request=api_plot_url(history.user_id, PLOT_BEAN, unfold=s_idx),
                )
            )
    scene.validate()
    return scene


def layout_bean_unfold(
    user_id: str,
    session: Session,
    session_index: int,
    catalog: Catalog,
    styles: StyleEncoding,
    config: LayoutConfig | None = None,
) -> SceneGraph:
    """Unfolded view of one pod: a pod per single-genre subsession, in order."""
    config = config or LayoutConfig()
    subsessions = segment_subsessions(session, catalog)
    radii = [pod_radius(len(sub), config) for sub in subsessions]
    gap = 3.0 * config.bean_radius
    width = 2 * config.bean_margin + sum(2 * r for r in radii) + gap * max(0, len(radii) - 1)
    height = 2 * config.bean_margin + 2 * (max(radii) if radii else 0.0)
    scene = SceneGraph(
        plot_kind=PLOT_BEAN,
        canvas=(width, height),
        meta={
            "users": [user_id],
            "subscene": "bean_unfold",
            "session_index": session_index,
        },
    )
    register_base_styles(scene)
    genres = [sub.genre for sub in subsessions]
    register_genre_styles(scene, sorted(set(genres)), styles)
    cy = height / 2
    cursor = config.bean_margin
    for i, (sub, radius) in enumerate(zip(subsessions, radii)):
        cx = cursor + radius
        _add_pod_with_beans(
            scene, f"sub-{i}", cx, cy, sub.events, catalog, config,
            {"user_id": user_id, "session_index": session_index,
             "subsession_index": i, "genre": sub.genre},
        )
        cursor = cx + radius + gap
    scene.validate()
    return scene
