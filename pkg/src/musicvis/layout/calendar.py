"""Calendar plot: sessions on a 24-hour x calendar-day grid, with
recommendation entry points.

Columns are the 24 hours of a day, one row per local calendar day with at
least one access. Each session becomes a pod at (start hour, start day).
Hour headers request time-slot recommendations, the scene header requests
general recommendations, and expanding a pod yields a line of beans whose
clicks request single-track recommendations; the client appends the
returned items at the end of the line.
"""

from __future__ import annotations

import math
from datetime import datetime, timedelta, timezone

from ..model import Catalog, UserHistory
from ..recommend import MODE_GENERAL, MODE_SINGLE_TRACK, MODE_TIME_SLOT, hour_of_day
from ..relevance import RelevanceMatrix
from ..sessions import Session
from .common import (
    api_plot_url,
    api_recommend_url,
    curve_widths,
    genre_style_key,
    register_base_styles,
    register_genre_styles,
    relevant_pairs,
)
from .config import LayoutConfig
from .scene import PLOT_CALENDAR, Interaction, Node, SceneGraph, bezier, circle, text
from .styles import StyleEncoding


def local_date(timestamp: int, utc_offset_minutes: int) -> str:
    tz = timezone(timedelta(minutes=utc_offset_minutes))
    return datetime.fromtimestamp(timestamp, tz).date().isoformat()


def layout_calendar(
    history: UserHistory,
    sessions: list[Session],
    catalog: Catalog,
    styles: StyleEncoding,
    config: LayoutConfig | None = None,
    utc_offset_minutes: int = 0,
    k: int = 10,
) -> SceneGraph:
    config = config or LayoutConfig()
    days = sorted({local_date(ev.timestamp, utc_offset_minutes) for ev in history.events})
    width = config.calendar_margin_left + 24 * config.calendar_cell_width + config.calendar_margin
    height = config.calendar_margin_top + max(1, len(days)) * config.calendar_row_height + config.calendar_margin
    scene = SceneGraph(
        plot_kind=PLOT_CALENDAR,
        canvas=(width, height),
        meta={"user_id": history.user_id, "utc_offset_minutes": utc_offset_minutes, "k": k},
    )
    register_base_styles(scene)
    genres = {catalog.genre_of(ev.track_id) for ev in history.events}
    register_genre_styles(scene, sorted(genres), styles)

    header = scene.add(
        text(
            "header", config.calendar_margin_left, 24.0,
            f"listening calendar: {history.user_id}",
            style="label", role="header",
        )
    )
    scene.interact(
        Interaction(
            node_id=header.id,
            action="recommend_general",
            request=api_recommend_url(history.user_id, MODE_GENERAL, k=k),
        )
    )
    for hour in range(24):
        x = config.calendar_margin_left + (hour + 0.5) * config.calendar_cell_width
        node = scene.add(
            text(
                f"hour-{hour}", x, config.calendar_margin_top - 16.0, str(hour),
                style="label", role="hour-label", slot=hour,
            )
        )
        scene.interact(
            Interaction(
                node_id=node.id,
                action="recommend_slot",
                request=api_recommend_url(history.user_id, MODE_TIME_SLOT, k=k, slot=hour),
            )
        )
    row_of = {day: i for i, day in enumerate(days)}
    for day in days:
        y = config.calendar_margin_top + (row_of[day] + 0.5) * config.calendar_row_height
        scene.add(
            text(
                f"day-{day}", 8.0, y, day, style="label", role="day-label", date=day,
            )
        )

    for s_idx, session in enumerate(sessions):
        hour = hour_of_day(session.start, utc_offset_minutes)
        day = local_date(session.start, utc_offset_minutes)
        cx = config.calendar_margin_left + (hour + 0.5) * config.calendar_cell_width
        cy = config.calendar_margin_top + (row_of[day] + 0.5) * config.calendar_row_height
        radius = config.pod_radius_base * 0.6 * math.sqrt(len(session))
        pod = scene.add(
            circle(
                f"pod-{s_idx}", cx, cy, radius, style="pod", role="pod",
                session_index=s_idx, start=session.start, end=session.end,
                count=len(session), slot=hour, date=day,
            )
        )
        scene.interact(
            Interaction(
                node_id=pod.id,
                action="expand",
                request=api_plot_url(history.user_id, PLOT_CALENDAR, expand=s_idx),
            )
        )
    scene.validate()
    return scene


def layout_calendar_expand(
    user_id: str,
    session: Session,
    session_index: int,
    matrix: RelevanceMatrix,
    catalog: Catalog,
    styles: StyleEncoding,
    config: LayoutConfig | None = None,
    k: int = 10,
    expose_titles: bool = False,
) -> SceneGraph:
    """One session expanded onto a line of beans.

    Leaves room for k recommendation beans at the end of the line; the
    client appends them after the single-track request returns. Relevance
    curves between the line's tracks arc above it so hover can emphasize
    them without recomputation.
    """
    config = config or LayoutConfig()
    events = session.events
    n = len(events)
    width = 2 * config.calendar_margin + (n + k) * config.expand_bean_spacing
    height = 6 * config.expand_bean_radius + 80.0
    cy = height - 3 * config.expand_bean_radius - 8.0
    scene = SceneGraph(
        plot_kind=PLOT_CALENDAR,
        canvas=(width, height),
        meta={
            "user_id": user_id,
            "subscene": "calendar_expand",
            "session_index": session_index,
            "k": k,
            "bean_spacing": config.expand_bean_spacing,
            "line_y": cy,
            "next_x": config.calendar_margin + n * config.expand_bean_spacing,
        },
    )
    register_base_styles(scene)
    genres = {catalog.genre_of(ev.track_id) for ev in events}
    register_genre_styles(scene, sorted(genres), styles)

    # history fragment for pair selection within this session only
    fragment = UserHistory(user_id, events)
    first_node: dict[str, Node] = {}
    for idx, ev in enumerate(events):
        track = catalog.tracks[ev.track_id]
        x = config.calendar_margin + idx * config.expand_bean_spacing
        node = scene.add(
            circle(
                f"bean-{idx}", x, cy, config.expand_bean_radius,
                style=genre_style_key(track.genre), role="bean",
                track_id=ev.track_id, timestamp=ev.timestamp,
                genre=track.genre, release_year=track.release_year,
            )
        )
        first_node.setdefault(ev.track_id, node)
        hover_payload = {
            "track_id": ev.track_id,
            "genre": track.genre,
            "release_year": track.release_year,
        }
        if expose_titles and track.title:
            hover_payload["title"] = track.title
        scene.interact(Interaction(node_id=node.id, action="hover", payload=hover_payload))
        scene.interact(
            Interaction(
                node_id=node.id,
                action="recommend_track",
                request=api_recommend_url(user_id, MODE_SINGLE_TRACK, k=k, seed=ev.track_id),
            )
        )

    pairs = relevant_pairs(fragment, matrix, config)
    widths = curve_widths([value for _, _, value in pairs], config)
    for i, ((a, b, value), curve_width) in enumerate(zip(pairs, widths)):
        na, nb = first_node[a], first_node[b]
        p1 = (na.geometry["cx"], na.geometry["cy"])
        p2 = (nb.geometry["cx"], nb.geometry["cy"])
        lift = 12.0 + 3.0 * abs(p2[0] - p1[0]) / config.expand_bean_spacing
        scene.add(
            bezier(
                f"rel-{i}", p1, (p1[0], cy - lift), (p2[0], cy - lift), p2,
                curve_width, style="relevance", role="relevance-curve",
                track_a=a, track_b=b, endpoints=[na.id, nb.id],
                combined=float(value),
            )
        )
    scene.validate()
    return scene
