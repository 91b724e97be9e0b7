"""Helpers shared by the four plot layouts."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..model import Catalog, UserHistory
from ..relevance import RelevanceMatrix
from .config import LayoutConfig
from .scene import SceneGraph
from .styles import StyleEncoding, gray_hex


def api_plot_url(user_id: str, kind: str, **params) -> str:
    query = "&".join(f"{k}={v}" for k, v in params.items())
    base = f"/api/users/{user_id}/plot/{kind}"
    return f"{base}?{query}" if query else base


def api_recommend_url(user_id: str, mode: str, **params) -> str:
    query = "&".join(f"{k}={v}" for k, v in sorted(params.items()))
    url = f"/api/users/{user_id}/recommend?mode={mode}"
    return f"{url}&{query}" if query else url


def genre_style_key(genre: str) -> str:
    return f"genre:{genre}"


def year_style_key(year: int) -> str:
    return f"year:{year}"


def register_genre_styles(scene: SceneGraph, genres: Iterable[str], styles: StyleEncoding) -> None:
    for genre in genres:
        scene.styles.setdefault(genre_style_key(genre), {"fill": styles.genre_color(genre)})


def register_year_styles(scene: SceneGraph, years: Iterable[int], styles: StyleEncoding) -> None:
    for year in years:
        level = styles.year_gray(year)
        scene.styles.setdefault(year_style_key(year), {"fill": gray_hex(level), "gray": level})


def register_base_styles(scene: SceneGraph) -> None:
    scene.styles.setdefault("pod", {"fill": "#e8e4da", "stroke": "#b8b2a4"})
    scene.styles.setdefault("label", {"fill": "#333333"})
    scene.styles.setdefault("relevance", {"stroke": "#5a5a8f", "opacity": 0.45})
    scene.styles.setdefault("transition", {"stroke": "#c08a3e", "opacity": 0.6})
    scene.styles.setdefault("grid", {"stroke": "#d8d8d8"})


def relevant_pairs(
    history: UserHistory, matrix: RelevanceMatrix, config: LayoutConfig
) -> list[tuple[str, str, Fraction]]:
    """Track pairs of one history worth drawing: positive combined
    relevance, capped at the configured count, strongest first.

    Deterministic: ties rank by the (a, b) key.
    """
    tracks = sorted(history.track_ids)
    pairs: list[tuple[str, str, Fraction]] = []
    for i, a in enumerate(tracks):
        for b in tracks[i + 1 :]:
            value = matrix.combined(a, b)
            if value > 0:
                pairs.append((a, b, value))
    pairs.sort(key=lambda p: (-p[2], p[0], p[1]))
    return pairs[: config.max_relevance_pairs]


def curve_widths(values: Sequence[Fraction], config: LayoutConfig) -> list[float]:
    """Min-max normalize relevance values onto the stroke-width range."""
    if not values:
        return []
    lo, hi = min(values), max(values)
    if hi == lo:
        mid = (config.curve_width_min + config.curve_width_max) / 2
        return [mid] * len(values)
    span = config.curve_width_max - config.curve_width_min
    return [
        config.curve_width_min + float((v - lo) / (hi - lo)) * span
        for v in values
    ]


def genre_order_for(catalog: Catalog, genres_present: set[str]) -> list[str]:
    """Genres of a history in canonical catalog order."""
    return [g for g in catalog.genres if g in genres_present]
