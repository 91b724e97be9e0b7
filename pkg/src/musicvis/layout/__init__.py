"""Deterministic, serializable scene graphs for the four plots."""

from .bean import layout_bean, layout_bean_unfold
from .calendar import layout_calendar, layout_calendar_expand
from .config import LayoutConfig
from .instrument import layout_instrument
from .pie import layout_transitional_pie
from .scene import (
    PLOT_BEAN,
    PLOT_CALENDAR,
    PLOT_INSTRUMENT,
    PLOT_KINDS,
    PLOT_TRANSITIONAL_PIE,
    SCENE_VERSION,
    Interaction,
    Node,
    SceneError,
    SceneGraph,
)
from .styles import StyleEncoding, encode_styles

__all__ = [
    "LayoutConfig",
    "StyleEncoding",
    "encode_styles",
    "layout_bean",
    "layout_bean_unfold",
    "layout_calendar",
    "layout_calendar_expand",
    "layout_instrument",
    "layout_transitional_pie",
    "SceneGraph",
    "SceneError",
    "Node",
    "Interaction",
    "SCENE_VERSION",
    "PLOT_KINDS",
    "PLOT_BEAN",
    "PLOT_TRANSITIONAL_PIE",
    "PLOT_INSTRUMENT",
    "PLOT_CALENDAR",
]
