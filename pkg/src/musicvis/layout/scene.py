"""Serializable scene graphs: the geometry a client renders verbatim.

Coordinates are abstract units on a y-down canvas; clients scale uniformly.
Angles are radians measured clockwise from 12 o'clock, so
point = (cx + r*sin(a), cy - r*cos(a)).

Serialization is canonical: fixed key order, 6-decimal coordinates, compact
separators; equal scenes serialize to byte-equal JSON. Angles are kept at
full precision because arc spans must telescope to a full circle within
1e-9 radians.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

SCENE_VERSION = 1

PLOT_BEAN = "bean"
PLOT_TRANSITIONAL_PIE = "transitional_pie"
PLOT_INSTRUMENT = "instrument"
PLOT_CALENDAR = "calendar"
PLOT_KINDS = (PLOT_BEAN, PLOT_TRANSITIONAL_PIE, PLOT_INSTRUMENT, PLOT_CALENDAR)

NODE_KINDS = ("circle", "arc", "bar", "bezier", "text")


class SceneError(ValueError):
    """A scene violates a structural invariant (ids, references, geometry)."""


def polar(cx: float, cy: float, radius: float, angle: float) -> tuple[float, float]:
    """Point at (radius, angle) from a center, clockwise from 12 o'clock."""
    return (cx + radius * math.sin(angle), cy - radius * math.cos(angle))


def round6(value: float) -> float:
    return round(value + 0.0, 6)


@dataclass(frozen=True)
class Node:
    id: str
    kind: str
    geometry: dict
    style: str | None = None
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {"id": self.id, "kind": self.kind, "geometry": self.geometry}
        if self.style is not None:
            out["style"] = self.style
        if self.payload:
            out["payload"] = self.payload
        return out


@dataclass(frozen=True)
class Interaction:
    """What a click/hover on a node should do.

    ``request`` is a service-relative URL the client issues for follow-up
    data (sub-scene or recommendations); ``payload`` carries inline data for
    client-local actions such as highlighting.
    """

    node_id: str
    action: str
    request: str | None = None
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {"node_id": self.node_id, "action": self.action}
        if self.request is not None:
            out["request"] = self.request
        if self.payload:
            out["payload"] = self.payload
        return out


@dataclass
class SceneGraph:
    plot_kind: str
    canvas: tuple[float, float]
    meta: dict = field(default_factory=dict)
    styles: dict = field(default_factory=dict)
    nodes: list[Node] = field(default_factory=list)
    interactions: list[Interaction] = field(default_factory=list)

    def add(self, node: Node) -> Node:
        self.nodes.append(node)
        return node

    def interact(self, interaction: Interaction) -> None:
        self.interactions.append(interaction)

    def node_ids(self) -> set[str]:
        return {n.id for n in self.nodes}

    def validate(self) -> None:
        """Enforce scene invariants; raises SceneError on the first violation."""
        if self.plot_kind not in PLOT_KINDS:
            raise SceneError(f"unknown plot_kind {self.plot_kind!r}")
        ids: set[str] = set()
        for node in self.nodes:
            if node.id in ids:
                raise SceneError(f"duplicate node id {node.id!r}")
            ids.add(node.id)
            if node.kind not in NODE_KINDS:
                raise SceneError(f"node {node.id!r}: unknown kind {node.kind!r}")
            for key, value in node.geometry.items():
                if isinstance(value, float) and not math.isfinite(value):
                    raise SceneError(f"node {node.id!r}: geometry {key} is not finite")
            if node.style is not None and node.style not in self.styles:
                raise SceneError(f"node {node.id!r}: undefined style {node.style!r}")
        for inter in self.interactions:
            if inter.node_id not in ids:
                raise SceneError(f"interaction on unknown node {inter.node_id!r}")

    def to_dict(self) -> dict:
        return {
            "scene_version": SCENE_VERSION,
            "plot_kind": self.plot_kind,
            "canvas": {"width": round6(self.canvas[0]), "height": round6(self.canvas[1])},
            "meta": {key: self.meta[key] for key in sorted(self.meta)},
            "styles": {key: self.styles[key] for key in sorted(self.styles)},
            "nodes": [n.to_dict() for n in self.nodes],
            "interactions": [i.to_dict() for i in self.interactions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), ensure_ascii=False)


def circle(node_id: str, cx: float, cy: float, r: float, style: str | None = None, **payload) -> Node:
    geom = {"cx": round6(cx), "cy": round6(cy), "r": round6(r)}
    return Node(node_id, "circle", geom, style, dict(payload))


def arc(
    node_id: str,
    cx: float,
    cy: float,
    r_inner: float,
    r_outer: float,
    start_angle: float,
    end_angle: float,
    style: str | None = None,
    **payload,
) -> Node:
    # angles deliberately unrounded; spans must sum exactly around the disc
    geom = {
        "cx": round6(cx),
        "cy": round6(cy),
        "r_inner": round6(r_inner),
        "r_outer": round6(r_outer),
        "start_angle": start_angle,
        "end_angle": end_angle,
    }
    return Node(node_id, "arc", geom, style, dict(payload))


def bar(
    node_id: str,
    x: float,
    y: float,
    width: float,
    height: float,
    style: str | None = None,
    angle: float = 0.0,
    **payload,
) -> Node:
    geom = {"x": round6(x), "y": round6(y), "width": round6(width), "height": round6(height)}
    if angle:
        geom["angle"] = angle
    return Node(node_id, "bar", geom, style, dict(payload))


def bezier(
    node_id: str,
    p1: tuple[float, float],
    c1: tuple[float, float],
    c2: tuple[float, float],
    p2: tuple[float, float],
    width: float,
    style: str | None = None,
    **payload,
) -> Node:
    geom = {
        "x1": p1[0], "y1": p1[1],
        "cx1": round6(c1[0]), "cy1": round6(c1[1]),
        "cx2": round6(c2[0]), "cy2": round6(c2[1]),
        "x2": p2[0], "y2": p2[1],
        "width": round6(width),
    }
    return Node(node_id, "bezier", geom, style, dict(payload))


def text(node_id: str, x: float, y: float, content: str, style: str | None = None, **payload) -> Node:
    geom = {"x": round6(x), "y": round6(y), "text": content}
    return Node(node_id, "text", geom, style, dict(payload))
