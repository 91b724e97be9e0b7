"""Scene-graph invariant checks shared by the layout and acceptance suites."""

from __future__ import annotations

import math

TAU = 2 * math.pi


def check_arcs_sum_to_circle(scene, tol=1e-9):
    """Whenever a scene draws arcs, their spans must close the disc."""
    spans = [
        n.geometry["end_angle"] - n.geometry["start_angle"]
        for n in scene.nodes
        if n.kind == "arc"
    ]
    if spans:
        assert abs(sum(spans) - TAU) < tol, f"arc spans sum to {sum(spans)!r}"


def check_chronological_angles(scene):
    """Track points advance clockwise with time inside their arc/disc."""
    groups: dict[str, list] = {}
    for n in scene.nodes:
        if n.payload.get("role") == "track":
            key = n.payload["genre"] if scene.plot_kind == "transitional_pie" else "disc"
            groups.setdefault(key, []).append(n)
    for nodes in groups.values():
        angles = [n.payload["angle"] for n in nodes]
        stamps = [n.payload["timestamp"] for n in nodes]
        assert all(a < b for a, b in zip(angles, angles[1:]))
        for (a1, t1), (a2, t2) in zip(zip(angles, stamps), zip(angles[1:], stamps[1:])):
            if t2 > t1:
                assert a2 > a1


def check_bezier_endpoints(scene):
    """Curve endpoints must coincide exactly with existing node positions."""
    anchors = {
        (n.geometry["cx"], n.geometry["cy"])
        for n in scene.nodes
        if n.kind == "circle"
    }
    for n in scene.nodes:
        if n.kind == "bezier":
            assert (n.geometry["x1"], n.geometry["y1"]) in anchors, n.id
            assert (n.geometry["x2"], n.geometry["y2"]) in anchors, n.id


def count_beans(scene) -> int:
    return sum(1 for n in scene.nodes if n.payload.get("role") == "bean")


def check_scene(scene):
    scene.validate()
    check_arcs_sum_to_circle(scene)
    check_chronological_angles(scene)
    check_bezier_endpoints(scene)
