import json
import math
from pathlib import Path

import pytest

from musicvis.layout import (
    LayoutConfig,
    encode_styles,
    layout_bean,
    layout_bean_unfold,
    layout_calendar,
    layout_calendar_expand,
    layout_instrument,
    layout_transitional_pie,
)
from musicvis.layout.scene import SceneError, SceneGraph, circle, Interaction
from musicvis.layout.styles import PALETTE12
from musicvis.model import AccessEvent, Catalog, Track, UserHistory
from musicvis.relevance import build_matrix
from musicvis.sessions import segment_sessions
from musicvis.store import DatasetSnapshot

from scene_checks import check_scene, count_beans

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def f1(f1_snapshot):
    matrix = build_matrix(f1_snapshot)
    styles = encode_styles(f1_snapshot.catalog)
    sessions = {u: segment_sessions(h) for u, h in f1_snapshot.histories.items()}
    return f1_snapshot, matrix, styles, sessions


# --- style encoding ---------------------------------------------------------

def test_palette_follows_canonical_order():
    catalog = Catalog.from_tracks(
        [Track("a", "pop", 2010), Track("b", "pop", 2011), Track("c", "rock", 2012)]
    )
    styles = encode_styles(catalog)
    assert styles.genre_color("pop") == PALETTE12[0]
    assert styles.genre_color("rock") == PALETTE12[1]


def test_palette_injective_past_twelve():
    catalog = Catalog.from_tracks(
        [Track(f"t{i}", f"genre{i:02d}", 2000) for i in range(30)]
    )
    styles = encode_styles(catalog)
    colors = list(styles.genre_palette.values())
    assert len(set(colors)) == len(colors) == 30


def test_year_ramp_endpoints():
    catalog = Catalog.from_tracks(
        [Track("old", "pop", 1990), Track("new", "pop", 2020)]
    )
    styles = encode_styles(catalog)
    assert styles.year_gray(1990) == pytest.approx(0.90)
    assert styles.year_gray(2020) == pytest.approx(0.15)
    mid = styles.year_gray(2005)
    assert 0.15 < mid < 0.90


def test_year_ramp_degenerate_range():
    catalog = Catalog.from_tracks([Track("a", "pop", 2010)])
    styles = encode_styles(catalog)
    assert styles.year_gray(2010) == pytest.approx(0.525)


def test_year_ramp_monotone():
    catalog = Catalog.from_tracks(
        [Track("old", "pop", 1990), Track("new", "pop", 2020)]
    )
    styles = encode_styles(catalog)
    grays = [styles.year_gray(y) for y in range(1990, 2021)]
    assert all(a >= b for a, b in zip(grays, grays[1:]))


# --- bean plot ----------------------------------------------------------------

def test_bean_pod_radius_sqrt_rule(f1):
    snapshot, _, styles, _ = f1
    events = tuple(AccessEvent("u", "a", t) for t in [0, 10, 20]) + (AccessEvent("u", "a", 99_999),)
    history = UserHistory("u", events)
    sessions = segment_sessions(history)
    assert [len(s) for s in sessions] == [3, 1]
    scene = layout_bean([history], {"u": sessions}, snapshot.catalog, styles)
    pods = [n for n in scene.nodes if n.payload.get("role") == "pod"]
    assert len(pods) == 2
    ratio = pods[0].geometry["r"] / pods[1].geometry["r"]
    assert ratio == pytest.approx(math.sqrt(3))


def test_bean_three_users_three_rows(f1):
    snapshot, _, styles, sessions = f1
    hists = [snapshot.histories[u] for u in sorted(snapshot.histories)]
    scene = layout_bean(hists, sessions, snapshot.catalog, styles)
    labels = [n for n in scene.nodes if n.payload.get("role") == "row-label"]
    assert [n.payload["user_id"] for n in labels] == ["u1", "u2", "u3"]
    rows = {n.geometry["y"] for n in labels}
    assert len(rows) == 3
    assert count_beans(scene) == sum(len(h) for h in hists)
    check_scene(scene)


def test_bean_unfold_subsession_pods(f1):
    snapshot, _, styles, _ = f1
    catalog = snapshot.catalog  # genres: a,b pop; c rock
    events = tuple(
        AccessEvent("u", t, i * 10) for i, t in enumerate(["a", "b", "c"])
    )
    session = segment_sessions(UserHistory("u", events))[0]
    scene = layout_bean_unfold("u", session, 0, catalog, styles)
    pods = [n for n in scene.nodes if n.payload.get("role") == "pod"]
    assert [p.payload["genre"] for p in pods] == ["pop", "rock"]
    assert count_beans(scene) == 3
    radius_ratio = pods[0].geometry["r"] / pods[1].geometry["r"]
    assert radius_ratio == pytest.approx(math.sqrt(2))


def test_bean_pods_chronological(f1):
    snapshot, _, styles, sessions = f1
    history = snapshot.histories["u3"]
    scene = layout_bean([history], {"u3": sessions["u3"]}, snapshot.catalog, styles)
    pods = [n for n in scene.nodes if n.payload.get("role") == "pod"]
    xs = [p.geometry["cx"] for p in pods]
    assert xs == sorted(xs)
    unfolds = [i for i in scene.interactions if i.action == "unfold"]
    assert len(unfolds) == len(pods)
    assert unfolds[0].request == "/api/users/u3/plot/bean?unfold=0"


# --- transitional pie ---------------------------------------------------------

def test_pie_arc_proportions(f1):
    snapshot, matrix, styles, _ = f1
    events = tuple(AccessEvent("u", "a", i * 10) for i in range(6)) + tuple(
        AccessEvent("u", "c", 60 + i * 10) for i in range(2)
    )
    history = UserHistory("u", events)
    scene = layout_transitional_pie(history, matrix, snapshot.catalog, styles)
    arcs = {n.payload["genre"]: n for n in scene.nodes if n.kind == "arc"}
    pop_span = arcs["pop"].geometry["end_angle"] - arcs["pop"].geometry["start_angle"]
    rock_span = arcs["rock"].geometry["end_angle"] - arcs["rock"].geometry["start_angle"]
    assert pop_span == pytest.approx(2 * math.pi * 0.75)
    assert rock_span == pytest.approx(2 * math.pi * 0.25)
    check_scene(scene)


def test_pie_outer_curve_per_genre_crossing(f1):
    snapshot, matrix, styles, _ = f1
    # pop -> rock -> pop: two crossings
    events = (
        AccessEvent("u", "a", 0),
        AccessEvent("u", "c", 10),
        AccessEvent("u", "b", 20),
    )
    scene = layout_transitional_pie(UserHistory("u", events), matrix, snapshot.catalog, styles)
    outer = [n for n in scene.nodes if n.payload.get("role") == "transition-curve"]
    assert len(outer) == 2
    assert outer[0].payload["from_track"] == "a"
    assert outer[0].payload["to_track"] == "c"


def test_pie_inner_curves_match_matrix(f1):
    snapshot, matrix, styles, _ = f1
    history = snapshot.histories["u2"]  # tracks a, b, c all pairwise relevant
    scene = layout_transitional_pie(history, matrix, snapshot.catalog, styles)
    inner = [n for n in scene.nodes if n.payload.get("role") == "relevance-curve"]
    drawn = {(n.payload["track_a"], n.payload["track_b"]) for n in inner}
    assert drawn == {("a", "b"), ("a", "c"), ("b", "c")}
    widest = max(inner, key=lambda n: n.geometry["width"])
    assert {widest.payload["track_a"], widest.payload["track_b"]} == {"a", "b"}
    check_scene(scene)


def test_pie_relevance_cap(f1):
    snapshot, matrix, styles, _ = f1
    history = snapshot.histories["u2"]
    config = LayoutConfig(max_relevance_pairs=1)
    scene = layout_transitional_pie(history, matrix, snapshot.catalog, styles, config)
    inner = [n for n in scene.nodes if n.payload.get("role") == "relevance-curve"]
    assert len(inner) == 1
    assert {inner[0].payload["track_a"], inner[0].payload["track_b"]} == {"a", "b"}


def test_pie_empty_history(f1):
    snapshot, matrix, styles, _ = f1
    scene = layout_transitional_pie(UserHistory("u", ()), matrix, snapshot.catalog, styles)
    assert [n for n in scene.nodes if n.kind == "arc"] == []


# --- instrument -----------------------------------------------------------------

def test_instrument_year_tick_gray(f1):
    snapshot, matrix, styles, _ = f1
    history = snapshot.histories["u2"]
    scene = layout_instrument(history, matrix, snapshot.catalog, styles)
    # catalog years 1998..2012; b (2012, newest) must be darkest (0.15)
    ticks = {n.payload["track_id"]: n for n in scene.nodes if n.payload.get("role") == "year-tick"}
    style_b = scene.styles[ticks["b"].style]
    assert style_b["gray"] == pytest.approx(0.15)
    style_c = scene.styles[ticks["c"].style]
    assert style_c["gray"] == pytest.approx(0.90)


def test_instrument_neck_proportions(f1):
    snapshot, matrix, styles, _ = f1
    events = tuple(AccessEvent("u", "a", i * 10) for i in range(3)) + (
        AccessEvent("u", "c", 40),
    )
    config = LayoutConfig()
    scene = layout_instrument(UserHistory("u", events), matrix, snapshot.catalog, styles, config)
    segs = {n.payload["genre"]: n for n in scene.nodes if n.payload.get("role") == "neck-segment"}
    total = sum(n.geometry["height"] for n in segs.values())
    assert total == pytest.approx(config.neck_length)
    assert segs["pop"].geometry["height"] == pytest.approx(config.neck_length * 0.75)
    check_scene(scene)


def test_instrument_highlight_payload(f1):
    snapshot, matrix, styles, _ = f1
    history = snapshot.histories["u2"]
    scene = layout_instrument(history, matrix, snapshot.catalog, styles)
    highlights = {
        i.node_id: i for i in scene.interactions if i.action == "highlight"
    }
    node_track = {n.id: n.payload["track_id"] for n in scene.nodes if n.payload.get("role") == "track"}
    a_node = next(nid for nid, t in node_track.items() if t == "a")
    assert set(highlights[a_node].payload["track_ids"]) == {"b", "c"}
    # highlighted node ids resolve to nodes of those tracks
    resolved = {node_track[nid] for nid in highlights[a_node].payload["node_ids"]}
    assert resolved == {"b", "c"}


def test_instrument_headstock_covers_years(f1):
    snapshot, matrix, styles, _ = f1
    history = snapshot.histories["u2"]
    config = LayoutConfig()
    scene = layout_instrument(history, matrix, snapshot.catalog, styles, config)
    heads = [n for n in scene.nodes if n.payload.get("role") == "head-segment"]
    assert sum(n.geometry["height"] for n in heads) == pytest.approx(config.head_length)
    assert {n.payload["release_year"] for n in heads} == {1998, 2010, 2012}


# --- calendar --------------------------------------------------------------------

def test_calendar_rows_and_columns(f1):
    snapshot, matrix, styles, _ = f1
    # two distinct days; second event at 09:12 local
    events = (
        AccessEvent("u", "a", 0),
        AccessEvent("u", "b", 86_400 + 9 * 3600 + 12 * 60),
    )
    history = UserHistory("u", events)
    sessions = segment_sessions(history)
    scene = layout_calendar(history, sessions, snapshot.catalog, styles)
    day_rows = [n for n in scene.nodes if n.payload.get("role") == "day-label"]
    assert len(day_rows) == 2
    pods = [n for n in scene.nodes if n.payload.get("role") == "pod"]
    assert pods[1].payload["slot"] == 9
    hour_labels = [n for n in scene.nodes if n.payload.get("role") == "hour-label"]
    assert len(hour_labels) == 24
    check_scene(scene)


def test_calendar_recommendation_descriptors(f1):
    snapshot, matrix, styles, sessions = f1
    history = snapshot.histories["u2"]
    scene = layout_calendar(history, sessions["u2"], snapshot.catalog, styles, k=5)
    general = [i for i in scene.interactions if i.action == "recommend_general"]
    assert general[0].request == "/api/users/u2/recommend?mode=general&k=5"
    slots = [i for i in scene.interactions if i.action == "recommend_slot"]
    assert len(slots) == 24
    assert slots[9].request == "/api/users/u2/recommend?mode=time_slot&k=5&slot=9"
    expands = [i for i in scene.interactions if i.action == "expand"]
    assert expands[0].request == "/api/users/u2/plot/calendar?expand=0"


def test_calendar_expand_line(f1):
    snapshot, matrix, styles, sessions = f1
    session = sessions["u2"][0]
    scene = layout_calendar_expand("u2", session, 0, matrix, snapshot.catalog, styles, k=4)
    beans = [n for n in scene.nodes if n.payload.get("role") == "bean"]
    assert len(beans) == len(session)
    xs = [n.geometry["cx"] for n in beans]
    spacing = {round(b - a, 6) for a, b in zip(xs, xs[1:])}
    assert len(spacing) == 1  # equally spaced
    hovers = [i for i in scene.interactions if i.action == "hover"]
    assert hovers[0].payload == {"track_id": "a", "genre": "pop", "release_year": 2010}
    clicks = [i for i in scene.interactions if i.action == "recommend_track"]
    assert clicks[0].request == "/api/users/u2/recommend?mode=single_track&k=4&seed=a"
    assert scene.meta["k"] == 4
    check_scene(scene)


def test_calendar_expand_relevance_curves(f1):
    snapshot, matrix, styles, sessions = f1
    session = sessions["u2"][0]
    scene = layout_calendar_expand("u2", session, 0, matrix, snapshot.catalog, styles)
    curves = [n for n in scene.nodes if n.payload.get("role") == "relevance-curve"]
    assert {(n.payload["track_a"], n.payload["track_b"]) for n in curves} == {
        ("a", "b"), ("a", "c"), ("b", "c")
    }


def test_calendar_expand_titles_flag(f1):
    snapshot, matrix, styles, sessions = f1
    session = sessions["u2"][0]
    scene = layout_calendar_expand(
        "u2", session, 0, matrix, snapshot.catalog, styles, expose_titles=True
    )
    hovers = [i for i in scene.interactions if i.action == "hover"]
    assert hovers[0].payload["title"] == "Alpha"


# --- cross-cutting ------------------------------------------------------------------

def test_scene_validation_catches_bad_reference():
    scene = SceneGraph(plot_kind="bean", canvas=(10, 10))
    scene.add(circle("c1", 1, 1, 1))
    scene.interact(Interaction(node_id="ghost", action="unfold"))
    with pytest.raises(SceneError):
        scene.validate()


def test_scene_validation_catches_duplicate_ids():
    scene = SceneGraph(plot_kind="bean", canvas=(10, 10))
    scene.add(circle("c1", 1, 1, 1))
    scene.add(circle("c1", 2, 2, 1))
    with pytest.raises(SceneError):
        scene.validate()


def test_scene_validation_catches_nonfinite():
    scene = SceneGraph(plot_kind="bean", canvas=(10, 10))
    scene.add(circle("c1", math.inf, 1, 1))
    with pytest.raises(SceneError):
        scene.validate()


def scene_for(kind, f1):
    snapshot, matrix, styles, sessions = f1
    history = snapshot.histories["u2"]
    if kind == "bean":
        return layout_bean([history], {"u2": sessions["u2"]}, snapshot.catalog, styles)
    if kind == "transitional_pie":
        return layout_transitional_pie(history, matrix, snapshot.catalog, styles)
    if kind == "instrument":
        return layout_instrument(history, matrix, snapshot.catalog, styles)
    return layout_calendar(history, sessions["u2"], snapshot.catalog, styles)


@pytest.mark.parametrize("kind", ["bean", "transitional_pie", "instrument", "calendar"])
def test_scene_json_deterministic(kind, f1):
    assert scene_for(kind, f1).to_json() == scene_for(kind, f1).to_json()


@pytest.mark.parametrize("kind", ["bean", "transitional_pie", "instrument", "calendar"])
def test_scene_golden(kind, f1):
    """Byte-frozen F1 scenes guard against accidental geometry drift."""
    golden = GOLDEN_DIR / f"f1_u2_{kind}.json"
    current = json.dumps(scene_for(kind, f1).to_dict(), indent=1, sort_keys=False)
    assert golden.exists(), f"regenerate goldens: scripts/regen_goldens.py ({golden})"
    assert current == golden.read_text()
