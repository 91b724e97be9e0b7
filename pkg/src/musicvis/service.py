"""Read-only HTTP API over one snapshot + relevance matrix pair.

Every request binds to exactly one immutable bundle: handlers read the
current bundle reference once, so swapping in a new snapshot mid-traffic
can never mix versions within a response. Responses echo the snapshot hash
they were computed from and are byte-deterministic for a fixed
(bundle, request) pair.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware

from .layout import (
    PLOT_BEAN,
    PLOT_CALENDAR,
    PLOT_INSTRUMENT,
    PLOT_KINDS,
    PLOT_TRANSITIONAL_PIE,
    SCENE_VERSION,
    LayoutConfig,
    StyleEncoding,
    encode_styles,
    layout_bean,
    layout_bean_unfold,
    layout_calendar,
    layout_calendar_expand,
    layout_instrument,
    layout_transitional_pie,
)
from .recommend import (
    EmptySeedError,
    InvalidQueryError,
    RecommendationQuery,
    RecommenderConfig,
    UnknownTrackError,
    UnknownUserError,
    recommend,
)
from .relevance import RelevanceConfig, RelevanceMatrix, build_matrix
from .sessions import segment_sessions
from .store import DatasetSnapshot


class ConfigError(ValueError):
    """The service config file is malformed."""


@dataclass(frozen=True)
class ServiceConfig:
    events_path: str | None = None
    catalog_path: str | None = None
    snapshot_path: str | None = None
    matrix_path: str | None = None
    window_seconds: int = 3600
    indirect_weight: Fraction = Fraction(1, 4)
    k_default: int = 10
    utc_offset_minutes: int = 0
    host: str = "127.0.0.1"
    port: int = 8000
    expose_titles: bool = False
    cors_origins: tuple[str, ...] = ("*",)
    frontend_dir: str | None = None

    def __post_init__(self) -> None:
        if self.k_default < 1:
            raise ConfigError("k_default must be >= 1")
        if self.window_seconds <= 0:
            raise ConfigError("t0 must be positive")


_CONFIG_KEYS = {
    "events": "events_path",
    "catalog": "catalog_path",
    "snapshot": "snapshot_path",
    "matrix": "matrix_path",
    "t0": "window_seconds",
    "lambda": "indirect_weight",
    "k_default": "k_default",
    "utc_offset_minutes": "utc_offset_minutes",
    "host": "host",
    "port": "port",
    "expose_titles": "expose_titles",
    "cors_origins": "cors_origins",
    "frontend_dir": "frontend_dir",
}


def parse_config_text(text: str) -> ServiceConfig:
    """Flat ``key = value`` lines; '#' starts a comment; unknown keys fail."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        attr = _CONFIG_KEYS[key]
        if attr in ("window_seconds", "k_default", "utc_offset_minutes", "port"):
            values[attr] = int(value)
        elif attr == "indirect_weight":
            values[attr] = Fraction(value)
        elif attr == "expose_titles":
            values[attr] = value.lower() in ("1", "true", "yes", "on")
        elif attr == "cors_origins":
            values[attr] = tuple(v.strip() for v in value.split(",") if v.strip())
        else:
            values[attr] = value
    return ServiceConfig(**values)


def load_config(path: str) -> ServiceConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


@dataclass(frozen=True)
class DataBundle:
    """Everything one request needs, immutable and swappable as a unit."""

    snapshot: DatasetSnapshot
    matrix: RelevanceMatrix
    styles: StyleEncoding
    config: ServiceConfig
    layout_config: LayoutConfig = field(default_factory=LayoutConfig)

    @property
    def snapshot_hash(self) -> str:
        return self.snapshot.content_hash


def make_bundle(snapshot: DatasetSnapshot, config: ServiceConfig | None = None,
                matrix: RelevanceMatrix | None = None) -> DataBundle:
    config = config or ServiceConfig()
    if matrix is None:
        matrix = build_matrix(
            snapshot,
            RelevanceConfig(
                window_seconds=config.window_seconds,
                indirect_weight=config.indirect_weight,
            ),
        )
    return DataBundle(
        snapshot=snapshot, matrix=matrix, styles=encode_styles(snapshot.catalog),
        config=config,
    )


class ServiceState:
    """Holder for the current bundle; assignment is the atomic swap."""

    def __init__(self, bundle: DataBundle | None = None):
        self.bundle = bundle

    def swap(self, bundle: DataBundle) -> None:
        self.bundle = bundle


def _scene_response(scene, snapshot_hash: str) -> Response:
    scene.meta["snapshot_hash"] = snapshot_hash
    return Response(content=scene.to_json(), media_type="application/json")


def create_app(state: ServiceState, frontend_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="musicvis", docs_url=None, redoc_url=None)
    origins = state.bundle.config.cors_origins if state.bundle else ("*",)
    app.add_middleware(
        CORSMiddleware, allow_origins=list(origins), allow_methods=["GET"],
        allow_headers=["*"],
    )

    def current() -> DataBundle:
        bundle = state.bundle
        if bundle is None:
            raise HTTPException(status_code=503, detail="no snapshot loaded")
        return bundle

    @app.get("/api/users")
    def list_users() -> Response:
        bundle = current()
        body = {
            "snapshot_hash": bundle.snapshot_hash,
            "users": [
                {"user_id": user, "event_count": len(bundle.snapshot.histories[user])}
                for user in sorted(bundle.snapshot.histories)
            ],
        }
        return Response(json.dumps(body, separators=(",", ":")), media_type="application/json")

    @app.get("/api/users/{user_id}/plot/{kind}")
    def plot(
        user_id: str,
        kind: str,
        unfold: int | None = Query(default=None),
        expand: int | None = Query(default=None),
        scene_version: int = Query(default=SCENE_VERSION),
    ) -> Response:
        bundle = current()
        if kind not in PLOT_KINDS:
            raise HTTPException(status_code=400, detail=f"unknown plot kind {kind!r}")
        if scene_version != SCENE_VERSION:
            raise HTTPException(status_code=400, detail=f"unsupported scene_version {scene_version}")
        if unfold is not None and kind != PLOT_BEAN:
            raise HTTPException(status_code=400, detail="unfold applies to the bean plot only")
        if expand is not None and kind != PLOT_CALENDAR:
            raise HTTPException(status_code=400, detail="expand applies to the calendar plot only")
        snapshot = bundle.snapshot
        if user_id not in snapshot.histories:
            raise HTTPException(status_code=404, detail=f"unknown user {user_id!r}")
        history = snapshot.histories[user_id]
        cfg = bundle.config
        sessions = segment_sessions(history, cfg.window_seconds)

        if unfold is not None or expand is not None:
            index = unfold if unfold is not None else expand
            if not 0 <= index < len(sessions):
                raise HTTPException(status_code=404, detail=f"no session index {index}")
            if unfold is not None:
                scene = layout_bean_unfold(
                    user_id, sessions[index], index, snapshot.catalog, bundle.styles,
                    bundle.layout_config,
                )
            else:
                scene = layout_calendar_expand(
                    user_id, sessions[index], index, bundle.matrix, snapshot.catalog,
                    bundle.styles, bundle.layout_config, k=cfg.k_default,
                    expose_titles=cfg.expose_titles,
                )
            return _scene_response(scene, bundle.snapshot_hash)

        if kind == PLOT_BEAN:
            scene = layout_bean(
                [history], {user_id: sessions}, snapshot.catalog, bundle.styles,
                bundle.layout_config,
            )
        elif kind == PLOT_TRANSITIONAL_PIE:
            scene = layout_transitional_pie(
                history, bundle.matrix, snapshot.catalog, bundle.styles, bundle.layout_config
            )
        elif kind == PLOT_INSTRUMENT:
            scene = layout_instrument(
                history, bundle.matrix, snapshot.catalog, bundle.styles, bundle.layout_config
            )
        else:
            scene = layout_calendar(
                history, sessions, snapshot.catalog, bundle.styles, bundle.layout_config,
                utc_offset_minutes=cfg.utc_offset_minutes, k=cfg.k_default,
            )
        return _scene_response(scene, bundle.snapshot_hash)

    @app.get("/api/users/{user_id}/recommend")
    def recommend_endpoint(
        user_id: str,
        mode: str = Query(...),
        slot: int | None = Query(default=None),
        seed: str | None = Query(default=None),
        k: int | None = Query(default=None),
    ) -> Response:
        bundle = current()
        cfg = bundle.config
        try:
            query = RecommendationQuery(
                user_id=user_id, mode=mode, slot=slot, seed_track=seed,
                k=cfg.k_default if k is None else k,
            )
            result = recommend(
                bundle.snapshot, bundle.matrix, query,
                RecommenderConfig(utc_offset_minutes=cfg.utc_offset_minutes),
            )
        except InvalidQueryError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        except (UnknownUserError, UnknownTrackError) as exc:
            raise HTTPException(status_code=404, detail=str(exc.args[0])) from None
        except EmptySeedError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        body = result.to_dict()
        if cfg.expose_titles:
            for item in body["items"]:
                title = bundle.snapshot.catalog.tracks[item["track_id"]].title
                if title:
                    item["title"] = title
        body = {"snapshot_hash": bundle.snapshot_hash, **body}
        return Response(json.dumps(body, separators=(",", ":")), media_type="application/json")

    if frontend_dir and os.path.isdir(frontend_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")
    return app


def default_frontend_dir() -> str | None:
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return str(candidate) if candidate.is_dir() else None
