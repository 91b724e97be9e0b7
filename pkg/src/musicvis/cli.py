"""Command-line interface for batch preprocessing and the API server.

Exit codes: 0 success, 1 validation/data error, 2 IO error.
"""

from __future__ import annotations

import functools
import sys
import time
from fractions import Fraction

import click

from . import datagen as dg
from .model import DatasetError
from .recommend import (
    EmptySeedError,
    InvalidQueryError,
    RecommendationQuery,
    RecommenderConfig,
    UnknownTrackError,
    UnknownUserError,
    recommend as run_recommend,
)
from .relevance import RelevanceConfig, build_matrix, load_matrix_csv, save_matrix_csv
from .sessions import (
    FitUndefinedError,
    fit_piecewise_powerlaw,
    interval_stats,
    log_histogram,
)
from .service import ConfigError, ServiceConfig, ServiceState, create_app, default_frontend_dir, load_config, make_bundle
from .store import (
    DatasetSnapshot,
    ParseError,
    SnapshotCorruptionError,
    load_snapshot,
    parse_catalog_csv,
    parse_events_csv,
    save_snapshot,
)

VALIDATION_ERRORS = (
    DatasetError,
    ParseError,
    InvalidQueryError,
    EmptySeedError,
    FitUndefinedError,
    dg.GenerationError,
    ConfigError,
    ValueError,
)
IO_ERRORS = (OSError, SnapshotCorruptionError)


def exit_codes(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (UnknownUserError, UnknownTrackError) as exc:
            click.echo(f"error: unknown id {exc.args[0]!r}", err=True)
            sys.exit(1)
        except SnapshotCorruptionError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except VALIDATION_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except IO_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


@click.group()
def main() -> None:
    """Listening-history analytics: ingest, relevance, stats, recommend, serve."""


@main.command()
@click.option("--events", "events_path", required=True, type=click.Path())
@click.option("--catalog", "catalog_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--created-at", type=int, default=None, help="Snapshot timestamp (default: now).")
@exit_codes
def ingest(events_path: str, catalog_path: str, out_path: str, created_at: int | None) -> None:
    """Parse CSVs, validate, and write an immutable snapshot."""
    with open(catalog_path, "rb") as fh:
        catalog = parse_catalog_csv(fh)
    with open(events_path, "rb") as fh:
        events = parse_events_csv(fh)
    snapshot = DatasetSnapshot.build(
        catalog, events, created_at=int(time.time()) if created_at is None else created_at
    )
    content_hash = save_snapshot(snapshot, out_path)
    click.echo(content_hash)


@main.group()
def relevance() -> None:
    """Relevance-matrix commands."""


@relevance.command("build")
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
@click.option("--t0", type=int, default=3600, show_default=True, help="Co-access window, seconds.")
@click.option("--lambda", "weight", default="0.25", show_default=True, help="Indirect weight (exact rational).")
@click.option("--mode", type=click.Choice(["summed", "shared"]), default="summed", show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@exit_codes
def relevance_build(snapshot_path: str, t0: int, weight: str, mode: str, out_path: str) -> None:
    """Build the pair relevance table from a snapshot."""
    snapshot = load_snapshot(snapshot_path)
    config = RelevanceConfig(window_seconds=t0, indirect_weight=Fraction(weight), indirect_mode=mode)
    matrix = build_matrix(snapshot, config)
    save_matrix_csv(matrix, out_path)
    click.echo(f"{len(matrix)} pairs over {matrix.n_users} users -> {out_path}")


@main.group()
def stats() -> None:
    """Interval statistics commands."""


@stats.command("intervals")
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
@click.option("--bins", type=int, default=50, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None, help="CSV output (default stdout).")
@exit_codes
def stats_intervals(snapshot_path: str, bins: int, out_path: str | None) -> None:
    """Histogram the inter-access gaps and fit the two-segment power law.

    Emits bin_low,bin_high,count,fit_value where fit_value is the fitted
    expected count for the bin.
    """
    snapshot = load_snapshot(snapshot_path)
    stats_ = interval_stats(snapshot.histories)
    fit = fit_piecewise_powerlaw(stats_, bins=bins)
    edges, counts = log_histogram(stats_, bins=bins)
    total = counts.sum()
    lines = ["bin_low,bin_high,count,fit_value"]
    for lo, hi, count in zip(edges[:-1], edges[1:], counts):
        center = (lo * hi) ** 0.5
        fitted = fit.predict_density(center) * total * (hi - lo)
        lines.append(f"{lo:.6f},{hi:.6f},{count},{fitted:.6f}")
    lines.append(
        f"# breakpoint={fit.breakpoint:.3f}s exponents=({fit.exponents[0]:.3f},"
        f"{fit.exponents[1]:.3f}) sse={fit.sse:.6f}"
    )
    body = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        click.echo(body, nl=False)


@main.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
@click.option("--matrix", "matrix_path", type=click.Path(), default=None,
              help="Pair table CSV; built from the snapshot when omitted.")
@click.option("--user", "user_id", required=True)
@click.option("--mode", type=click.Choice(["general", "time_slot", "single_track"]), required=True)
@click.option("--slot", type=int, default=None)
@click.option("--seed", "seed_track", default=None)
@click.option("-k", type=int, default=10, show_default=True)
@click.option("--t0", type=int, default=3600, show_default=True)
@click.option("--lambda", "weight", default="0.25", show_default=True)
@click.option("--utc-offset", "utc_offset_minutes", type=int, default=0, show_default=True)
@exit_codes
def recommend(snapshot_path, matrix_path, user_id, mode, slot, seed_track, k, t0, weight, utc_offset_minutes) -> None:
    """Print ranked recommendations for one user."""
    snapshot = load_snapshot(snapshot_path)
    config = RelevanceConfig(window_seconds=t0, indirect_weight=Fraction(weight))
    if matrix_path:
        matrix = load_matrix_csv(matrix_path, config, n_users=snapshot.n_users)
    else:
        matrix = build_matrix(snapshot, config)
    query = RecommendationQuery(user_id=user_id, mode=mode, slot=slot, seed_track=seed_track, k=k)
    result = run_recommend(
        snapshot, matrix, query, RecommenderConfig(utc_offset_minutes=utc_offset_minutes)
    )
    for track_id, score in result.items:
        click.echo(f"{track_id}\t{float(score):.6f}")


@main.command()
@click.option("--config", "config_path", type=click.Path(), default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--snapshot", "snapshot_path", type=click.Path(), default=None)
@click.option("--events", "events_path", type=click.Path(), default=None)
@click.option("--catalog", "catalog_path", type=click.Path(), default=None)
@click.option("--matrix", "matrix_path", type=click.Path(), default=None)
@click.option("--t0", type=int, default=None)
@click.option("--lambda", "weight", default=None)
@click.option("--k-default", type=int, default=None)
@click.option("--utc-offset", "utc_offset_minutes", type=int, default=None)
@click.option("--expose-titles", is_flag=True, default=False)
@click.option("--frontend", "frontend_dir", type=click.Path(), default=None)
@exit_codes
def serve(config_path, host, port, snapshot_path, events_path, catalog_path, matrix_path,
          t0, weight, k_default, utc_offset_minutes, expose_titles, frontend_dir) -> None:
    """Serve the JSON API (and the web UI when a built frontend exists)."""
    import uvicorn

    config = load_config(config_path) if config_path else ServiceConfig()
    overrides: dict = {}
    if host is not None:
        overrides["host"] = host
    if port is not None:
        overrides["port"] = port
    if snapshot_path is not None:
        overrides["snapshot_path"] = snapshot_path
    if events_path is not None:
        overrides["events_path"] = events_path
    if catalog_path is not None:
        overrides["catalog_path"] = catalog_path
    if matrix_path is not None:
        overrides["matrix_path"] = matrix_path
    if t0 is not None:
        overrides["window_seconds"] = t0
    if weight is not None:
        overrides["indirect_weight"] = Fraction(weight)
    if k_default is not None:
        overrides["k_default"] = k_default
    if utc_offset_minutes is not None:
        overrides["utc_offset_minutes"] = utc_offset_minutes
    if expose_titles:
        overrides["expose_titles"] = True
    if frontend_dir is not None:
        overrides["frontend_dir"] = frontend_dir
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)

    snapshot = _load_or_build_snapshot(config)
    matrix = None
    if config.matrix_path:
        matrix = load_matrix_csv(
            config.matrix_path,
            RelevanceConfig(window_seconds=config.window_seconds, indirect_weight=config.indirect_weight),
            n_users=snapshot.n_users,
        )
    state = ServiceState(make_bundle(snapshot, config, matrix))
    app = create_app(state, frontend_dir=config.frontend_dir or default_frontend_dir())
    click.echo(f"serving snapshot {state.bundle.snapshot_hash[:12]} on {config.host}:{config.port}", err=True)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")


def _load_or_build_snapshot(config: ServiceConfig) -> DatasetSnapshot:
    if config.snapshot_path:
        return load_snapshot(config.snapshot_path)
    if config.events_path and config.catalog_path:
        with open(config.catalog_path, "rb") as fh:
            catalog = parse_catalog_csv(fh)
        with open(config.events_path, "rb") as fh:
            events = parse_events_csv(fh)
        return DatasetSnapshot.build(catalog, events, created_at=int(time.time()))
    raise ConfigError("config needs either snapshot= or both events= and catalog=")


@main.command()
@click.option("--spec", "spec_path", type=click.Path(), default=None,
              help="GenSpec JSON (defaults when omitted).")
@click.option("--out-events", required=True, type=click.Path())
@click.option("--out-catalog", required=True, type=click.Path())
@click.option("--seed", type=int, default=None, help="Override the generator spec's RNG seed.")
@exit_codes
def datagen(spec_path, out_events, out_catalog, seed) -> None:
    """Generate a synthetic catalog and event log."""
    if spec_path:
        with open(spec_path, "r", encoding="utf-8") as fh:
            spec = dg.GenSpec.from_json(fh.read())
    else:
        spec = dg.GenSpec()
    if seed is not None:
        from dataclasses import replace

        spec = replace(spec, seed=seed)
    catalog, events = dg.generate(spec)
    dg.write_catalog_csv(catalog, out_catalog)
    dg.write_events_csv(events, out_events)
    click.echo(f"{len(events)} events over {spec.n_users} users -> {out_events}")


if __name__ == "__main__":
    main()
