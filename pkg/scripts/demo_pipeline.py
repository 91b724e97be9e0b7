#!/usr/bin/env python3
"""End-to-end demo: generate data, ingest, build relevance, emit scenes.

Writes everything under ./demo_out/ and prints a few summary numbers.
Start the API afterwards with:

    musicvis serve --snapshot demo_out/snapshot.json
"""

import json
from pathlib import Path

from musicvis.datagen import GenSpec, generate, write_catalog_csv, write_events_csv
from musicvis.layout import (
    encode_styles,
    layout_bean,
    layout_calendar,
    layout_instrument,
    layout_transitional_pie,
)
from musicvis.relevance import build_matrix, save_matrix_csv
from musicvis.sessions import interval_stats, segment_sessions
from musicvis.store import DatasetSnapshot, save_snapshot

OUT = Path("demo_out")


def main() -> None:
    OUT.mkdir(exist_ok=True)
    spec = GenSpec(n_users=25, n_tracks=150, events_per_user=80, seed=2024)
    catalog, events = generate(spec)
    write_events_csv(events, OUT / "events.csv")
    write_catalog_csv(catalog, OUT / "catalog.csv")

    snapshot = DatasetSnapshot.build(catalog, events, created_at=0)
    content_hash = save_snapshot(snapshot, OUT / "snapshot.json")
    print(f"snapshot {content_hash[:12]} users={snapshot.n_users} tracks={len(catalog)}")

    matrix = build_matrix(snapshot)
    save_matrix_csv(matrix, OUT / "matrix.csv")
    print(f"relevance pairs: {len(matrix)}")

    stats = interval_stats(snapshot.histories)
    print(f"gaps: {len(stats)}, share under an hour: {stats.fraction_below(3600):.3f}")

    styles = encode_styles(catalog)
    user = sorted(snapshot.histories)[0]
    history = snapshot.histories[user]
    sessions = segment_sessions(history)
    scenes = {
        "bean": layout_bean([history], {user: sessions}, catalog, styles),
        "transitional_pie": layout_transitional_pie(history, matrix, catalog, styles),
        "instrument": layout_instrument(history, matrix, catalog, styles),
        "calendar": layout_calendar(history, sessions, catalog, styles),
    }
    for kind, scene in scenes.items():
        path = OUT / f"scene_{user}_{kind}.json"
        path.write_text(json.dumps(scene.to_dict(), indent=1))
        print(f"{kind}: {len(scene.nodes)} nodes -> {path}")


if __name__ == "__main__":
    main()
