#!/usr/bin/env python3
"""Regenerate the frozen F1 scene goldens under tests/golden/.

Run after any intentional geometry change, then review the diff.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from conftest import F1_EVENTS, F1_TRACKS  # noqa: E402

from musicvis.layout import (  # noqa: E402
    encode_styles,
    layout_bean,
    layout_calendar,
    layout_instrument,
    layout_transitional_pie,
)
from musicvis.model import Catalog  # noqa: E402
from musicvis.relevance import build_matrix  # noqa: E402
from musicvis.sessions import segment_sessions  # noqa: E402
from musicvis.store import DatasetSnapshot  # noqa: E402


def main() -> None:
    golden_dir = ROOT / "tests" / "golden"
    golden_dir.mkdir(exist_ok=True)
    snapshot = DatasetSnapshot.build(
        Catalog.from_tracks(F1_TRACKS), F1_EVENTS, created_at=1_700_000_000
    )
    matrix = build_matrix(snapshot)
    styles = encode_styles(snapshot.catalog)
    history = snapshot.histories["u2"]
    sessions = segment_sessions(history)
    scenes = {
        "bean": layout_bean([history], {"u2": sessions}, snapshot.catalog, styles),
        "transitional_pie": layout_transitional_pie(history, matrix, snapshot.catalog, styles),
        "instrument": layout_instrument(history, matrix, snapshot.catalog, styles),
        "calendar": layout_calendar(history, sessions, snapshot.catalog, styles),
    }
    for kind, scene in scenes.items():
        path = golden_dir / f"f1_u2_{kind}.json"
        path.write_text(json.dumps(scene.to_dict(), indent=1, sort_keys=False))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
