#!/usr/bin/env python3
"""Capture API responses for the frontend contract tests.

The UI test suite runs against these recorded bodies, so it exercises
exactly the wire format the service emits.
"""

import sys
from pathlib import Path

from fastapi.testclient import TestClient

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from conftest import F1_EVENTS, F1_TRACKS  # noqa: E402

from musicvis.model import Catalog  # noqa: E402
from musicvis.service import ServiceConfig, ServiceState, create_app, make_bundle  # noqa: E402
from musicvis.store import DatasetSnapshot  # noqa: E402

# keys are fixture names; URLs match exactly what scene interactions emit
# (the mock server in the UI tests routes on the literal URL string)
CAPTURES = {
    "users.json": "/api/users",
    "u2_bean.json": "/api/users/u2/plot/bean",
    "u2_bean_unfold0.json": "/api/users/u2/plot/bean?unfold=0",
    "u2_transitional_pie.json": "/api/users/u2/plot/transitional_pie",
    "u2_instrument.json": "/api/users/u2/plot/instrument",
    "u2_calendar.json": "/api/users/u2/plot/calendar",
    "u2_calendar_expand0.json": "/api/users/u2/plot/calendar?expand=0",
    "u3_bean.json": "/api/users/u3/plot/bean",
    "u3_calendar.json": "/api/users/u3/plot/calendar",
    "u3_calendar_expand0.json": "/api/users/u3/plot/calendar?expand=0",
    "u3_rec_single_a.json": "/api/users/u3/recommend?mode=single_track&k=2&seed=a",
    "u2_rec_single_a.json": "/api/users/u2/recommend?mode=single_track&k=2&seed=a",
    "u2_rec_general.json": "/api/users/u2/recommend?mode=general&k=2",
    "u2_rec_slot0.json": "/api/users/u2/recommend?mode=time_slot&k=2&slot=0",
}


def main() -> None:
    out_dir = ROOT / "frontend" / "test" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)
    snapshot = DatasetSnapshot.build(
        Catalog.from_tracks(F1_TRACKS), F1_EVENTS, created_at=1_700_000_000
    )
    state = ServiceState(make_bundle(snapshot, ServiceConfig(k_default=2)))
    client = TestClient(create_app(state))
    for name, url in CAPTURES.items():
        res = client.get(url)
        assert res.status_code == 200, (url, res.status_code)
        (out_dir / name).write_bytes(res.content)
        print(f"{url} -> {name}")


if __name__ == "__main__":
    main()
