import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1].replace("test_criterion_", "")
        _ACCEPTANCE_RESULTS.append((name, report.outcome.upper()))


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_RESULTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, outcome in _ACCEPTANCE_RESULTS:
            terminalreporter.write_line(f"{name}: {'PASS' if outcome == 'PASSED' else outcome}")

from musicvis.model import AccessEvent, Catalog, Track
from musicvis.store import DatasetSnapshot

# Fixture F1: three users, three tracks, used all over the suite.
#   u1: a@0, b@1000
#   u2: a@0, b@2000, c@3000
#   u3: a@0, c@10000
F1_EVENTS = [
    AccessEvent("u1", "a", 0),
    AccessEvent("u1", "b", 1000),
    AccessEvent("u2", "a", 0),
    AccessEvent("u2", "b", 2000),
    AccessEvent("u2", "c", 3000),
    AccessEvent("u3", "a", 0),
    AccessEvent("u3", "c", 10000),
]

F1_TRACKS = [
    Track("a", "pop", 2010, "Alpha"),
    Track("b", "pop", 2012, "Beta"),
    Track("c", "rock", 1998, "Gamma"),
]


@pytest.fixture
def f1_catalog() -> Catalog:
    return Catalog.from_tracks(F1_TRACKS)


@pytest.fixture
def f1_events() -> list[AccessEvent]:
    return list(F1_EVENTS)


@pytest.fixture
def f1_snapshot(f1_catalog, f1_events) -> DatasetSnapshot:
    return DatasetSnapshot.build(f1_catalog, f1_events, created_at=1_700_000_000)
