"""CSV ingestion and immutable dataset snapshots.

Preprocessing is batch: a snapshot is parsed, validated, written once, and
the service swaps whole snapshots atomically. The snapshot file is a single
canonical JSON document (sorted keys, compact separators, UTF-8, trailing
LF) so its SHA-256 is stable across runs and platforms.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from dataclasses import dataclass
from typing import IO, Iterable, Mapping

from .model import (
    MAX_RELEASE_YEAR,
    MIN_RELEASE_YEAR,
    AccessEvent,
    Catalog,
    DatasetError,
    Track,
    UserHistory,
    build_histories,
    validate_dataset,
)

EVENTS_HEADER = ["user_id", "track_id", "timestamp"]
CATALOG_HEADER = ["track_id", "genre", "release_year"]
SNAPSHOT_FORMAT = "musicvis-snapshot"
SNAPSHOT_VERSION = 1


class ParseError(ValueError):
    """A malformed CSV row; carries the 1-based line number and field name."""

    def __init__(self, line: int, field: str, message: str):
        super().__init__(f"line {line}, field {field}: {message}")
        self.line = line
        self.field = field


class SnapshotCorruptionError(ValueError):
    """A snapshot file failed to parse or failed its integrity check."""


def _text_lines(source: str | bytes | IO) -> Iterable[str]:
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8")).readlines()
    if isinstance(source, str):
        return io.StringIO(source).readlines()
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return io.StringIO(data).readlines()


def _iter_rows(reader) -> Iterable[tuple[int, list[str]]]:
    """Iterate csv rows, converting csv-module errors (NUL bytes, broken
    quoting) into located ParseErrors so parsing stays total."""
    while True:
        try:
            row = next(reader)
        except StopIteration:
            return
        except csv.Error as exc:
            raise ParseError(reader.line_num + 1, "row", str(exc)) from None
        yield reader.line_num, row


def parse_events_csv(source: str | bytes | IO) -> list[AccessEvent]:
    """Parse an event log. Expected header: ``user_id,track_id,timestamp``.

    Timestamps must be integers (epoch seconds). Errors name the offending
    line and field; parsing never partially succeeds.
    """
    reader = csv.reader(_text_lines(source))
    rows = _iter_rows(reader)
    events: list[AccessEvent] = []
    first = next(rows, None)
    if first is None or [h.strip() for h in first[1]] != EVENTS_HEADER:
        raise ParseError(1, "header", f"expected {','.join(EVENTS_HEADER)}")
    for lineno, row in rows:
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(lineno, "row", f"expected 3 fields, got {len(row)}")
        user_id, track_id, raw_ts = (f.strip() for f in row)
        if not user_id:
            raise ParseError(lineno, "user_id", "must be non-empty")
        if not track_id:
            raise ParseError(lineno, "track_id", "must be non-empty")
        try:
            timestamp = int(raw_ts)
        except ValueError:
            raise ParseError(lineno, "timestamp", f"not an integer: {raw_ts!r}") from None
        events.append(AccessEvent(user_id, track_id, timestamp))
    return events


def parse_catalog_csv(source: str | bytes | IO) -> Catalog:
    """Parse a catalog. Header: ``track_id,genre,release_year[,title]``."""
    reader = csv.reader(_text_lines(source))
    rows = _iter_rows(reader)
    first = next(rows, None)
    if first is None:
        raise ParseError(1, "header", "empty catalog file")
    names = [h.strip() for h in first[1]]
    if names not in (CATALOG_HEADER, CATALOG_HEADER + ["title"]):
        raise ParseError(1, "header", f"expected {','.join(CATALOG_HEADER)}[,title]")
    has_title = len(names) == 4
    tracks: list[Track] = []
    seen: set[str] = set()
    for lineno, row in rows:
        if not row:
            continue
        if len(row) != len(names):
            raise ParseError(lineno, "row", f"expected {len(names)} fields, got {len(row)}")
        track_id, genre, raw_year = (f.strip() for f in row[:3])
        title = row[3].strip() or None if has_title else None
        if track_id in seen:
            raise ParseError(lineno, "track_id", f"duplicate track_id {track_id!r}")
        seen.add(track_id)
        try:
            year = int(raw_year)
        except ValueError:
            raise ParseError(lineno, "release_year", f"not an integer: {raw_year!r}") from None
        if not track_id:
            raise ParseError(lineno, "track_id", "must be non-empty")
        if not genre:
            raise ParseError(lineno, "genre", "must be non-empty")
        if not MIN_RELEASE_YEAR <= year <= MAX_RELEASE_YEAR:
            raise ParseError(
                lineno, "release_year",
                f"{year} outside [{MIN_RELEASE_YEAR}, {MAX_RELEASE_YEAR}]",
            )
        tracks.append(Track(track_id, genre, year, title))
    return Catalog.from_tracks(tracks)


@dataclass(frozen=True)
class DatasetSnapshot:
    """An immutable, hashable bundle of catalog plus per-user histories.

    ``content_hash`` is the SHA-256 of the canonical serialization, which is
    exactly what save_snapshot writes, so the hash of the file bytes equals
    the hash recomputed from the loaded object.
    """

    catalog: Catalog
    histories: Mapping[str, UserHistory]
    created_at: int

    @classmethod
    def build(
        cls, catalog: Catalog, events: Iterable[AccessEvent], created_at: int = 0
    ) -> "DatasetSnapshot":
        """Validate events and assemble a snapshot; raises on any error."""
        events = list(events)
        report = validate_dataset(catalog, events)
        if not report.accepted:
            raise DatasetError("; ".join(report.errors))
        return cls(catalog=catalog, histories=build_histories(events), created_at=created_at)

    def canonical_bytes(self) -> bytes:
        doc = {
            "format": SNAPSHOT_FORMAT,
            "version": SNAPSHOT_VERSION,
            "created_at": self.created_at,
            "catalog": {
                tid: {
                    "genre": t.genre,
                    "release_year": t.release_year,
                    **({"title": t.title} if t.title is not None else {}),
                }
                for tid, t in self.catalog.tracks.items()
            },
            "histories": {
                user: [[ev.track_id, ev.timestamp] for ev in hist.events]
                for user, hist in self.histories.items()
            },
        }
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return (text + "\n").encode("utf-8")

    @property
    def content_hash(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()

    @property
    def n_users(self) -> int:
        return len(self.histories)


def save_snapshot(snapshot: DatasetSnapshot, path: str | os.PathLike) -> str:
    """Write the canonical serialization atomically; returns the content hash."""
    data = snapshot.canonical_bytes()
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)
    return hashlib.sha256(data).hexdigest()


def load_snapshot(path: str | os.PathLike) -> DatasetSnapshot:
    """Reload a snapshot and verify its integrity.

    The file must parse, match the expected schema, and re-serialize to the
    exact bytes on disk (hash equality); anything else is corruption.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SnapshotCorruptionError(f"{path}: not valid snapshot JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != SNAPSHOT_FORMAT:
        raise SnapshotCorruptionError(f"{path}: not a {SNAPSHOT_FORMAT} file")
    if doc.get("version") != SNAPSHOT_VERSION:
        raise SnapshotCorruptionError(f"{path}: unsupported snapshot version {doc.get('version')!r}")
    try:
        catalog = Catalog.from_tracks(
            Track(tid, spec["genre"], spec["release_year"], spec.get("title"))
            for tid, spec in doc["catalog"].items()
        )
        histories = {
            user: UserHistory(
                user, tuple(AccessEvent(user, tid, ts) for tid, ts in rows)
            )
            for user, rows in doc["histories"].items()
        }
        snapshot = DatasetSnapshot(
            catalog=catalog, histories=histories, created_at=doc["created_at"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SnapshotCorruptionError(f"{path}: malformed snapshot: {exc}") from None
    if snapshot.canonical_bytes() != data:
        raise SnapshotCorruptionError(f"{path}: content hash mismatch (file edited or truncated)")
    return snapshot
