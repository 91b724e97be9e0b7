"""Core domain types: tracks, access events, per-user histories, catalogs.

Everything here is immutable after construction and safe to share across
threads. Construction happens once per dataset, single-threaded.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

MIN_RELEASE_YEAR = 1000
MAX_RELEASE_YEAR = 3000


class DatasetError(ValueError):
    """A catalog, event log, or history violates a structural invariant."""


@dataclass(frozen=True)
class Track:
    """One catalog entry. Genre and release year are the only content
    features the engine uses; titles are display-only and optional."""

    track_id: str
    genre: str
    release_year: int
    title: str | None = None

    def __post_init__(self) -> None:
        if not self.track_id:
            raise DatasetError("track_id must be non-empty")
        if not self.genre:
            raise DatasetError(f"track {self.track_id!r}: genre must be non-empty")
        if not MIN_RELEASE_YEAR <= self.release_year <= MAX_RELEASE_YEAR:
            raise DatasetError(
                f"track {self.track_id!r}: release_year {self.release_year} outside "
                f"[{MIN_RELEASE_YEAR}, {MAX_RELEASE_YEAR}]"
            )


@dataclass(frozen=True)
class AccessEvent:
    """One (user, track, timestamp) record from the raw log.

    Timestamps are integer epoch seconds; download logs carry no sub-second
    precision. Negative timestamps are representable so that validation can
    report them, but a validated dataset never contains one.
    """

    user_id: str
    track_id: str
    timestamp: int


@dataclass(frozen=True)
class UserHistory:
    """One user's access events, chronologically sorted (non-decreasing)."""

    user_id: str
    events: tuple[AccessEvent, ...]

    def __post_init__(self) -> None:
        for ev in self.events:
            if ev.user_id != self.user_id:
                raise DatasetError(
                    f"history for {self.user_id!r} contains event of {ev.user_id!r}"
                )
        ts = [ev.timestamp for ev in self.events]
        if any(a > b for a, b in zip(ts, ts[1:])):
            raise DatasetError(f"history for {self.user_id!r} is not sorted")

    def __len__(self) -> int:
        return len(self.events)

    @property
    def track_ids(self) -> frozenset[str]:
        return frozenset(ev.track_id for ev in self.events)


@dataclass(frozen=True)
class Catalog:
    """All known tracks plus two derived views used by layouts and styling:
    a deterministic genre order and the release-year range.

    Genre order is by descending frequency among catalog tracks, ties broken
    by label, so palette assignment is reproducible.
    """

    tracks: Mapping[str, Track]
    genres: tuple[str, ...] = field(default=())
    year_range: tuple[int, int] = field(default=(0, 0))

    @classmethod
    def from_tracks(cls, tracks: Iterable[Track]) -> "Catalog":
        by_id: dict[str, Track] = {}
        for track in tracks:
            if track.track_id in by_id:
                raise DatasetError(f"duplicate track_id {track.track_id!r}")
            by_id[track.track_id] = track
        if not by_id:
            return cls(tracks={}, genres=(), year_range=(0, 0))
        counts = Counter(t.genre for t in by_id.values())
        genres = tuple(sorted(counts, key=lambda g: (-counts[g], g)))
        years = [t.release_year for t in by_id.values()]
        return cls(tracks=by_id, genres=genres, year_range=(min(years), max(years)))

    def __contains__(self, track_id: str) -> bool:
        return track_id in self.tracks

    def __len__(self) -> int:
        return len(self.tracks)

    def genre_of(self, track_id: str) -> str:
        return self.tracks[track_id].genre

    def year_of(self, track_id: str) -> int:
        return self.tracks[track_id].release_year


@dataclass(frozen=True)
class ValidationReport:
    """Findings from validate_dataset. Dangling ids and negative timestamps
    are errors; exact duplicate records are warnings (the dataset is still
    accepted, duplicates are kept once downstream)."""

    dangling: tuple[AccessEvent, ...]
    negative: tuple[AccessEvent, ...]
    duplicates: tuple[AccessEvent, ...]

    @property
    def errors(self) -> tuple[str, ...]:
        msgs = [f"dangling track_id {ev.track_id!r} (user {ev.user_id!r})" for ev in self.dangling]
        msgs += [f"negative timestamp {ev.timestamp} (user {ev.user_id!r})" for ev in self.negative]
        return tuple(msgs)

    @property
    def warnings(self) -> tuple[str, ...]:
        return tuple(
            f"duplicate record ({ev.user_id},{ev.track_id},{ev.timestamp}) kept once"
            for ev in self.duplicates
        )

    @property
    def accepted(self) -> bool:
        return not self.dangling and not self.negative


def validate_dataset(catalog: Catalog, events: Iterable[AccessEvent]) -> ValidationReport:
    """Check an event log against a catalog.

    Accepted iff there are no dangling track ids and no negative timestamps.
    Exact duplicate (user, track, timestamp) triples are reported as
    warnings; re-downloads at distinct timestamps are real events and pass
    silently.
    """
    dangling: list[AccessEvent] = []
    negative: list[AccessEvent] = []
    duplicates: list[AccessEvent] = []
    seen: set[tuple[str, str, int]] = set()
    for ev in events:
        if ev.track_id not in catalog:
            dangling.append(ev)
        if ev.timestamp < 0:
            negative.append(ev)
        key = (ev.user_id, ev.track_id, ev.timestamp)
        if key in seen:
            duplicates.append(ev)
        seen.add(key)
    return ValidationReport(tuple(dangling), tuple(negative), tuple(duplicates))


def build_histories(events: Iterable[AccessEvent]) -> dict[str, UserHistory]:
    """Group validated events by user and sort each group by timestamp.

    The sort is stable: events with equal timestamps keep their input order,
    which golden tests rely on. Exact duplicate triples are kept once (first
    occurrence wins).
    """
    per_user: dict[str, list[AccessEvent]] = {}
    seen: set[tuple[str, str, int]] = set()
    for ev in events:
        key = (ev.user_id, ev.track_id, ev.timestamp)
        if key in seen:
            continue
        seen.add(key)
        per_user.setdefault(ev.user_id, []).append(ev)
    return {
        user: UserHistory(user, tuple(sorted(evs, key=lambda e: e.timestamp)))
        for user, evs in per_user.items()
    }
