"""Three recommendation modes over the relevance matrix.

- general: seeded by the user's entire history;
- time_slot: seeded by tracks accessed in one hour-of-day bucket;
- single_track: seeded by one clicked track.

Candidates are scored by summing combined relevance from every seed, the
standard item-based collaborative aggregate. Ranking is deterministic:
descending score, then ascending track id.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .model import UserHistory
from .relevance import RelevanceMatrix
from .store import DatasetSnapshot

MODE_GENERAL = "general"
MODE_TIME_SLOT = "time_slot"
MODE_SINGLE_TRACK = "single_track"
MODES = (MODE_GENERAL, MODE_TIME_SLOT, MODE_SINGLE_TRACK)

DEFAULT_K = 10


class InvalidQueryError(ValueError):
    """Query parameters violate the mode/slot/seed combination rules."""


class UnknownUserError(KeyError):
    pass


class UnknownTrackError(KeyError):
    pass


class EmptySeedError(ValueError):
    """The query selects no seed tracks (e.g. an hour with no accesses)."""


@dataclass(frozen=True)
class RecommenderConfig:
    utc_offset_minutes: int = 0
    exclude_history: bool = True  # recommend only unseen tracks by default


@dataclass(frozen=True)
class RecommendationQuery:
    user_id: str
    mode: str
    slot: int | None = None
    seed_track: str | None = None
    k: int = DEFAULT_K

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise InvalidQueryError(f"unknown mode {self.mode!r}")
        if (self.slot is not None) != (self.mode == MODE_TIME_SLOT):
            raise InvalidQueryError("slot must be given exactly when mode=time_slot")
        if self.slot is not None and not 0 <= self.slot <= 23:
            raise InvalidQueryError(f"slot must be an hour of day 0..23, got {self.slot}")
        if (self.seed_track is not None) != (self.mode == MODE_SINGLE_TRACK):
            raise InvalidQueryError("seed_track must be given exactly when mode=single_track")
        if self.k < 0:
            raise InvalidQueryError(f"k must be non-negative, got {self.k}")


@dataclass(frozen=True)
class Recommendation:
    query: RecommendationQuery
    items: tuple[tuple[str, Fraction], ...]

    def to_dict(self) -> dict:
        q: dict = {"user_id": self.query.user_id, "mode": self.query.mode, "k": self.query.k}
        if self.query.slot is not None:
            q["slot"] = self.query.slot
        if self.query.seed_track is not None:
            q["seed_track"] = self.query.seed_track
        return {
            "query": q,
            "items": [{"track_id": t, "score": float(s)} for t, s in self.items],
        }


def hour_of_day(timestamp: int, utc_offset_minutes: int = 0) -> int:
    return ((timestamp + utc_offset_minutes * 60) // 3600) % 24


def seed_set(history: UserHistory, query: RecommendationQuery, utc_offset_minutes: int = 0) -> set[str]:
    """Seed tracks for a query; raises EmptySeedError when nothing matches."""
    if query.mode == MODE_GENERAL:
        seeds = set(history.track_ids)
    elif query.mode == MODE_TIME_SLOT:
        seeds = {
            ev.track_id
            for ev in history.events
            if hour_of_day(ev.timestamp, utc_offset_minutes) == query.slot
        }
    else:
        seeds = {query.seed_track}
    if not seeds:
        raise EmptySeedError(f"query {query.mode!r} selects no seed tracks")
    return seeds


def score_candidates(
    seeds: Iterable[str],
    matrix: RelevanceMatrix,
    exclusions: set[str],
    catalog_track_ids: Iterable[str],
) -> list[tuple[str, Fraction]]:
    """Sum combined relevance from every seed to every non-excluded track.

    Zero-score candidates are dropped; ties rank by ascending track id.
    """
    seeds = list(seeds)
    if not seeds:
        raise EmptySeedError("no seeds to score from")
    scored: list[tuple[str, Fraction]] = []
    for candidate in catalog_track_ids:
        if candidate in exclusions:
            continue
        score = sum(
            (matrix.combined(s, candidate) for s in seeds if s != candidate),
            Fraction(0),
        )
        if score > 0:
            scored.append((candidate, score))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored


def recommend(
    snapshot: DatasetSnapshot,
    matrix: RelevanceMatrix,
    query: RecommendationQuery,
    config: RecommenderConfig | None = None,
) -> Recommendation:
    """Full pipeline: seeds, scoring with exclusions, truncation to k."""
    config = config or RecommenderConfig()
    if query.user_id not in snapshot.histories:
        raise UnknownUserError(query.user_id)
    if query.seed_track is not None and query.seed_track not in snapshot.catalog:
        raise UnknownTrackError(query.seed_track)
    history = snapshot.histories[query.user_id]
    seeds = seed_set(history, query, config.utc_offset_minutes)
    exclusions = set(seeds)
    if config.exclude_history:
        exclusions |= history.track_ids
    ranked = score_candidates(seeds, matrix, exclusions, sorted(snapshot.catalog.tracks))
    return Recommendation(query=query, items=tuple(ranked[: query.k]))
