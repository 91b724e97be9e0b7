"""Co-access relevance between track pairs.

Three layers, all exact integer/rational arithmetic:

- an indicator per (user, pair): 1 iff the user accessed both tracks within
  the time window (any pair of access timestamps qualifies, so the count
  stays per-user even when tracks repeat);
- direct relevance: number of users with indicator 1;
- indirect relevance: the summed indicators through third tracks,
  sum_i sum_{x != a,b} (r_i(a,x) + r_i(b,x)). This form rewards the
  overall co-access activity of each endpoint rather than shared
  neighbors, which keeps sparse data connected; a stricter
  shared-neighbor variant sits behind a config switch for comparison.

Combined relevance is direct + weight * indirect with the weight an exact
rational (default 1/4), so matrix values never drift.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .model import UserHistory
from .store import DatasetSnapshot

DEFAULT_WINDOW = 3600
DEFAULT_INDIRECT_WEIGHT = Fraction(1, 4)

INDIRECT_SUMMED = "summed"  # the default definition, see module docstring
INDIRECT_SHARED = "shared"  # stricter comparison variant


@dataclass(frozen=True)
class RelevanceConfig:
    window_seconds: int = DEFAULT_WINDOW
    indirect_weight: Fraction = DEFAULT_INDIRECT_WEIGHT
    indirect_mode: str = INDIRECT_SUMMED

    def __post_init__(self) -> None:
        if self.window_seconds <= 0:
            raise ValueError("window_seconds must be positive")
        if self.indirect_weight < 0:
            raise ValueError("indirect_weight must be non-negative")
        if self.indirect_mode not in (INDIRECT_SUMMED, INDIRECT_SHARED):
            raise ValueError(f"unknown indirect_mode {self.indirect_mode!r}")


def _pair_key(a: str, b: str) -> tuple[str, str]:
    if a == b:
        raise ValueError(f"relevance is undefined on the diagonal ({a!r})")
    return (a, b) if a < b else (b, a)


def pair_indicator(history: UserHistory, a: str, b: str, window_seconds: int = DEFAULT_WINDOW) -> int:
    """1 iff this user accessed both tracks within the window, else 0.

    Existential over access pairs: any access of ``a`` within
    ``window_seconds`` of any access of ``b`` counts (|ta - tb| <= window).
    """
    if a == b:
        raise ValueError("pair_indicator requires two distinct tracks")
    ts_a = sorted(ev.timestamp for ev in history.events if ev.track_id == a)
    ts_b = sorted(ev.timestamp for ev in history.events if ev.track_id == b)
    if not ts_a or not ts_b:
        return 0
    i = j = 0
    while i < len(ts_a) and j < len(ts_b):
        if abs(ts_a[i] - ts_b[j]) <= window_seconds:
            return 1
        if ts_a[i] < ts_b[j]:
            i += 1
        else:
            j += 1
    return 0


def direct_relevance(
    histories: Mapping[str, UserHistory], a: str, b: str, window_seconds: int = DEFAULT_WINDOW
) -> int:
    """Number of users who accessed both tracks within the window."""
    return sum(pair_indicator(h, a, b, window_seconds) for h in histories.values())


def indirect_relevance(
    histories: Mapping[str, UserHistory], a: str, b: str, window_seconds: int = DEFAULT_WINDOW
) -> int:
    """Summed third-track indicators, computed literally as defined.

    For each user the sum runs over every third track x the user accessed;
    tracks outside the user's history contribute nothing.
    """
    total = 0
    for hist in histories.values():
        for x in hist.track_ids:
            if x == a or x == b:
                continue
            if a in hist.track_ids:
                total += pair_indicator(hist, a, x, window_seconds)
            if b in hist.track_ids:
                total += pair_indicator(hist, b, x, window_seconds)
    return total


def combined_relevance(direct: int, indirect: int, weight: Fraction = DEFAULT_INDIRECT_WEIGHT) -> Fraction:
    """direct + weight * indirect, exact."""
    if direct < 0 or indirect < 0:
        raise ValueError("relevance counts must be non-negative")
    return Fraction(direct) + weight * indirect


@dataclass(frozen=True)
class RelevanceMatrix:
    """Sparse symmetric relevance over unordered track pairs.

    Keys are (min, max) lexicographic pairs, so symmetry is structural and
    the diagonal cannot be represented. Pairs with combined value zero are
    omitted entirely.
    """

    n_users: int
    config: RelevanceConfig
    direct_counts: Mapping[tuple[str, str], int] = field(default_factory=dict)
    indirect_counts: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def direct(self, a: str, b: str) -> int:
        return self.direct_counts.get(_pair_key(a, b), 0)

    def indirect(self, a: str, b: str) -> int:
        return self.indirect_counts.get(_pair_key(a, b), 0)

    def combined(self, a: str, b: str) -> Fraction:
        key = _pair_key(a, b)
        return combined_relevance(
            self.direct_counts.get(key, 0),
            self.indirect_counts.get(key, 0),
            self.config.indirect_weight,
        )

    def pairs(self) -> Iterator[tuple[str, str, int, int, Fraction]]:
        """All stored pairs, sorted, as (a, b, direct, indirect, combined)."""
        keys = sorted(set(self.direct_counts) | set(self.indirect_counts))
        for a, b in keys:
            yield a, b, self.direct(a, b), self.indirect(a, b), self.combined(a, b)

    def __len__(self) -> int:
        return len(set(self.direct_counts) | set(self.indirect_counts))


def _co_access_pairs(history: UserHistory, window_seconds: int) -> set[tuple[str, str]]:
    """Unordered track pairs this user co-accessed within the window.

    Sliding window over the time-sorted events rather than all catalog
    pairs; existential semantics fall out for free because any qualifying
    access pair inserts the key once.
    """
    events = history.events
    pairs: set[tuple[str, str]] = set()
    lo = 0
    for hi in range(len(events)):
        while events[hi].timestamp - events[lo].timestamp > window_seconds:
            lo += 1
        for mid in range(lo, hi):
            if events[mid].track_id != events[hi].track_id:
                pairs.add(_pair_key(events[mid].track_id, events[hi].track_id))
    return pairs


def build_matrix(snapshot: DatasetSnapshot, config: RelevanceConfig | None = None) -> RelevanceMatrix:
    """Aggregate relevance over the whole snapshot.

    Direct counts come from per-user co-access pair sets. In the default
    summed mode the indirect term expands to degree(a) + degree(b)
    - 2*direct(a,b), where degree(y) is the total co-access count of y over
    all users and pairs, so indirect entries are derived from degrees
    instead of a third nested loop. The matrix stores every pair whose
    combined value is positive and nothing else.
    """
    config = config or RelevanceConfig()
    direct: Counter[tuple[str, str]] = Counter()
    shared: Counter[tuple[str, str]] = Counter()
    for hist in snapshot.histories.values():
        user_pairs = _co_access_pairs(hist, config.window_seconds)
        direct.update(user_pairs)
        if config.indirect_mode == INDIRECT_SHARED:
            neighbors: dict[str, set[str]] = defaultdict(set)
            for x, y in user_pairs:
                neighbors[x].add(y)
                neighbors[y].add(x)
            for x, partners in neighbors.items():
                ordered = sorted(partners)
                for i in range(len(ordered)):
                    for j in range(i + 1, len(ordered)):
                        shared[_pair_key(ordered[i], ordered[j])] += 1

    degree: Counter[str] = Counter()
    for (a, b), count in direct.items():
        degree[a] += count
        degree[b] += count

    indirect: dict[tuple[str, str], int] = {}
    if config.indirect_mode == INDIRECT_SUMMED:
        active = sorted(t for t in degree if degree[t] > 0)
        everything = sorted(snapshot.catalog.tracks)
        seen: set[tuple[str, str]] = set()
        for a in active:
            for b in everything:
                if a == b:
                    continue
                key = _pair_key(a, b)
                if key in seen:
                    continue
                seen.add(key)
                value = degree[a] + degree[b] - 2 * direct.get(key, 0)
                if value > 0:
                    indirect[key] = value
    else:
        indirect = {key: count for key, count in shared.items() if count > 0}

    weight = config.indirect_weight
    keep = {
        key
        for key in set(direct) | set(indirect)
        if Fraction(direct.get(key, 0)) + weight * indirect.get(key, 0) > 0
    }
    return RelevanceMatrix(
        n_users=snapshot.n_users,
        config=config,
        direct_counts={k: direct[k] for k in sorted(keep) if direct.get(k, 0) > 0},
        indirect_counts={k: indirect[k] for k in sorted(keep) if indirect.get(k, 0) > 0},
    )


MATRIX_HEADER = "track_a,track_b,direct,indirect,combined"


def save_matrix_csv(matrix: RelevanceMatrix, path: str) -> None:
    """Write the pair table, sorted, with combined as a 6-digit decimal."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(MATRIX_HEADER + "\n")
        for a, b, d, ind, comb in matrix.pairs():
            fh.write(f"{a},{b},{d},{ind},{float(comb):.6f}\n")


def load_matrix_csv(
    path: str, config: RelevanceConfig | None = None, n_users: int | None = None
) -> RelevanceMatrix:
    """Reload a pair table written by save_matrix_csv.

    The CSV carries no user count; pass ``n_users`` when known, otherwise
    the maximum direct count serves as a lower bound (it only feeds sanity
    checks, never scoring).
    """
    config = config or RelevanceConfig()
    direct: dict[tuple[str, str], int] = {}
    indirect: dict[tuple[str, str], int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != MATRIX_HEADER:
            raise ValueError(f"{path}: expected header {MATRIX_HEADER!r}")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 5:
                raise ValueError(f"{path}:{lineno}: expected 5 fields")
            a, b, d_raw, i_raw, _ = parts
            key = _pair_key(a, b)
            d, ind = int(d_raw), int(i_raw)
            if d > 0:
                direct[key] = d
            if ind > 0:
                indirect[key] = ind
    if n_users is None:
        n_users = max(direct.values(), default=0)
    return RelevanceMatrix(
        n_users=n_users, config=config, direct_counts=direct, indirect_counts=indirect
    )
