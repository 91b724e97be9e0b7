"""Session segmentation and inter-access interval statistics.

A session is a maximal run of one user's consecutive events where every gap
is strictly less than the threshold (default one hour). Note the asymmetry
with the relevance indicator, which uses gap <= window: segmentation splits
at gap >= threshold, the co-access indicator accepts gap == window. Both
rules are kept side by side on purpose.

Single-genre subsessions are the unfolded pods of the bean plot.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .model import AccessEvent, Catalog, UserHistory

DEFAULT_SESSION_GAP = 3600
DEFAULT_FIT_BINS = 50
MIN_DISTINCT_GAPS = 10
# Each fitted segment needs this many admissible bins; smaller sides chase
# per-bin Poisson noise and destabilize the recovered exponents.
MIN_BINS_PER_SIDE = 6
# Bins with fewer counts than this are too noisy in log space (sigma of
# log10(count) exceeds ~0.2); they are skipped when enough bins remain.
MIN_BIN_COUNT = 5


class FitUndefinedError(ValueError):
    """Not enough interval data for a piecewise power-law fit."""


@dataclass(frozen=True)
class Session:
    """A maximal run of events with every internal gap < the threshold."""

    user_id: str
    events: tuple[AccessEvent, ...]

    @property
    def start(self) -> int:
        return self.events[0].timestamp

    @property
    def end(self) -> int:
        return self.events[-1].timestamp

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class SubSession:
    """A maximal run of consecutive same-genre events inside a session."""

    session: Session
    genre: str
    events: tuple[AccessEvent, ...]

    def __len__(self) -> int:
        return len(self.events)


def segment_sessions(history: UserHistory, gap_threshold: int = DEFAULT_SESSION_GAP) -> list[Session]:
    """Split a sorted history at every gap >= gap_threshold.

    The sessions partition the events exactly; an empty history yields an
    empty list.
    """
    if gap_threshold <= 0:
        raise ValueError("gap_threshold must be positive")
    sessions: list[Session] = []
    run: list[AccessEvent] = []
    for ev in history.events:
        if run and ev.timestamp - run[-1].timestamp >= gap_threshold:
            sessions.append(Session(history.user_id, tuple(run)))
            run = []
        run.append(ev)
    if run:
        sessions.append(Session(history.user_id, tuple(run)))
    return sessions


def segment_subsessions(session: Session, catalog: Catalog) -> list[SubSession]:
    """Run-length split of a session by genre; concatenation restores it."""
    subsessions: list[SubSession] = []
    run: list[AccessEvent] = []
    run_genre: str | None = None
    for ev in session.events:
        genre = catalog.genre_of(ev.track_id)
        if run and genre != run_genre:
            subsessions.append(SubSession(session, run_genre, tuple(run)))
            run = []
        run.append(ev)
        run_genre = genre
    if run:
        subsessions.append(SubSession(session, run_genre, tuple(run)))
    return subsessions


class IntervalStats:
    """Multiset of within-user gaps between successive accesses, in seconds.

    Gaps are only ever computed inside one user's sorted history, never
    across users. Zero gaps (equal timestamps) are kept here but excluded
    from log-log fitting.
    """

    def __init__(self, gaps: Iterable[float]):
        self.gaps: tuple[float, ...] = tuple(gaps)
        if any(g < 0 for g in self.gaps):
            raise ValueError("gaps must be non-negative")
        self._sorted = sorted(self.gaps)

    def __len__(self) -> int:
        return len(self.gaps)

    def fraction_below(self, threshold: float) -> float:
        """Empirical CDF: fraction of gaps strictly below the threshold."""
        if not self._sorted:
            return 0.0
        return bisect.bisect_left(self._sorted, threshold) / len(self._sorted)

    @property
    def max_gap(self) -> float:
        return self._sorted[-1] if self._sorted else 0.0


def interval_stats(histories: Mapping[str, UserHistory]) -> IntervalStats:
    """Collect consecutive-event gaps from every user's sorted history."""
    gaps: list[float] = []
    for hist in histories.values():
        ts = [ev.timestamp for ev in hist.events]
        gaps.extend(b - a for a, b in zip(ts, ts[1:]))
    return IntervalStats(gaps)


@dataclass(frozen=True)
class PowerLawFit:
    """Two least-squares lines in log10-log10 density space, joined at a
    histogram bin edge: log10(density) = intercept_k - exponent_k * log10(g).
    """

    breakpoint: float
    exponents: tuple[float, float]
    intercepts: tuple[float, float]
    sse: float
    bin_edges: tuple[float, ...]

    def predict_density(self, gap: float) -> float:
        """Fitted probability density at a gap value (seconds)."""
        if gap <= 0:
            raise ValueError("gap must be positive")
        k = 0 if gap < self.breakpoint else 1
        return 10.0 ** (self.intercepts[k] - self.exponents[k] * np.log10(gap))


def log_histogram(stats: IntervalStats, bins: int = DEFAULT_FIT_BINS) -> tuple[np.ndarray, np.ndarray]:
    """Histogram positive gaps into logarithmic bins spanning [1 s, max gap].

    Returns (edges, counts). Gaps below one second fall outside the range
    and are dropped, matching the fit's domain.
    """
    positive = [g for g in stats.gaps if g > 0]
    if not positive:
        raise FitUndefinedError("no positive gaps to bin")
    hi = max(positive)
    if hi <= 1.0:
        raise FitUndefinedError("all gaps are below one second")
    edges = np.logspace(0.0, np.log10(hi), bins + 1)
    counts, _ = np.histogram(positive, bins=edges)
    return edges, counts


def fit_piecewise_powerlaw(stats: IntervalStats, bins: int = DEFAULT_FIT_BINS) -> PowerLawFit:
    """Fit two power-law segments to the gap distribution.

    The log-log density histogram is fitted by two least-squares lines, one
    per side of a candidate breakpoint; the breakpoint is searched
    exhaustively over interior bin edges and the SSE-minimizing split wins.
    Deterministic for fixed input and bin count. Requires at least ten
    distinct positive gap values.
    """
    positive = [g for g in stats.gaps if g > 0]
    if len(set(positive)) < MIN_DISTINCT_GAPS:
        raise FitUndefinedError(
            f"need at least {MIN_DISTINCT_GAPS} distinct positive gaps, got {len(set(positive))}"
        )
    edges, counts = log_histogram(stats, bins)
    centers = np.sqrt(edges[:-1] * edges[1:])
    widths = np.diff(edges)
    total = counts.sum()
    if total == 0:
        raise FitUndefinedError("no gaps fall inside the histogram range")
    # A bin whose left edge lies below the smallest observed gap is only
    # partially covered by data and its density estimate is biased; skip it.
    fully_covered = edges[:-1] >= max(min(positive), edges[0]) - 1e-12
    valid = (counts >= MIN_BIN_COUNT) & fully_covered
    if int(valid.sum()) < 2 * MIN_BINS_PER_SIDE:
        valid = (counts > 0) & fully_covered  # small-sample fallback
    log_g = np.log10(centers[valid])
    log_density = np.log10(counts[valid] / (total * widths[valid]))
    n_valid = int(valid.sum())
    if n_valid < 2 * MIN_BINS_PER_SIDE:
        raise FitUndefinedError(
            f"need at least {2 * MIN_BINS_PER_SIDE} populated bins, got {n_valid}"
        )

    # bin_of[i] = histogram bin index of the i-th valid point
    bin_of = np.flatnonzero(valid)
    best: tuple[float, int, tuple, tuple] | None = None  # (sse, edge_idx, left, right)
    for edge_idx in range(1, len(edges) - 1):
        n_left = int(np.count_nonzero(bin_of < edge_idx))
        n_right = n_valid - n_left
        if n_left < MIN_BINS_PER_SIDE or n_right < MIN_BINS_PER_SIDE:
            continue
        left = _fit_line(log_g[:n_left], log_density[:n_left])
        right = _fit_line(log_g[n_left:], log_density[n_left:])
        sse = left[2] + right[2]
        if best is None or sse < best[0]:
            best = (sse, edge_idx, left, right)
    if best is None:
        raise FitUndefinedError("no admissible breakpoint split")
    sse, edge_idx, (sl, il, _), (sr, ir, _) = best
    return PowerLawFit(
        breakpoint=float(edges[edge_idx]),
        exponents=(-sl, -sr),
        intercepts=(il, ir),
        sse=float(sse),
        bin_edges=tuple(float(e) for e in edges),
    )


def _fit_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least-squares line y = slope*x + intercept; returns (slope, intercept, sse)."""
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return float(slope), float(intercept), float(np.dot(resid, resid))
