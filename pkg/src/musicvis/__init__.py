"""musicvis: listening-history analytics and visualization geometry.

Pipeline: ingest CSV logs into an immutable snapshot, segment sessions,
build the co-access relevance matrix, answer recommendation queries, and
compute serializable scene graphs for the bean, transitional pie,
instrument, and calendar plots. A read-only HTTP API serves all of it to a
thin rendering client.
"""

__version__ = "0.1.0"

from .model import AccessEvent, Catalog, Track, UserHistory, build_histories, validate_dataset
from .relevance import RelevanceConfig, RelevanceMatrix, build_matrix
from .sessions import Session, SubSession, segment_sessions, segment_subsessions
from .store import DatasetSnapshot, load_snapshot, save_snapshot

__all__ = [
    "AccessEvent",
    "Catalog",
    "Track",
    "UserHistory",
    "build_histories",
    "validate_dataset",
    "RelevanceConfig",
    "RelevanceMatrix",
    "build_matrix",
    "Session",
    "SubSession",
    "segment_sessions",
    "segment_subsessions",
    "DatasetSnapshot",
    "load_snapshot",
    "save_snapshot",
    "__version__",
]
