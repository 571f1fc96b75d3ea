"""Session state machine behind the HTTP facade: selection, specified and
related views, bookmarks, and an append-only interaction log.

Every chart that reaches the client is logged as an Exposed event first;
interactions (specify, bookmark, hover) are only accepted for specs with a
prior exposure, which keeps interacted-metrics a subset of exposed-metrics
by construction.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from .dataset import Dataset
from .errors import (CapExceeded, InvalidPage, NotExposed, UnknownDataset,
                     UnknownField, UnknownSession)
from .recommender import (AlgorithmConfig, RecommendationPage, preset,
                          related_views, specified_view)
from .vizspec import (VisSpec, canonical_key, parse_document, serialize,
                      variable_set)

HOVER_INTERACTION_THRESHOLD_MS = 500


def _now_ms() -> int:
    return int(time.time() * 1000)


@dataclass
class InteractionEvent:
    ts: int
    kind: str  # exposed|select_field|deselect_field|specify|bookmark|unbookmark|hover|load_more
    spec: Optional[dict] = None  # serialized canonical chart document
    node: Optional[list[str]] = None
    field: Optional[str] = None
    duration_ms: Optional[int] = None

    def to_json(self) -> str:
        record = {"ts": self.ts, "kind": self.kind}
        if self.spec is not None:
            record["spec"] = self.spec
        if self.node is not None:
            record["node"] = self.node
        if self.field is not None:
            record["field"] = self.field
        if self.duration_ms is not None:
            record["duration_ms"] = self.duration_ms
        return json.dumps(record, sort_keys=True, separators=(",", ":"))


@dataclass
class Session:
    id: str
    dataset: Dataset
    algorithm: AlgorithmConfig
    selection: list[str] = dc_field(default_factory=list)
    specified: Optional[VisSpec] = None
    bookmarks: list[VisSpec] = dc_field(default_factory=list)
    log: list[InteractionEvent] = dc_field(default_factory=list)
    exposed: set[tuple] = dc_field(default_factory=set)
    page_index: int = 0
    lock: threading.Lock = dc_field(default_factory=threading.Lock)


class SessionManager:
    """In-memory session store over a shared read-only dataset registry.

    `clock` returns milliseconds since epoch; benchmarks inject a counter for
    reproducible logs.
    """

    def __init__(self, datasets: dict[str, Dataset],
                 clock: Callable[[], int] = _now_ms):
        self._datasets = dict(datasets)
        self._clock = clock
        self._sessions: dict[str, Session] = {}
        self._seq = 0
        self._lock = threading.Lock()

    @property
    def dataset_names(self) -> list[str]:
        return sorted(self._datasets)

    def dataset(self, name: str) -> Dataset:
        if name not in self._datasets:
            raise UnknownDataset(name)
        return self._datasets[name]

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSession(session_id) from None

    # -- event helpers ------------------------------------------------------

    def _doc(self, session: Session, spec: VisSpec) -> dict:
        types = {f.name: f.type for f in session.dataset.fields}
        return serialize(spec, session.dataset.name, types)

    def _log(self, session: Session, kind: str, spec: Optional[VisSpec] = None,
             **extra) -> None:
        doc = self._doc(session, spec) if spec is not None else None
        node = sorted(variable_set(spec)) if spec is not None else None
        session.log.append(InteractionEvent(ts=self._clock(), kind=kind,
                                            spec=doc, node=node, **extra))

    def _expose_page(self, session: Session, page: RecommendationPage) -> None:
        for spec, _score, _node in page.items:
            session.exposed.add(canonical_key(spec))
            self._log(session, "exposed", spec)

    def _expose_specified(self, session: Session) -> None:
        if session.specified is not None:
            session.exposed.add(canonical_key(session.specified))
            self._log(session, "exposed", session.specified)

    def _current_page(self, session: Session) -> RecommendationPage:
        return related_views(session.specified, session.algorithm,
                             session.dataset, session.page_index)

    def _refresh(self, session: Session) -> RecommendationPage:
        """Recompute specified + related views after the anchor changed."""
        session.page_index = 0
        session.specified = specified_view(session.selection, session.algorithm,
                                           session.dataset)
        self._expose_specified(session)
        page = self._current_page(session)
        self._expose_page(session, page)
        return page

    def _require_exposed(self, session: Session, spec: VisSpec) -> None:
        if canonical_key(spec) not in session.exposed:
            raise NotExposed("spec was never shown in this session")

    # -- operations ---------------------------------------------------------

    def create_session(self, dataset_name: str, algorithm_name: str) -> str:
        dataset = self.dataset(dataset_name)
        algorithm = preset(algorithm_name)  # raises UnknownPreset
        with self._lock:
            self._seq += 1
            session_id = f"s{self._seq}"
        session = Session(id=session_id, dataset=dataset, algorithm=algorithm)
        self._sessions[session_id] = session
        with session.lock:
            self._refresh(session)
        return session_id

    def toggle_field(self, session_id: str, field: str) -> RecommendationPage:
        session = self.get(session_id)
        with session.lock:
            if field not in session.dataset:
                raise UnknownField(field)
            if field in session.selection:
                session.selection.remove(field)
                self._log(session, "deselect_field", field=field)
            else:
                if len(session.selection) >= session.algorithm.max_attrs:
                    raise CapExceeded(f"cannot select more than "
                                      f"{session.algorithm.max_attrs} fields")
                session.selection.append(field)
                self._log(session, "select_field", field=field)
            return self._refresh(session)

    def promote(self, session_id: str, spec: VisSpec | dict) -> RecommendationPage:
        session = self.get(session_id)
        if isinstance(spec, dict):
            spec = parse_document(spec)
        with session.lock:
            self._require_exposed(session, spec)
            self._log(session, "specify", spec)
            session.selection = sorted(variable_set(spec))
            session.specified = spec
            session.page_index = 0
            page = self._current_page(session)
            self._expose_page(session, page)
            return page

    def bookmark(self, session_id: str, spec: VisSpec | dict) -> bool:
        """Toggle a bookmark; returns True when the spec is now bookmarked."""
        session = self.get(session_id)
        if isinstance(spec, dict):
            spec = parse_document(spec)
        with session.lock:
            self._require_exposed(session, spec)
            key = canonical_key(spec)
            for existing in session.bookmarks:
                if canonical_key(existing) == key:
                    session.bookmarks.remove(existing)
                    self._log(session, "unbookmark", spec)
                    return False
            session.bookmarks.append(spec)
            self._log(session, "bookmark", spec)
            return True

    def hover(self, session_id: str, spec: VisSpec | dict, duration_ms: int) -> None:
        session = self.get(session_id)
        if isinstance(spec, dict):
            spec = parse_document(spec)
        if duration_ms < 0:
            raise ValueError("duration_ms must be >= 0")
        with session.lock:
            self._require_exposed(session, spec)
            self._log(session, "hover", spec, duration_ms=duration_ms)

    def load_more(self, session_id: str) -> RecommendationPage:
        session = self.get(session_id)
        with session.lock:
            next_index = session.page_index + 1
            page = related_views(session.specified, session.algorithm,
                                 session.dataset, next_index)  # InvalidPage past end
            session.page_index = next_index
            self._log(session, "load_more")
            self._expose_page(session, page)
            return page

    def views(self, session_id: str) -> dict:
        session = self.get(session_id)
        with session.lock:
            page = self._current_page(session)
            return {
                "session_id": session.id,
                "dataset": session.dataset.name,
                "algorithm": session.algorithm.name,
                "fields": [{"name": f.name, "type": f.type.value,
                            "selected": f.name in session.selection}
                           for f in session.dataset.fields],
                "selection": list(session.selection),
                "specified": (self._doc(session, session.specified)
                              if session.specified else None),
                "related": {
                    "page_index": page.page_index,
                    "has_more": page.has_more,
                    "items": [{"spec": self._doc(session, spec),
                               "score": score.value,
                               "node": list(node.attrs)}
                              for spec, score, node in page.items],
                },
                "bookmarks": [self._doc(session, b) for b in session.bookmarks],
            }

    def export_log(self, session_id: str) -> str:
        """Newline-delimited JSON, one event per line, in arrival order."""
        session = self.get(session_id)
        with session.lock:
            return "\n".join(ev.to_json() for ev in session.log) + ("\n" if session.log else "")
