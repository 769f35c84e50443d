"""Append-only metric storage: one ndjson log per collection.

Each collection is a newline-delimited JSON file under the data directory
with an in-memory index rebuilt (and incrementally tailed) on read.
Exactly one writer may register per collection within a process; any
number of readers may query concurrently. Records are never mutated or
deleted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .errors import DuplicateRecord, NotFound, ValidationError, WriterViolation

METRIC_COLLECTIONS = (
    "raw_metrics",
    "aggregated_metrics",
    "contextual_metrics",
    "analyzed_metrics",
)
AUX_COLLECTIONS = ("baselines", "phq9_responses", "traces")
ALL_COLLECTIONS = METRIC_COLLECTIONS + AUX_COLLECTIONS


def _iso_time(seconds: float) -> str:
    """Deterministic ISO-8601 stamp for a stream-relative time."""
    stamp = datetime.fromtimestamp(round(seconds, 6), tz=timezone.utc)
    return stamp.isoformat().replace("+00:00", "Z")


@dataclass
class MetricRecord:
    """One value of one metric for one subject at one window."""

    collection: str
    subject_id: str
    metric_name: str
    value: float | dict | None
    window_start: float
    quality_ok: bool = True
    provenance: str = ""

    @property
    def key(self) -> tuple[str, str, float]:
        return (self.subject_id, self.metric_name, self.window_start)

    def to_json(self) -> str:
        return json.dumps(
            {
                "subject_id": self.subject_id,
                "metric": self.metric_name,
                "value": self.value,
                "window_start": self.window_start,
                "quality_ok": self.quality_ok,
                "provenance": self.provenance,
                "time": _iso_time(self.window_start),
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, collection: str, line: str) -> "MetricRecord":
        payload = json.loads(line)
        if not isinstance(payload, dict) or "metric" not in payload:
            raise ValidationError("record payload is not a metric object")
        return cls(
            collection=collection,
            subject_id=payload["subject_id"],
            metric_name=payload["metric"],
            value=payload["value"],
            window_start=float(payload["window_start"]),
            quality_ok=bool(payload.get("quality_ok", True)),
            provenance=payload.get("provenance", ""),
        )


@dataclass
class WriterHandle:
    collection: str
    writer_id: str


@dataclass
class _CollectionState:
    path: Path
    records: list[MetricRecord] = field(default_factory=list)
    keys: set[tuple[str, str, float]] = field(default_factory=set)
    writer_id: str | None = None
    read_offset: int = 0
    skipped_lines: int = 0
    append_handle: object = None


class MetricStore:
    def __init__(self, data_dir: str | Path, collections: tuple[str, ...] = ALL_COLLECTIONS):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._state: dict[str, _CollectionState] = {
            name: _CollectionState(path=self.data_dir / f"{name}.ndjson")
            for name in collections
        }
        for name in collections:
            self._refresh(name)

    # -- writer discipline ------------------------------------------------

    def register_writer(self, collection: str, writer_id: str) -> WriterHandle:
        state = self._require(collection)
        if state.writer_id is not None and state.writer_id != writer_id:
            raise WriterViolation(
                f"{collection} already owned by {state.writer_id!r}"
            )
        state.writer_id = writer_id
        return WriterHandle(collection=collection, writer_id=writer_id)

    def append(self, handle: WriterHandle, record: MetricRecord) -> None:
        state = self._require(handle.collection)
        if state.writer_id != handle.writer_id:
            raise WriterViolation(
                f"{handle.writer_id!r} is not the writer of {handle.collection}"
            )
        if record.key in state.keys:
            raise DuplicateRecord(f"{handle.collection}: {record.key}")
        if state.append_handle is None:
            state.append_handle = state.path.open("a", encoding="utf-8")
        state.append_handle.write(record.to_json() + "\n")
        state.append_handle.flush()
        state.read_offset = state.append_handle.tell()
        record.collection = handle.collection
        state.records.append(record)
        state.keys.add(record.key)

    def has_key(self, collection: str, record: MetricRecord) -> bool:
        self._refresh(collection)
        return record.key in self._require(collection).keys

    # -- queries -----------------------------------------------------------

    def query(
        self,
        collection: str,
        subject_id: str | None = None,
        metric_name: str | None = None,
        time_range: tuple[float, float] | None = None,
    ) -> list[MetricRecord]:
        """Records sorted by window_start; all filters are conjunctive."""
        self._refresh(collection)
        state = self._require(collection)
        rows = state.records
        if subject_id is not None:
            rows = [r for r in rows if r.subject_id == subject_id]
        if metric_name is not None:
            rows = [r for r in rows if r.metric_name == metric_name]
        if time_range is not None:
            lo, hi = time_range
            rows = [r for r in rows if lo <= r.window_start <= hi]
        return sorted(rows, key=lambda r: r.window_start)

    def subjects(self) -> set[str]:
        seen: set[str] = set()
        for name in self._state:
            self._refresh(name)
            seen.update(r.subject_id for r in self._state[name].records)
        return seen

    def skipped_lines(self, collection: str) -> int:
        self._refresh(collection)
        return self._require(collection).skipped_lines

    def collection_bytes(self, collection: str) -> bytes:
        state = self._require(collection)
        if not state.path.exists():
            return b""
        return state.path.read_bytes()

    def close(self) -> None:
        for state in self._state.values():
            if state.append_handle is not None:
                state.append_handle.close()
                state.append_handle = None

    def __del__(self):  # best effort; close() is the real contract
        try:
            self.close()
        except Exception:
            pass

    # -- internals ----------------------------------------------------------

    def _require(self, collection: str) -> _CollectionState:
        state = self._state.get(collection)
        if state is None:
            raise NotFound(f"unknown collection {collection!r}")
        return state

    def _refresh(self, collection: str) -> None:
        """Tail any bytes appended since the last read (append-only makes
        incremental indexing safe across processes)."""
        state = self._require(collection)
        if not state.path.exists():
            return
        size = state.path.stat().st_size
        if size <= state.read_offset:
            return
        with state.path.open("rb") as fh:
            fh.seek(state.read_offset)
            chunk = fh.read()
            state.read_offset = fh.tell()
        for line in chunk.decode("utf-8").splitlines():
            if not line.strip():
                continue
            try:
                record = MetricRecord.from_json(collection, line)
            except (json.JSONDecodeError, KeyError, TypeError, ValueError, ValidationError):
                state.skipped_lines += 1
                continue
            if record.key in state.keys:
                state.skipped_lines += 1
                continue
            state.records.append(record)
            state.keys.add(record.key)
