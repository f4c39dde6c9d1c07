"""Append-only conversation memory with similarity-based recall.

Records are persisted as a length-prefixed log: each record is a line
holding the byte length of its JSON payload, followed by the payload
and a newline.  Records are immutable once written; recall never
mutates the log.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

from ..errors import StoreError
from .critique import cosine_similarity, tokenize

DEFAULT_RECALL_THRESHOLD = 0.6


@dataclass(frozen=True)
class MemoryRecord:
    query: str
    transcript: str
    stored_at: float
    key_terms: tuple[str, ...]


@dataclass(frozen=True)
class RecallResult:
    record: MemoryRecord | None
    similarity: float

    @property
    def hit(self) -> bool:
        return self.record is not None


def _key_terms(query: str, answer: str) -> tuple[str, ...]:
    return tuple(tokenize(query) + tokenize(answer))


class MemoryStore:
    """Disk-backed append-only store; in-memory when no path is given."""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path else None
        self._records: list[MemoryRecord] = []
        if self.path and self.path.exists():
            self._records = list(self._read_log())

    def __len__(self) -> int:
        return len(self._records)

    @property
    def records(self) -> tuple[MemoryRecord, ...]:
        return tuple(self._records)

    def _read_log(self):
        data = self.path.read_bytes()
        pos = 0
        while pos < len(data):
            newline = data.index(b"\n", pos)
            length = int(data[pos:newline])
            payload = data[newline + 1 : newline + 1 + length]
            pos = newline + 1 + length + 1  # trailing newline
            raw = json.loads(payload)
            yield MemoryRecord(
                query=raw["query"],
                transcript=raw["transcript"],
                stored_at=raw["stored_at"],
                key_terms=tuple(raw["key_terms"]),
            )

    def store(self, query: str, transcript: str, answer: str = "") -> MemoryRecord:
        """Append one immutable conversation record."""
        if not transcript:
            raise StoreError("refusing to store an empty transcript")
        record = MemoryRecord(
            query=query,
            transcript=transcript,
            stored_at=time.time(),
            key_terms=_key_terms(query, answer or transcript[-400:]),
        )
        if self.path:
            payload = json.dumps(
                {
                    "query": record.query,
                    "transcript": record.transcript,
                    "stored_at": record.stored_at,
                    "key_terms": list(record.key_terms),
                },
                sort_keys=True,
            ).encode("utf-8")
            try:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "ab") as fh:
                    fh.write(str(len(payload)).encode() + b"\n" + payload + b"\n")
            except OSError as exc:
                raise StoreError(f"cannot append to memory log: {exc}") from exc
        self._records.append(record)
        return record

    def recall(self, query: str, threshold: float = DEFAULT_RECALL_THRESHOLD) -> RecallResult:
        """Best stored record if its similarity clears the threshold.

        A record matches on the stronger of two comparisons: against the
        stored query (so repeating a question scores 1.0) and against the
        key terms (stored query plus answer tokens, so recall also favors
        conversations about the same system and objective).
        """
        best: MemoryRecord | None = None
        best_score = 0.0
        for record in self._records:
            score = max(
                cosine_similarity(query, record.query),
                cosine_similarity(query, " ".join(record.key_terms)),
            )
            if score > best_score:
                best, best_score = record, score
        if best is not None and best_score >= threshold:
            return RecallResult(record=best, similarity=best_score)
        return RecallResult(record=None, similarity=best_score)
