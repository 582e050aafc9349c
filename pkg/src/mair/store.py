"""The three persistent record stores: documents, statements, networks.

Each store is one append-oriented JSONL file with an in-memory id index.
Writes are single-writer (serialised by a lock); reads are safe from any
thread.  A re-put of an existing id appends a new version and the index
points at the latest one; scans yield the latest version of each id in
first-insertion order.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Iterator, Mapping

__all__ = ["STORE_NAMES", "NotFoundError", "RecordStore", "StoreSet"]

STORE_NAMES = ("documents", "statements", "networks")


class NotFoundError(KeyError):
    """Requested record id is not in the store."""


def _encode(record: Mapping) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False)


class RecordStore:
    """One line-oriented store file, created on first write."""

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()
        self._records: dict[str, dict] = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as handle:
                for line in handle:
                    line = line.strip()
                    if not line:
                        continue
                    record = json.loads(line)
                    self._records[record["id"]] = record

    def put(self, record: Mapping) -> dict:
        if "id" not in record:
            raise ValueError("records must carry an 'id' field")
        stored = json.loads(_encode(record))
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as handle:
                handle.write(_encode(stored) + "\n")
            self._records[stored["id"]] = stored
        return stored

    def get(self, record_id: str) -> dict:
        try:
            return self._records[record_id]
        except KeyError:
            raise NotFoundError(f"no record {record_id!r} in {self.path.name}") from None

    def scan(self) -> Iterator[dict]:
        yield from list(self._records.values())

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, record_id: str) -> bool:
        return record_id in self._records


class StoreSet:
    """The documents/statements/networks stores under one directory."""

    def __init__(self, store_dir: str | Path) -> None:
        self.store_dir = Path(store_dir)
        self._stores: dict[str, RecordStore] = {}

    def store(self, name: str) -> RecordStore:
        if name not in STORE_NAMES:
            raise ValueError(f"unknown store {name!r}; expected one of {STORE_NAMES}")
        if name not in self._stores:
            self._stores[name] = RecordStore(self.store_dir / f"{name}.jsonl")
        return self._stores[name]

    def reset(self, name: str) -> RecordStore:
        """Drop and recreate a store (stage commands rebuild their outputs)."""
        store = self.store(name)
        store.path.unlink(missing_ok=True)
        self._stores[name] = RecordStore(store.path)
        return self._stores[name]

    @property
    def documents(self) -> RecordStore:
        return self.store("documents")

    @property
    def statements(self) -> RecordStore:
        return self.store("statements")

    @property
    def networks(self) -> RecordStore:
        return self.store("networks")
