"""Desk-scale persistence: content-addressed payload blobs plus a
single-file metadata log keyed by media_id.

The metadata store is an append-only JSONL file replayed on open (last write
wins). Writes are serialized behind a lock; reads hit the in-memory view, so
concurrent readers are free.
"""

from __future__ import annotations

import hashlib
import json
import threading
from pathlib import Path


class BlobStore:
    """Payload bytes stored under their sha256 digest."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, ref: str) -> Path:
        return self.root / f"sha256-{ref}"

    def put(self, content: bytes) -> str:
        ref = hashlib.sha256(content).hexdigest()
        path = self._path(ref)
        if not path.exists():
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(content)
            tmp.replace(path)
        return ref

    def get(self, ref: str) -> bytes:
        path = self._path(ref)
        if not path.is_file():
            raise KeyError(f"no blob for {ref}")
        content = path.read_bytes()
        if hashlib.sha256(content).hexdigest() != ref:
            raise ValueError(f"blob {ref} fails its digest check")
        return content

    def exists(self, ref: str) -> bool:
        return self._path(ref).is_file()


class MetadataStore:
    """Append-only JSON-lines key-value store for envelope metadata."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._records: dict[str, dict] = {}
        if self.path.exists():
            with self.path.open("r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    entry = json.loads(line)
                    self._records[entry["key"]] = entry["value"]

    def put(self, key: str, value: dict) -> None:
        line = json.dumps({"key": key, "value": value}, separators=(",", ":"), sort_keys=True)
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
            self._records[key] = value

    def get(self, key: str) -> dict:
        with self._lock:
            if key not in self._records:
                raise KeyError(key)
            return self._records[key]

    def __contains__(self, key: str) -> bool:
        with self._lock:
            return key in self._records

    def keys(self) -> list[str]:
        with self._lock:
            return list(self._records)
