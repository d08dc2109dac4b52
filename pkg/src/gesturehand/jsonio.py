"""Canonical JSON serialization helpers.

All documents the package writes go through :func:`canonical_json` so that
identical in-memory objects always serialize to identical bytes (key order is
the insertion order of the producing serializer, which is fixed per document
type). This is what makes golden-file and round-trip tests byte-exact.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def read_json(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    return json.loads(text)


def write_json(path, obj) -> None:
    Path(path).write_text(canonical_json(obj), encoding="utf-8")


def document_fingerprint(obj) -> str:
    """Stable 12-hex-digit content id of a document (sha256 of canonical form)."""
    digest = hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()
    return digest[:12]
