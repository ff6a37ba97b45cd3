"""Content-addressed caching of bases and invariant records."""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .groebner import GroebnerBasis, load_basis, save_basis

ENV_CACHE_DIR = "TVFORGE_CACHE_DIR"


def hash_text(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode())
        h.update(b"\x00")
    return h.hexdigest()[:24]


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "tvforge"


class Cache:
    def __init__(self, root: Path | str | None = None):
        self.root = Path(root) if root else default_cache_dir()

    def _basis_path(self, source: str) -> Path:
        return self.root / f"{source}.basis"

    def load_basis(self, source: str) -> GroebnerBasis | None:
        path = self._basis_path(source)
        if not path.exists():
            return None
        gb = load_basis(path)
        if gb.source != source:
            raise ValueError(
                f"cache corruption: {path} carries source {gb.source!r}, "
                f"expected {source!r}")
        return gb

    def store_basis(self, gb: GroebnerBasis) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._basis_path(gb.source)
        save_basis(gb, path)
        return path

    def _record_path(self, key: str) -> Path:
        return self.root / f"{key}.record.json"

    def load_record(self, key: str) -> dict | None:
        path = self._record_path(key)
        if not path.exists():
            return None
        return json.loads(path.read_text())

    def store_record(self, key: str, data: dict) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._record_path(key)
        path.write_text(json.dumps(data, sort_keys=True, indent=0))
        return path
