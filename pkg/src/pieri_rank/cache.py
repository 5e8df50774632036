"""On-disk artifact cache with atomic writes and checksum validation.

Layout::

    <root>/manifest.json              {"version": ..., "entries": {key: {...}}}
    <root>/<key>/<name>               payload files

Every file is written to a temporary name and renamed into place, so readers
never observe a half-written payload.  A manifest entry lists each file's
size and sha256; a mismatch on read means the entry is treated as absent.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

log = logging.getLogger(__name__)

CACHE_FORMAT = 1
ENV_VAR = "PIERI_RANK_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "pieri_rank"


def content_key(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:24]


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


class ArtifactCache:
    def __init__(self, root=None):
        self.root = Path(root) if root is not None else default_cache_dir()

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    def _manifest(self) -> dict:
        try:
            data = json.loads(self.manifest_path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return {"version": CACHE_FORMAT, "entries": {}}
        if data.get("version") != CACHE_FORMAT:
            log.warning("cache format %s != %s; ignoring old entries", data.get("version"), CACHE_FORMAT)
            return {"version": CACHE_FORMAT, "entries": {}}
        return data

    def entries(self) -> dict:
        return self._manifest()["entries"]

    def get(self, key: str) -> dict[str, Path] | None:
        """Validated file paths for ``key``, or None if absent or corrupt."""
        entry = self.entries().get(key)
        if entry is None:
            return None
        out = {}
        for name, meta in entry["files"].items():
            p = self.root / key / name
            if not p.exists() or p.stat().st_size != meta["size"] or sha256_file(p) != meta["sha256"]:
                log.warning("cache entry %s is corrupt (%s); rebuilding", key, name)
                return None
            out[name] = p
        return out

    def put(self, key: str, files: dict[str, bytes], meta: dict | None = None) -> dict[str, Path]:
        records = {}
        out = {}
        for name, data in files.items():
            p = self.root / key / name
            atomic_write(p, data)
            records[name] = {"size": len(data), "sha256": hashlib.sha256(data).hexdigest()}
            out[name] = p
        # read-modify-write of the manifest; last writer wins, entries are idempotent
        man = self._manifest()
        man["entries"][key] = {"files": records, "meta": meta or {}}
        atomic_write(self.manifest_path, json.dumps(man, sort_keys=True, indent=1).encode())
        return out

    def verify(self) -> dict[str, bool]:
        return {key: self.get(key) is not None for key in self.entries()}

    def clear(self) -> int:
        n = 0
        for key in list(self.entries()):
            d = self.root / key
            if d.is_dir():
                for f in d.iterdir():
                    f.unlink()
                d.rmdir()
            n += 1
        self.manifest_path.unlink(missing_ok=True)
        return n
