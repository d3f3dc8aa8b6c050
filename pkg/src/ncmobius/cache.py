"""On-disk cache for verification payloads.

Entries are JSON files named by a hash of the full key.  Unreadable or
malformed entries are discarded with a warning; an unwritable directory only
disables storing.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

log = logging.getLogger(__name__)

ENV_VAR = "NCP_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "ncmobius"


class ResultCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    @staticmethod
    def key_digest(key: dict) -> str:
        blob = json.dumps(key, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:32]

    def path_for(self, key: dict) -> Path:
        return self.directory / f"{self.key_digest(key)}.json"

    def load(self, key: dict) -> dict | None:
        path = self.path_for(key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        except OSError as exc:
            log.warning("cannot read cache entry %s: %s", path, exc)
            return None
        try:
            entry = json.loads(text)
            if entry["key"] != key:
                raise ValueError("key mismatch")
            return entry["payload"]
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("discarding corrupt cache entry %s (%s)", path, exc)
            try:
                path.unlink()
            except OSError:
                pass
            return None

    def store(self, key: dict, payload: dict) -> bool:
        path = self.path_for(key)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps({"key": key, "payload": payload}, sort_keys=True))
            tmp.replace(path)
            return True
        except OSError as exc:
            log.warning("cache directory %s is not writable (%s); continuing without cache",
                        self.directory, exc)
            return False
