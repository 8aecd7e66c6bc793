"""Content-addressed store for enumeration results.

One JSON file per key under POSITROID_LAB_CACHE (default ./.plab-cache);
writers go through a temp file and an atomic rename, so concurrent
processes can share a cache directory.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass

FORMAT_VERSION = 1

ENV_VAR = "POSITROID_LAB_CACHE"
DEFAULT_DIR = ".plab-cache"


@dataclass(frozen=True)
class CacheEntry:
    key: str
    value: dict
    format_version: int = FORMAT_VERSION


def cache_dir() -> str:
    return os.environ.get(ENV_VAR, DEFAULT_DIR)


def _path_for(key: str) -> str:
    digest = hashlib.sha256(key.encode()).hexdigest()[:32]
    return os.path.join(cache_dir(), f"{digest}.json")


def cache_get(key: str) -> CacheEntry | None:
    path = _path_for(key)
    try:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError):
        return None
    if raw.get("formatVersion") != FORMAT_VERSION or raw.get("key") != key:
        return None
    return CacheEntry(key=key, value=raw["value"], format_version=FORMAT_VERSION)


def cache_put(key: str, value: dict) -> CacheEntry:
    entry = CacheEntry(key=key, value=value)
    directory = cache_dir()
    os.makedirs(directory, exist_ok=True)
    payload = json.dumps(
        {"formatVersion": FORMAT_VERSION, "key": key, "value": value},
        sort_keys=True,
    )
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(payload)
        os.replace(tmp, _path_for(key))
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return entry
