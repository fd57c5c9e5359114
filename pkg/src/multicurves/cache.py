"""On-disk cache for diagram enumerations.

Entries are canonical JSON files keyed by ``(schema, g, n, r)``.  Each file
embeds a sha256 of its own body; a mismatch, a foreign schema version or a
parse error all count as a miss and the entry gets recomputed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Any, Optional

from .diagrams import ChordDiagram, enumerate_reduced
from .surface import SurfaceSig

SCHEMA_VERSION = 1
ENV_VAR = "MULTICURVES_CACHE_DIR"

log = logging.getLogger(__name__)


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "multicurves"


class DiagramCache:
    def __init__(self, root: os.PathLike | str, schema_version: int = SCHEMA_VERSION):
        self.root = Path(root)
        self.schema_version = schema_version

    def _key(self, g: int, n: int, r: int) -> dict:
        return {"schema": self.schema_version, "g": g, "n": n, "r": r}

    def path(self, g: int, n: int, r: int) -> Path:
        return self.root / f"v{self.schema_version}-g{g}-n{n}-r{r}.json"

    def store(self, g: int, n: int, r: int, payload: Any) -> Path:
        body = {"key": self._key(g, n, r), "payload": payload}
        digest = hashlib.sha256(canonical_json(body).encode()).hexdigest()
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path(g, n, r)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(canonical_json({**body, "checksum": digest}))
        tmp.replace(path)
        return path

    def load(self, g: int, n: int, r: int) -> Optional[Any]:
        path = self.path(g, n, r)
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", path, exc)
            return None
        if not isinstance(data, dict) or "checksum" not in data:
            return None
        body = {"key": data.get("key"), "payload": data.get("payload")}
        if body["key"] != self._key(g, n, r):
            return None
        if hashlib.sha256(canonical_json(body).encode()).hexdigest() != data["checksum"]:
            log.warning("checksum mismatch in %s, recomputing", path)
            return None
        return body["payload"]


def cache_io(cache: DiagramCache, key: tuple[int, int, int], payload: Any = None) -> Any:
    """Store ``payload`` under ``key`` if given, otherwise load (None on miss)."""
    if payload is not None:
        cache.store(*key, payload)
        return payload
    return cache.load(*key)


def cached_enumerate(sig: SurfaceSig, r: int, cache: Optional[DiagramCache]) -> list[ChordDiagram]:
    if cache is None:
        return enumerate_reduced(sig, r)
    payload = cache.load(sig.g, sig.n, r)
    if payload is not None:
        return [ChordDiagram.from_json(sig, d) for d in payload["diagrams"]]
    diagrams = enumerate_reduced(sig, r)
    cache.store(sig.g, sig.n, r, {"count": len(diagrams), "diagrams": [d.to_json() for d in diagrams]})
    return diagrams
