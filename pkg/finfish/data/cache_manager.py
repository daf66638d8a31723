import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from finfish.core.config import Settings, settings as default_settings

logger = logging.getLogger(__name__)


class CacheManager:
    """Content-addressed JSON cache on disk.

    Keys are derived from (command, params, artifact version), so a version
    bump invalidates every entry. With no cache directory configured every
    lookup misses and nothing is written.
    """

    def __init__(self, directory: Optional[Path] = None, version: Optional[str] = None, config: Settings = default_settings):
        self.directory = Path(directory) if directory is not None else config.cache
        self.version = version or config.artifact_version
        self.hits = 0
        self.misses = 0
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def key(self, command: str, params: Dict[str, Any]) -> str:
        material = json.dumps(
            {"command": command, "params": params, "version": self.version},
            sort_keys=True,
            default=str,
        )
        return hashlib.sha256(material.encode("utf-8")).hexdigest()

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Optional[Any]:
        """Cached payload, or None on a miss or an unreadable entry."""
        if not self.enabled:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            logger.warning(f"⚠️ Corrupt cache entry {path.name}, recomputing: {exc}")
            return None

    def set(self, key: str, value: Any) -> bool:
        if not self.enabled:
            return False
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        try:
            tmp.write_text(json.dumps(value, sort_keys=True), encoding="utf-8")
            tmp.replace(path)
            return True
        except OSError as exc:
            logger.warning(f"⚠️ Could not write cache entry {path.name}: {exc}")
            return False

    def fetch(self, command: str, params: Dict[str, Any], producer: Callable[[], Any]) -> Any:
        """Return the cached payload for (command, params), producing and storing it on a miss."""
        key = self.key(command, params)
        cached = self.get(key)
        if cached is not None:
            self.hits += 1
            logger.info(f"💾 Cache hit for {command}")
            return cached
        self.misses += 1
        value = producer()
        self.set(key, value)
        return value

    @property
    def hit_rate(self) -> float:
        total = self.hits + self.misses
        return self.hits / total if total else 0.0

    def clear(self) -> int:
        """Delete every entry; returns the number removed."""
        if not self.enabled:
            return 0
        removed = 0
        for path in self.directory.glob("*.json"):
            path.unlink()
            removed += 1
        return removed
