"""On-disk cache of per-subset homology ranks and torsion.

One JSON file per ``(complex digest, J)``.  Records carry a SHA-256 checksum of
their payload and are written to a temporary file then renamed into place, so a
reader sees either a complete record or none.  Anything that fails to parse or
verify is treated as a miss.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

FORMAT_VERSION = 1
ENV_VAR = "MAL_CACHE_DIR"


def _checksum(payload: dict) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def _encode(entry: tuple[dict, dict]) -> dict:
    ranks, torsion = entry
    return {
        "ranks": {str(k): v for k, v in sorted(ranks.items())},
        "torsion": {str(k): list(v) for k, v in sorted(torsion.items())},
    }


def _decode(payload: dict) -> tuple[dict, dict]:
    ranks = {int(k): int(v) for k, v in payload["ranks"].items()}
    torsion = {int(k): [int(x) for x in v] for k, v in payload["torsion"].items()}
    return ranks, torsion


class HomologyCache:
    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0
        self.writes = 0
        self.corrupt = 0

    @classmethod
    def from_settings(cls, flag: str | None = None) -> "HomologyCache | None":
        """Explicit directory, else ``$MAL_CACHE_DIR``, else no cache."""
        where = flag or os.environ.get(ENV_VAR)
        return cls(where) if where else None

    def _path(self, digest: str, J: int) -> Path:
        return self.dir / digest[:2] / f"{digest}-{J:x}.json"

    def _read(self, path: Path) -> tuple[dict, dict] | None:
        try:
            record = json.loads(path.read_text())
            if record.get("version") != FORMAT_VERSION or record.get("checksum") != _checksum(record["payload"]):
                return None
            return _decode(record["payload"])
        except (OSError, ValueError, KeyError, TypeError, AttributeError):
            return None

    def get(self, digest: str, J: int) -> tuple[dict, dict] | None:
        path = self._path(digest, J)
        if not path.exists():
            self.misses += 1
            return None
        entry = self._read(path)
        if entry is None:
            self.corrupt += 1
            self.misses += 1
            path.unlink(missing_ok=True)
            return None
        self.hits += 1
        return entry

    def put(self, digest: str, J: int, entry: tuple[dict, dict]) -> None:
        payload = _encode(entry)
        record = {"version": FORMAT_VERSION, "digest": digest, "J": J, "payload": payload, "checksum": _checksum(payload)}
        path = self._path(digest, J)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(record, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        self.writes += 1

    def records(self) -> list[Path]:
        return sorted(self.dir.glob("*/*.json"))

    def stats(self) -> dict:
        files = self.records()
        return {
            "directory": str(self.dir),
            "records": len(files),
            "bytes": sum(p.stat().st_size for p in files),
            "hits": self.hits,
            "misses": self.misses,
            "writes": self.writes,
            "corrupt": self.corrupt,
        }

    def verify(self) -> dict:
        """Re-check every record; corrupt ones are deleted."""
        bad = []
        files = self.records()
        for p in files:
            if self._read(p) is None:
                bad.append(p.name)
                p.unlink(missing_ok=True)
        return {"checked": len(files), "corrupt": len(bad), "evicted": bad}

    def clear(self) -> int:
        files = self.records()
        for p in files:
            p.unlink(missing_ok=True)
        for p in self.dir.glob(".tmp-*"):
            p.unlink(missing_ok=True)
        for sub in self.dir.iterdir():
            if sub.is_dir() and not any(sub.iterdir()):
                sub.rmdir()
        return len(files)
