"""On-disk cache of Weyl orbits.

One JSON file per (type, seed).  The cache only saves recomputation: a file
whose header does not match, or that fails to parse, is ignored.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .linalg import Vec

log = logging.getLogger(__name__)

FORMAT = "cartan-principal-orbit"
VERSION = 1
ENV_VAR = "CARTAN_PRINCIPAL_CACHE"


def default_cache_dir() -> Path | None:
    """Cache directory from the environment; ``off`` or empty disables it."""
    value = os.environ.get(ENV_VAR)
    if value is not None:
        if value.strip().lower() in ("", "off", "0", "none"):
            return None
        return Path(value)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "cartan-principal" / "orbits"


class OrbitCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def _path(self, type_name: str, seed: Sequence[Fraction]) -> Path:
        key = type_name + ":" + ",".join(str(Fraction(x)) for x in seed)
        digest = hashlib.sha256(key.encode()).hexdigest()[:24]
        return self.directory / f"{type_name}-{digest}.json"

    def get(self, type_name: str, seed: Sequence[Fraction]) -> tuple[Vec, ...] | None:
        path = self._path(type_name, seed)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        seed_s = [str(Fraction(x)) for x in seed]
        if doc.get("format") != FORMAT or doc.get("version") != VERSION:
            return None
        if doc.get("type") != type_name or doc.get("seed") != seed_s:
            return None
        try:
            return tuple(tuple(Fraction(x) for x in v) for v in doc["orbit"])
        except (KeyError, TypeError, ValueError):
            return None

    def put(self, type_name: str, seed: Sequence[Fraction], orbit: Sequence[Vec]) -> None:
        doc = {
            "format": FORMAT,
            "version": VERSION,
            "type": type_name,
            "seed": [str(Fraction(x)) for x in seed],
            "orbit": [[str(x) for x in v] for v in orbit],
        }
        path = self._path(type_name, seed)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(doc, sort_keys=True), encoding="utf-8")
            tmp.replace(path)
        except OSError as exc:
            log.warning("could not write orbit cache %s: %s", path, exc)
