"""On-disk cache of expensive expansions.

Entries are series files in the interchange format with one leading comment
line of JSON metadata (order, weight, group, labels).  The key is a content
hash of the constructor name, its parameters and the coefficient ring; the
order is left out so a wider entry can serve a narrower request.
"""

from __future__ import annotations

import hashlib
import json
import os
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .modforms import FormRecord
from .qseries import QQ, Ring, SeriesError
from .seriesio import dumps, loads

ENV_VAR = "ASDCONG_CACHE"


class CacheWarning(UserWarning):
    pass


def cache_key(constructor: str, params: dict, ring: Ring = QQ) -> str:
    blob = json.dumps({"constructor": constructor, "params": params, "ring": str(ring)},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:32]


class SeriesCache:
    """Directory-backed cache; ``root=None`` disables it."""

    def __init__(self, root: str | os.PathLike | None = None):
        if root is None:
            root = os.environ.get(ENV_VAR) or None
        self.root = Path(root) if root is not None else None
        self.hits = 0
        self.misses = 0

    def path(self, key: str) -> Path:
        return self.root / f"{key}.series"

    def _load(self, path: Path, ring: Ring) -> tuple[Fraction, FormRecord] | None:
        try:
            text = path.read_text()
            first, _, _ = text.partition("\n")
            if not first.startswith("# "):
                raise SeriesError("missing metadata line")
            meta = json.loads(first[2:])
            series = loads(text)
            if str(series.ring) != str(ring):
                raise SeriesError(f"stored ring {series.ring} differs from requested {ring}")
            rec = FormRecord(series, meta["weight"], meta["group"], meta["b_eigen"],
                             meta["holo_class"], meta["name"])
            return Fraction(meta["order"]), rec
        except (OSError, ValueError, KeyError, TypeError) as exc:
            warnings.warn(f"cache entry {path.name} unreadable ({exc}); recomputing", CacheWarning)
            return None

    def _store(self, path: Path, order: Fraction, rec: FormRecord) -> None:
        meta = {
            "order": str(order),
            "weight": rec.weight,
            "group": rec.group,
            "b_eigen": rec.b_eigen,
            "holo_class": rec.holo_class,
            "name": rec.name,
        }
        self.root.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text("# " + json.dumps(meta, sort_keys=True) + "\n" + dumps(rec.series))
        os.replace(tmp, path)

    def get(self, constructor: str, params: dict, order, producer: Callable[[], FormRecord],
            ring: Ring = QQ) -> FormRecord:
        """The form through q^order, from the cache when a wide enough entry exists."""
        order = Fraction(order)
        if self.root is None:
            self.misses += 1
            return producer()
        path = self.path(cache_key(constructor, params, ring))
        if path.exists():
            hit = self._load(path, ring)
            if hit is not None and hit[0] >= order:
                self.hits += 1
                stored, rec = hit
                if stored == order:
                    return rec
                return FormRecord(rec.series.truncate_q(order), rec.weight, rec.group,
                                  rec.b_eigen, rec.holo_class, rec.name)
        self.misses += 1
        rec = producer()
        self._store(path, order, rec)
        return rec
