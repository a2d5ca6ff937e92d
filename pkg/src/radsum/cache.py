"""Tiny on-disk cache for expensive exact counts.

The exact count at large caps (minutes of enumeration) is computed once and
remembered across runs.  Location: $RADSUM_CACHE_DIR or ~/.cache/radsum.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path


def cache_dir() -> Path:
    env = os.environ.get("RADSUM_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "radsum"


def _cache_file() -> Path:
    return cache_dir() / "exact_counts.json"


def _load() -> dict[str, int]:
    path = _cache_file()
    if not path.exists():
        return {}
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, OSError):
        return {}


def _store(data: dict[str, int]) -> None:
    path = _cache_file()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=0, sort_keys=True), encoding="utf-8")


def s_exact_cached(j: int, k: int, w: Fraction | int) -> int:
    """s_exact with a persistent cache keyed by (j, k, w)."""
    from .counting import s_exact

    w = Fraction(w)
    key = f"s:{j}:{k}:{w.numerator}/{w.denominator}"
    data = _load()
    if key in data:
        return int(data[key])
    value = s_exact(j, k, w)
    data = _load()
    data[key] = value
    _store(data)
    return value
