"""Runtime switches read from the environment."""
from __future__ import annotations

import os

DEBUG_ENV = "PCURVES_DEBUG"
WORKERS_ENV = "PCURVES_WORKERS"


def debug_enabled() -> bool:
    """Extra self-checks (Weil bound, group axioms, explicit lifts)."""
    return os.environ.get(DEBUG_ENV, "").strip() not in ("", "0", "false", "no")


def worker_count(default: int = 1) -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return default
    n = int(raw)
    if n < 1:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer")
    return n
