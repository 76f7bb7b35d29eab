"""Worker-count policy shared by the parallel pipeline stages."""

from __future__ import annotations

import os


def worker_count() -> int:
    """Worker cap from the ZECS_THREADS environment variable (default 1)."""
    raw = os.environ.get("ZECS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
