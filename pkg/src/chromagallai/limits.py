"""Size guards.

The exhaustive routines are exponential, so each one refuses inputs above a
fixed vertex count.  Setting ``CHROMA_MAX_N`` raises every guard to that
value (with a warning), which is occasionally useful for one-off runs.
"""

from __future__ import annotations

import logging
import os

from .errors import UnsupportedSizeError

log = logging.getLogger(__name__)

GRAPH_MAX_N = 16
CANONICAL_MAX_N = 10
ENUMERATION_MAX_N = 8
BRUTE_FORCE_MAX_N = 7

_warned = False


def _override() -> int | None:
    global _warned
    raw = os.environ.get("CHROMA_MAX_N")
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UnsupportedSizeError(f"CHROMA_MAX_N must be an integer, got {raw!r}") from None
    if not _warned:
        log.warning("CHROMA_MAX_N=%d overrides all size guards; runtimes may explode", value)
        _warned = True
    return value


def check_size(n: int, limit: int, what: str) -> None:
    """Raise ``UnsupportedSizeError`` when ``n`` exceeds ``limit`` (or the env override)."""
    override = _override()
    effective = max(limit, override) if override is not None else limit
    if n > effective:
        raise UnsupportedSizeError(f"{what} supports n <= {effective}, got n = {n}")
