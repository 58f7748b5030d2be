"""Small shared helpers: stable seeding, thread cap, chunked reductions."""

from __future__ import annotations

import hashlib
import json
import os
import random
from concurrent.futures import ThreadPoolExecutor

from .errors import ValidationError


def stable_rng(seed: int, *key) -> random.Random:
    """Deterministic RNG derived from a seed and a structured key.

    Stable across processes and runs (unlike hash()).
    """
    blob = repr((seed,) + key).encode()
    digest = hashlib.sha256(blob).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def worker_count() -> int:
    """Worker cap from JLCS_THREADS (default 1)."""
    raw = os.environ.get("JLCS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"JLCS_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise ValidationError("JLCS_THREADS must be >= 1")
    return n


def split_ranges(total: int, parts: int) -> list[range]:
    """Split range(total) into <= parts contiguous chunks, in order."""
    parts = max(1, min(parts, total)) if total else 1
    out = []
    base, extra = divmod(total, parts)
    start = 0
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        out.append(range(start, start + size))
        start += size
    return out


def run_chunks(fn, chunks):
    """Evaluate fn over chunks, possibly on worker threads.

    Results are returned in chunk order regardless of scheduling, so any
    associative-commutative combine downstream is deterministic.
    """
    workers = worker_count()
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))


def solve_congruence(a: int, b: int, n: int):
    """Solve a*t = b (mod n).  Returns (t0, step) with all solutions
    t0 + k*step mod n, or None if unsolvable."""
    if n == 1:
        return 0, 1
    import math

    g = math.gcd(a, n)
    if b % g:
        return None
    n2 = n // g
    t0 = (b // g) * pow((a // g) % n2, -1, n2) % n2
    return t0, n2


def json_line(obj) -> str:
    """Canonical single-line JSON for byte-stable reports."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
