"""Deterministic first-witness scans, optionally spread over worker threads.

The contract: the returned violation is the one belonging to the earliest
candidate in the given order, no matter how many workers evaluate the
predicate.  Workers must therefore be pure functions of their candidate.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

C = TypeVar("C")
V = TypeVar("V")


def first_violation(
    candidates: Sequence[C],
    check: Callable[[C], V | None],
    jobs: int = 1,
) -> V | None:
    """Earliest non-None result of ``check`` over ``candidates``.

    With ``jobs > 1`` the candidates are evaluated in chunks on a thread
    pool; results are merged in candidate order, so the answer is identical
    to the sequential scan.
    """
    if jobs <= 1 or len(candidates) < 2:
        for c in candidates:
            hit = check(c)
            if hit is not None:
                return hit
        return None

    chunk = max(1, (len(candidates) + jobs * 4 - 1) // (jobs * 4))
    blocks = [candidates[i : i + chunk] for i in range(0, len(candidates), chunk)]

    def run_block(block: Sequence[C]) -> V | None:
        for c in block:
            hit = check(c)
            if hit is not None:
                return hit
        return None

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for result in pool.map(run_block, blocks):
            if result is not None:
                return result
    return None
