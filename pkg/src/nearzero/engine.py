"""Shared search machinery: budgets, deterministic scans, parallel fan-out.

Every searcher in the toolkit is a pair (candidate enumerator, acceptance
test) driven through `run_search`. The enumerator yields candidates in the
canonical order its module defines; the engine guarantees the returned
result is the canonically minimal accepted candidate, no matter how many
workers evaluate candidates concurrently, and that search effort never
exceeds the budget.

Exhaustion is an outcome, not an error: a bounded search that finds
nothing reports the frontier it reached and claims nothing beyond it.
"""

from __future__ import annotations

import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

_CHUNK = 32

DEFAULT_MAX_N = 8
DEFAULT_MAX_NODES = 1_000_000


@dataclass(frozen=True)
class SearchBudget:
    """Bounds on a search: structural size, acceptance tests, wall time."""

    max_n: int = DEFAULT_MAX_N
    max_nodes: int = DEFAULT_MAX_NODES
    wall_time: Optional[float] = None

    def __post_init__(self):
        if self.max_n < 0 or self.max_nodes < 0:
            raise ValueError("budget bounds must be nonnegative")
        if self.wall_time is not None and self.wall_time < 0:
            raise ValueError("wall_time must be nonnegative")


@dataclass(frozen=True)
class Exhausted:
    """Honest failure: the bounded search ended without a witness."""

    nodes_visited: int
    max_n_reached: int


def run_search(
    candidates: Iterable,
    accept: Callable[[Any], Any],
    budget: SearchBudget,
    *,
    workers: int = 1,
    n_of: Callable[[Any], int] | None = None,
):
    """Scan candidates in order; return the first accepted payload or Exhausted.

    `accept` must be pure: it returns a payload object for an accepted
    candidate and None otherwise. Candidates must arrive with their
    structural size (as reported by `n_of`) nondecreasing; enumeration stops
    at the first candidate exceeding budget.max_n. One node is charged per
    candidate handed to `accept`, so nodes_visited <= max_nodes always.

    The outcome is identical for any worker count: workers evaluate ordered
    chunks speculatively, and the reducer takes the earliest accepted
    candidate in enumeration order.
    """
    if workers < 1:
        raise ValueError("workers must be at least 1")
    deadline = None
    if budget.wall_time is not None:
        deadline = time.monotonic() + budget.wall_time

    if workers == 1:
        nodes = 0
        max_n = 0
        for cand in candidates:
            if n_of is not None:
                n = n_of(cand)
                if n > budget.max_n:
                    break
            if nodes >= budget.max_nodes:
                break
            if deadline is not None and time.monotonic() >= deadline:
                break
            nodes += 1
            if n_of is not None:
                max_n = max(max_n, n)
            payload = accept(cand)
            if payload is not None:
                return payload
        return Exhausted(nodes, max_n)

    return _run_parallel(candidates, accept, budget, workers, n_of, deadline)


def _eval_chunk(accept, chunk):
    # Workers stop at their first local acceptance; the reducer consumes
    # chunks in submission order, so the global minimum is preserved.
    for cand in chunk:
        payload = accept(cand)
        if payload is not None:
            return payload
    return None


def _run_parallel(candidates, accept, budget, workers, n_of, deadline):
    it = iter(candidates)
    pending: deque = deque()
    submitted = 0
    max_n = 0
    window = workers * 4
    drained = False

    pool = ThreadPoolExecutor(max_workers=workers)
    try:
        while True:
            while not drained and len(pending) < window:
                if deadline is not None and time.monotonic() >= deadline:
                    drained = True
                    break
                chunk = []
                while len(chunk) < _CHUNK and submitted + len(chunk) < budget.max_nodes:
                    try:
                        cand = next(it)
                    except StopIteration:
                        drained = True
                        break
                    if n_of is not None:
                        n = n_of(cand)
                        if n > budget.max_n:
                            drained = True
                            break
                        max_n = max(max_n, n)
                    chunk.append(cand)
                if chunk:
                    pending.append(pool.submit(_eval_chunk, accept, chunk))
                    submitted += len(chunk)
                if len(chunk) < _CHUNK:
                    drained = True
                    break
            if not pending:
                return Exhausted(submitted, max_n)
            payload = pending.popleft().result()
            if payload is not None:
                return payload
    finally:
        pool.shutdown(wait=True, cancel_futures=True)
