"""Collision finding and thresholded collision counting over a finite domain.

The finder is a classical executor (it evaluates every domain point) wearing
the cost model of the quantum walk subroutine it stands in for: each call is
charged ceil(|X|^(2/3)) * ceil(log2(|Y|+1))^log_exponent modeled queries.  An
injected failure probability exercises the retry logic of the thresholded
counter with the same contract as the probabilistic subroutine: it may miss an
existing collision, but a reported pair is always genuine, so "no collision"
answers on collision-free inputs are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .graphs import QueryLedger


def _icbrt(x: int) -> int:
    if x < 0:
        raise ValueError("negative cube root")
    r = round(x ** (1 / 3))
    while r**3 > x:
        r -= 1
    while (r + 1) ** 3 <= x:
        r += 1
    return r


def modeled_quantum_cost(domain_size: int, codomain_size: int, log_exponent: int = 1) -> int:
    """ceil(|X|^(2/3)) * ceil(log2(|Y|+1))^log_exponent, computed exactly."""
    if domain_size < 1 or codomain_size < 1:
        raise ValueError("sizes must be >= 1")
    sq = domain_size * domain_size
    root = _icbrt(sq)
    pow23 = root if root**3 == sq else root + 1
    return pow23 * codomain_size.bit_length() ** log_exponent


@dataclass
class CollisionQuery:
    """A collision-search instance.

    relation must be symmetric; bucket_key must be collision-complete (related
    values always share a key) so the finder can bucket before testing pairs.
    exclude holds ordered pairs and must be swap-closed.
    """

    domain_size: int
    evaluator: Callable[[int], object]
    relation: Callable[[object, object], bool]
    codomain_size: int
    bucket_key: Callable[[object], object] = lambda y: y
    exclude: set = field(default_factory=set)
    injected_failure: float = 0.0


@dataclass
class CollisionReport:
    found: Optional[tuple]
    classical_evals: int
    modeled_quantum_queries: int


def find_collision(q: CollisionQuery, rng: np.random.Generator) -> CollisionReport:
    """Return the lexicographically smallest non-excluded colliding pair, or None.

    Always returns None when no collision exists, regardless of the injected
    failure probability.
    """
    if q.domain_size < 2:
        raise ValueError("domain must have at least 2 points")
    values = [q.evaluator(x) for x in range(q.domain_size)]
    buckets: dict = {}
    for x, y in enumerate(values):
        buckets.setdefault(q.bucket_key(y), []).append(x)
    cost = modeled_quantum_cost(q.domain_size, q.codomain_size)
    found = None
    for x in range(q.domain_size):
        bucket = buckets[q.bucket_key(values[x])]
        for x2 in bucket:
            if x2 <= x:
                continue
            if (x, x2) in q.exclude:
                continue
            if q.relation(values[x], values[x2]):
                found = (x, x2)
                break
        if found is not None:
            break
    if found is not None and q.injected_failure > 0 and rng.random() < q.injected_failure:
        found = None
    return CollisionReport(
        found=found, classical_evals=q.domain_size, modeled_quantum_queries=cost
    )


def retry_budget(threshold: int) -> int:
    """ceil(log2(3M)) + 1 finder attempts per counted collision."""
    m3 = 3 * threshold
    t = (m3 - 1).bit_length()  # ceil(log2(3M))
    return t + 1


@dataclass
class CountResult:
    reached: bool
    found_pairs: list
    excluded: set
    finder_calls: int
    classical_evals: int
    modeled_quantum_queries: int


def count_at_least(
    q: CollisionQuery,
    threshold: int,
    rng: np.random.Generator,
    ledger: QueryLedger | None = None,
) -> CountResult:
    """True iff the finder can exhibit `threshold` distinct collisions.

    Sound for any injected failure (never reaches the threshold when fewer
    distinct collisions exist); complete when injected_failure = 0.
    """
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    t = retry_budget(threshold)
    excluded = set(q.exclude)
    pairs = []
    calls = 0
    evals = 0
    modeled = 0
    reached = True
    for _ in range(threshold):
        attempt_query = CollisionQuery(
            domain_size=q.domain_size,
            evaluator=q.evaluator,
            relation=q.relation,
            codomain_size=q.codomain_size,
            bucket_key=q.bucket_key,
            exclude=excluded,
            injected_failure=q.injected_failure,
        )
        got = None
        for _ in range(t):
            report = find_collision(attempt_query, rng)
            calls += 1
            evals += report.classical_evals
            modeled += report.modeled_quantum_queries
            if report.found is not None:
                got = report.found
                break
        if got is None:
            reached = False
            break
        x, x2 = got
        excluded.add((x, x2))
        excluded.add((x2, x))
        pairs.append(got)
    if ledger is not None:
        ledger.modeled_quantum_queries += modeled
    return CountResult(
        reached=reached,
        found_pairs=pairs,
        excluded=excluded,
        finder_calls=calls,
        classical_evals=evals,
        modeled_quantum_queries=modeled,
    )
