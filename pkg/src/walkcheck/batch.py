"""Batched multi-trial tester drivers.

Runs many independent tester trials through one kernel invocation per chunk:
walks for all (trial, repetition) pairs execute rep-parallel with separate
probe bitsets, and the sequential run-level query memoization is reconstructed
afterwards from cumulative unions in repetition order.  Verdicts, collision
records and ledgers are identical to looping walkcheck.testers per trial with
seed path (master_seed, trial); tests pin that equivalence.
"""

from __future__ import annotations

import math

import numpy as np

from .collisions import CollisionQuery, count_at_least, modeled_quantum_cost
from .graphs import BoundedDegreeGraph, QueryLedger
from .testers import (
    MODE_RANDOM,
    BipartiteParams,
    ExpansionParams,
    TesterVerdict,
    draw_rep_coins,
    endpoint_collision_count,
    seed_path,
    substream,
)
from .walkkernel import new_cache, new_occupancy, run_endpoints, run_parity_scan

DEFAULT_CHUNK_BYTES = 1 << 28


def _trial_chunks(trials: int, per_trial_bytes: int, chunk_bytes: int):
    size = max(1, chunk_bytes // max(1, per_trial_bytes))
    for lo in range(0, trials, size):
        yield lo, min(lo + size, trials)


def _assemble(g, params, mode, path, lo, hi, alphabet):
    """Starts/coins/groups plus the per-(trial, rep) generators, rep-parallel."""
    reps, walks, length = params.repetitions, params.walks, params.length
    n_t = hi - lo
    B = n_t * reps * walks
    starts = np.empty(B, dtype=np.int64)
    coins = np.empty((B, length), dtype=np.uint8)
    groups = np.repeat(np.arange(n_t * reps, dtype=np.int64), walks)
    rngs = []
    for local in range(n_t):
        for rep in range(reps):
            rng = substream(*path, lo + local, rep)
            s = int(rng.integers(0, g.n_vertices))
            block = draw_rep_coins(rng, mode, walks, length, alphabet, params.k_indep)
            row = (local * reps + rep) * walks
            starts[row : row + walks] = s
            coins[row : row + walks] = block
            rngs.append(rng)
    return starts, coins, groups, rngs


def _sequential_query_counts(cache, n_t, reps):
    """Distinct-probe totals after each repetition, per trial."""
    cells = cache.shape[1]
    acc = np.logical_or.accumulate(cache.reshape(n_t, reps, cells).astype(bool), axis=1)
    return acc.sum(axis=2, dtype=np.int64)


def run_bipartiteness_trials(
    g: BoundedDegreeGraph,
    params: BipartiteParams,
    mode: str,
    master_seed,
    trials: int,
    chunk_bytes: int = DEFAULT_CHUNK_BYTES,
) -> list[TesterVerdict]:
    """Batched equivalent of test_bipartiteness over trials seeds (master, t)."""
    path = seed_path(master_seed)
    n = g.n_vertices
    reps, walks, length = params.repetitions, params.walks, params.length
    alphabet = 2 * g.degree_bound
    domain = walks * length
    rep_cost = modeled_quantum_cost(domain, 2 * n) if domain >= 2 else 0
    per_trial = reps * walks * length + reps * (n * g.degree_bound + 2 * n)
    verdicts: list[TesterVerdict] = []
    for lo, hi in _trial_chunks(trials, per_trial, chunk_bytes):
        n_t = hi - lo
        starts, coins, groups, _ = _assemble(g, params, mode, path, lo, hi, alphabet)
        cache = new_cache(n_t * reps, g)
        occ = new_occupancy(n_t * reps, g)
        hit = np.zeros(n_t * reps, dtype=np.uint8)
        run_parity_scan(g, starts, coins, groups, cache, occ, hit)
        hits = hit.reshape(n_t, reps).astype(bool)
        qcum = _sequential_query_counts(cache, n_t, reps)
        for local in range(n_t):
            row = hits[local]
            first = int(np.argmax(row)) if row.any() else reps
            reps_run = min(first + 1, reps)
            accept = not row[:reps_run].any()
            ledger = QueryLedger(
                classical_queries=int(qcum[local, reps_run - 1]),
                modeled_quantum_queries=reps_run * rep_cost,
                wall_work=reps_run * walks * length,
            )
            verdicts.append(
                TesterVerdict(
                    kind="bipartiteness",
                    accept=accept,
                    collisions_per_rep=[int(v) for v in row[:reps_run]],
                    reps_run=reps_run,
                    ledger=ledger,
                    params=params,
                    mode=mode,
                    seed=(*path, lo + local),
                )
            )
    return verdicts


def run_expansion_trials(
    g: BoundedDegreeGraph,
    params: ExpansionParams,
    mode: str,
    master_seed,
    trials: int,
    inject_failure: float = 0.0,
    chunk_bytes: int = DEFAULT_CHUNK_BYTES,
) -> list[TesterVerdict]:
    """Batched equivalent of test_expansion over trials seeds (master, t)."""
    path = seed_path(master_seed)
    n = g.n_vertices
    reps, walks, length = params.repetitions, params.walks, params.length
    alphabet = 2 * g.degree_bound
    m_count = int(math.floor(params.threshold)) + 1
    per_trial = reps * walks * (length + 16)
    verdicts: list[TesterVerdict] = []
    for lo, hi in _trial_chunks(trials, per_trial, chunk_bytes):
        n_t = hi - lo
        starts, coins, groups, rngs = _assemble(g, params, mode, path, lo, hi, alphabet)
        cache = new_cache(n_t * reps, g)
        endpoints, _ = run_endpoints(g, starts, coins, groups=groups, cache=cache)
        eps3 = endpoints.reshape(n_t, reps, walks)
        qcum = _sequential_query_counts(cache, n_t, reps)
        for local in range(n_t):
            collisions = []
            ledger = QueryLedger()
            accept = True
            reps_run = 0
            for rep in range(reps):
                reps_run = rep + 1
                ep = eps3[local, rep]
                x = endpoint_collision_count(ep)
                collisions.append(x)
                if mode == MODE_RANDOM:
                    rejected = x > params.threshold
                else:
                    rejected = False
                    ep_list = ep.tolist()
                    rng = rngs[local * reps + rep]
                    for _ in range(params.outer_retries):
                        query = CollisionQuery(
                            domain_size=walks,
                            evaluator=ep_list.__getitem__,
                            relation=lambda a, b: a == b,
                            codomain_size=n,
                            injected_failure=inject_failure,
                        )
                        result = count_at_least(query, m_count, rng, ledger=ledger)
                        if result.reached:
                            rejected = True
                            break
                if rejected:
                    accept = False
                    break
            ledger.classical_queries = int(qcum[local, reps_run - 1])
            ledger.wall_work = reps_run * walks * length
            verdicts.append(
                TesterVerdict(
                    kind="expansion",
                    accept=accept,
                    collisions_per_rep=collisions,
                    reps_run=reps_run,
                    ledger=ledger,
                    params=params,
                    mode=mode,
                    seed=(*path, lo + local),
                )
            )
    return verdicts
