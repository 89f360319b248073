"""Lazy random walks on the oracle graph (scalar reference implementation).

At vertex v a coin c in [0, 2d) moves to neighbor c+1 when c < deg(v) and
stays otherwise, so each neighbor is taken with probability 1/(2d).  Deciding
a step with c < d costs one oracle probe of slot (v, c+1) (the answer, vertex
or BOTTOM, settles move-vs-stay); c >= d needs no probe.  Probes can be
memoized across a tester run via an optional cache, in which case only cache
misses are charged.

The batched equivalents live in walkkernel; tests pin them to this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .graphs import BOTTOM, BoundedDegreeGraph, QueryLedger, neighbor_query
from .kwise import KWiseFamily, eval_symbol


class ParityEndpoint(NamedTuple):
    vertex: int
    parity: int


@dataclass(frozen=True)
class WalkTrace:
    """Visited vertices with consecutive repeats omitted, plus the move count."""

    visited: tuple
    moves: int

    @property
    def endpoint(self) -> int:
        return self.visited[-1]

    def __post_init__(self):
        assert self.moves == len(self.visited) - 1


class WalkCoins:
    """Per-walk coin source: symbol(j) is pure in (source, walk index, j)."""

    def __init__(self, length: int, alphabet: int, symbol_fn: Callable[[int], int]):
        self.length = length
        self.alphabet = alphabet
        self._symbol_fn = symbol_fn

    def symbol(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise ValueError(f"coin index {j} out of range [0, {self.length})")
        return self._symbol_fn(j)

    @classmethod
    def from_sequence(cls, seq, alphabet: int) -> "WalkCoins":
        seq = [int(x) for x in seq]
        for x in seq:
            if not 0 <= x < alphabet:
                raise ValueError(f"coin {x} outside alphabet [0, {alphabet})")
        return cls(len(seq), alphabet, seq.__getitem__)

    @classmethod
    def from_family(cls, fam: KWiseFamily, walk_index: int, length: int, alphabet: int) -> "WalkCoins":
        base = walk_index * length
        return cls(length, alphabet, lambda j: eval_symbol(fam, base + j, alphabet))

    @classmethod
    def draw_random(cls, rng: np.random.Generator, length: int, alphabet: int) -> "WalkCoins":
        return cls.from_sequence(rng.integers(0, alphabet, size=length), alphabet)


def lazy_step(
    g: BoundedDegreeGraph,
    v: int,
    coin: int,
    ledger: QueryLedger,
    cache: dict | None = None,
) -> int:
    if not 0 <= coin < 2 * g.degree_bound:
        raise ValueError(f"coin {coin} outside [0, {2 * g.degree_bound})")
    ledger.wall_work += 1
    if coin >= g.degree_bound:
        return v
    key = (v, coin + 1)
    if cache is not None and key in cache:
        answer = cache[key]
    else:
        answer = neighbor_query(g, v, coin + 1, ledger)
        if cache is not None:
            cache[key] = answer
    return v if answer == BOTTOM else answer


def run_walk(
    g: BoundedDegreeGraph,
    s: int,
    coins: WalkCoins,
    ledger: QueryLedger,
    cache: dict | None = None,
) -> WalkTrace:
    if not 0 <= s < g.n_vertices:
        raise ValueError(f"start vertex {s} out of range")
    visited = [s]
    moves = 0
    v = s
    for j in range(coins.length):
        w = lazy_step(g, v, coins.symbol(j), ledger, cache)
        if w != v:
            visited.append(w)
            moves += 1
            v = w
    return WalkTrace(visited=tuple(visited), moves=moves)


def endpoint_parity(g, s, coins, ledger, cache=None) -> ParityEndpoint:
    trace = run_walk(g, s, coins, ledger, cache)
    return ParityEndpoint(vertex=trace.endpoint, parity=trace.moves % 2)


def endpoint(g, s, coins, ledger, cache=None) -> int:
    return run_walk(g, s, coins, ledger, cache).endpoint
