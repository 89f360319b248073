"""Pure-numpy walk kernels (fallback when the compiled core is unavailable).

All kernels implement the same contract as walkcheck._walk_kernel: lazy walks
over a padded adjacency array, advancing every walk one coin per step.  A coin
c moves to neighbor c+1 when c < deg(v), else the walk stays.  Every step with
c < d probes oracle slot (v, c+1); probes are recorded in a per-group bitset
`cache` so callers can account distinct queries.  Kernels are vectorized
across walks, stepping all of them in lockstep.
"""

from __future__ import annotations

import numpy as np


def walk_endpoints(adj, deg, d, starts, coins, groups, cache, endpoints, moves):
    n = deg.shape[0]
    B, L = coins.shape
    cur = starts.astype(np.int64, copy=True)
    mv_count = np.zeros(B, dtype=np.int64)
    deg64 = deg.astype(np.int64)
    cache_flat = cache.reshape(-1)
    gbase = groups * np.int64(n * d)
    for j in range(L):
        c = coins[:, j].astype(np.int64)
        probe = c < d
        if probe.any():
            cache_flat[gbase[probe] + cur[probe] * d + c[probe]] = 1
        mv = c < deg64[cur]
        cur = np.where(mv, adj[cur, np.minimum(c, d - 1)].astype(np.int64), cur)
        mv_count += mv
    endpoints[:] = cur
    moves[:] = mv_count


def walk_traces(adj, deg, d, starts, coins, groups, cache, verts, pars):
    n = deg.shape[0]
    B, L = coins.shape
    cur = starts.astype(np.int64, copy=True)
    par = np.zeros(B, dtype=np.uint8)
    deg64 = deg.astype(np.int64)
    cache_flat = cache.reshape(-1)
    gbase = groups * np.int64(n * d)
    for j in range(L):
        c = coins[:, j].astype(np.int64)
        probe = c < d
        if probe.any():
            cache_flat[gbase[probe] + cur[probe] * d + c[probe]] = 1
        mv = c < deg64[cur]
        cur = np.where(mv, adj[cur, np.minimum(c, d - 1)].astype(np.int64), cur)
        par ^= mv.astype(np.uint8)
        verts[:, j] = cur
        pars[:, j] = par


def walk_parity_scan(adj, deg, d, starts, coins, groups, cache, occ, hit):
    """Streaming collision detector for the bipartiteness tester.

    Marks every post-step (vertex, parity) item in the per-group occupancy
    bitset `occ` (shape (G, 2n)) and sets hit[g]=1 as soon as some vertex has
    been seen at both parities within group g.
    """
    n = deg.shape[0]
    B, L = coins.shape
    cur = starts.astype(np.int64, copy=True)
    par = np.zeros(B, dtype=np.int64)
    deg64 = deg.astype(np.int64)
    cache_flat = cache.reshape(-1)
    occ_flat = occ.reshape(-1)
    gbase = groups * np.int64(n * d)
    obase = groups * np.int64(2 * n)
    for j in range(L):
        c = coins[:, j].astype(np.int64)
        probe = c < d
        if probe.any():
            cache_flat[gbase[probe] + cur[probe] * d + c[probe]] = 1
        mv = c < deg64[cur]
        cur = np.where(mv, adj[cur, np.minimum(c, d - 1)].astype(np.int64), cur)
        par ^= mv
        opp = occ_flat[obase + (1 - par) * n + cur] != 0
        if opp.any():
            hit[groups[opp]] = 1
        occ_flat[obase + par * n + cur] = 1
