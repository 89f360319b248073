"""Compiled and numpy walk kernels must be bit-identical; scalar engine is the
reference for both."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walkcheck.graphs import BoundedDegreeGraph, QueryLedger, random_bipartite
from walkcheck.walkengine import WalkCoins, run_walk
from walkcheck.walkkernel import (
    available_kernels,
    get_impl,
    kernel_name,
    new_cache,
    new_occupancy,
    run_endpoints,
    run_parity_scan,
    run_traces,
)

pytestmark = pytest.mark.skipif(
    "compiled" not in available_kernels(), reason="compiled kernel not built"
)


def _workload(seed, n_half=12, walks=60, length=30, groups=5):
    rng = np.random.default_rng(seed)
    g = random_bipartite(n_half, 3, rng)
    starts = rng.integers(0, g.n_vertices, size=walks).astype(np.int64)
    coins = rng.integers(0, 2 * g.degree_bound, size=(walks, length), dtype=np.uint8)
    grp = rng.integers(0, groups, size=walks).astype(np.int64)
    return g, starts, coins, grp, groups


@pytest.mark.parametrize("seed", range(6))
def test_endpoints_identical(seed):
    g, starts, coins, grp, ngroups = _workload(seed)
    results = {}
    for name in available_kernels():
        cache = new_cache(ngroups, g)
        e, m = run_endpoints(g, starts, coins, groups=grp, cache=cache, impl=get_impl(name))
        results[name] = (e, m, cache)
    a, b = results["compiled"], results["python"]
    assert np.array_equal(a[0], b[0])
    assert np.array_equal(a[1], b[1])
    assert np.array_equal(a[2], b[2])


@pytest.mark.parametrize("seed", range(4))
def test_traces_and_scan_identical(seed):
    g, starts, coins, grp, ngroups = _workload(seed, walks=40, length=22)
    res = {}
    for name in available_kernels():
        cache = new_cache(ngroups, g)
        verts, pars = run_traces(g, starts, coins, groups=grp, cache=cache, impl=get_impl(name))
        occ = new_occupancy(ngroups, g)
        hit = np.zeros(ngroups, dtype=np.uint8)
        run_parity_scan(
            g, starts, coins, grp, new_cache(ngroups, g), occ, hit, impl=get_impl(name)
        )
        res[name] = (verts, pars, cache, occ, hit)
    for x, y in zip(res["compiled"], res["python"]):
        assert np.array_equal(x, y)


def test_scan_hit_equals_trace_occupancy():
    g, starts, coins, grp, ngroups = _workload(99, walks=50, length=18)
    verts, pars = run_traces(g, starts, coins, groups=grp)
    occ = new_occupancy(ngroups, g)
    hit = np.zeros(ngroups, dtype=np.uint8)
    run_parity_scan(g, starts, coins, grp, new_cache(ngroups, g), occ, hit)
    for group in range(ngroups):
        rows = grp == group
        items = set(zip(verts[rows].ravel().tolist(), pars[rows].ravel().tolist()))
        expects = any((v, 1 - p) in items for (v, p) in items)
        assert bool(hit[group]) == expects


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_kernels_match_scalar_reference(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 12))
    g = BoundedDegreeGraph.cycle(n, degree_bound=3)
    walks, length = 8, 12
    starts = rng.integers(0, n, size=walks).astype(np.int64)
    coins = rng.integers(0, 6, size=(walks, length), dtype=np.uint8)
    ends, moves = run_endpoints(g, starts, coins)
    cache = {}
    for w in range(walks):
        tr = run_walk(g, int(starts[w]), WalkCoins.from_sequence(coins[w], 6), QueryLedger(), cache)
        assert tr.endpoint == ends[w]
        assert tr.moves == moves[w]
    ledger_cache = new_cache(1, g)
    run_endpoints(g, starts, coins, cache=ledger_cache)
    assert int(ledger_cache.sum()) == len(cache)


def test_kernel_name_reports_selection():
    assert kernel_name() in ("compiled", "python")
