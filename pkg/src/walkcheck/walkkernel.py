"""Walk-kernel selection and typed wrappers.

The compiled extension is preferred when importable; the numpy fallback is
contract-identical.  Force a choice with WALKCHECK_KERNEL={compiled,python}.
"""

from __future__ import annotations

import os

import numpy as np

from . import kernel_py
from .graphs import BoundedDegreeGraph

try:
    from . import _walk_kernel as _compiled
except ImportError:
    _compiled = None

_forced = os.environ.get("WALKCHECK_KERNEL")
if _forced == "python":
    _impl = kernel_py
elif _forced == "compiled":
    if _compiled is None:
        raise ImportError(
            "WALKCHECK_KERNEL=compiled but the walkcheck._walk_kernel extension is not built"
        )
    _impl = _compiled
else:
    _impl = _compiled if _compiled is not None else kernel_py


def kernel_name() -> str:
    return "compiled" if _impl is _compiled and _compiled is not None else "python"


def available_kernels() -> list[str]:
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def get_impl(name: str):
    if name == "python":
        return kernel_py
    if name == "compiled":
        if _compiled is None:
            raise ValueError("compiled kernel not available")
        return _compiled
    raise ValueError(f"unknown kernel {name!r}")


def new_cache(n_groups: int, g: BoundedDegreeGraph) -> np.ndarray:
    """Per-group probe bitset; one byte per (vertex, slot) oracle cell."""
    return np.zeros((n_groups, g.n_vertices * g.degree_bound), dtype=np.uint8)


def new_occupancy(n_groups: int, g: BoundedDegreeGraph) -> np.ndarray:
    return np.zeros((n_groups, 2 * g.n_vertices), dtype=np.uint8)


def _prep(g, starts, coins, groups):
    starts = np.ascontiguousarray(starts, dtype=np.int64)
    coins = np.ascontiguousarray(coins, dtype=np.uint8)
    if groups is None:
        groups = np.zeros(starts.shape[0], dtype=np.int64)
    else:
        groups = np.ascontiguousarray(groups, dtype=np.int64)
    return g.adj_array, g.deg_array, g.degree_bound, starts, coins, groups


def run_endpoints(g, starts, coins, groups=None, cache=None, impl=None):
    """Run one batch of walks; returns (endpoints, moves)."""
    adj, deg, d, starts, coins, groups = _prep(g, starts, coins, groups)
    if cache is None:
        cache = new_cache(int(groups.max()) + 1 if groups.size else 1, g)
    endpoints = np.empty(starts.shape[0], dtype=np.int64)
    moves = np.empty(starts.shape[0], dtype=np.int64)
    (impl or _impl).walk_endpoints(adj, deg, d, starts, coins, groups, cache, endpoints, moves)
    return endpoints, moves


def run_traces(g, starts, coins, groups=None, cache=None, impl=None):
    """Run walks recording the post-step (vertex, parity) item per coin."""
    adj, deg, d, starts, coins, groups = _prep(g, starts, coins, groups)
    if cache is None:
        cache = new_cache(int(groups.max()) + 1 if groups.size else 1, g)
    B, L = coins.shape
    verts = np.empty((B, L), dtype=np.int32)
    pars = np.empty((B, L), dtype=np.uint8)
    (impl or _impl).walk_traces(adj, deg, d, starts, coins, groups, cache, verts, pars)
    return verts, pars


def run_parity_scan(g, starts, coins, groups, cache, occ, hit, impl=None):
    """Streaming odd-collision detection; sets hit[g]=1 on parity collisions."""
    adj, deg, d, starts, coins, groups = _prep(g, starts, coins, groups)
    (impl or _impl).walk_parity_scan(adj, deg, d, starts, coins, groups, cache, occ, hit)
