"""Walk-based property testers for bipartiteness and expansion.

Both testers run T repetitions; each repetition starts K lazy walks of length
L from one random vertex.  The bipartiteness tester hands every post-step
(vertex, parity-of-moves) item to the collision finder under the relation
"same vertex, different parity" and rejects on a find; it never rejects a
bipartite graph.  The expansion tester counts pairwise endpoint collisions X
and rejects when X exceeds a threshold: in fully-random mode by exact
counting, in kwise mode by driving the thresholded collision counter.

Coins come from a fully random stream or from a fresh k-wise independent
family per repetition (the starting vertex stays fully random either way).
All Theta/poly constants are fixed defaults, overridable field by field.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .collisions import CollisionQuery, count_at_least, find_collision
from .graphs import BoundedDegreeGraph, QueryLedger
from .kwise import (
    REJECTION_ROUNDS,
    _alphabet_width,
    build_family,
    eval_symbols_vec,
    family_seed_from_rng,
)
from .walkkernel import new_cache, run_endpoints, run_traces

MODE_RANDOM = "fully-random"
MODE_KWISE = "kwise"
MODES = (MODE_RANDOM, MODE_KWISE)


def _ceil(x: float) -> int:
    # small guard against float noise just above an exact integer
    return int(math.ceil(x - 1e-9))


def substream(*path: int) -> np.random.Generator:
    """Deterministic generator for a counter path like (seed, trial, rep)."""
    parts = [int(p) for p in path]
    if any(p < 0 for p in parts):
        raise ValueError("seed path entries must be non-negative")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(parts)))


def seed_path(seed) -> tuple:
    if isinstance(seed, (int, np.integer)):
        return (int(seed),)
    return tuple(int(p) for p in seed)


@dataclass
class BipartiteParams:
    repetitions: int
    walks: int
    length: int
    k_indep: int
    epsilon: float

    def __post_init__(self):
        if min(self.repetitions, self.walks, self.length) < 1:
            raise ValueError("repetitions, walks and length must be >= 1")

    @classmethod
    def derive(cls, n_vertices: int, epsilon: float, degree_bound: int, **overrides):
        """T = ceil(4/eps), K = ceil(sqrt(N) ceil(log2 N)^2 / eps), L = ceil((ceil(log2 N)/eps)^2)."""
        if n_vertices < 2:
            raise ValueError("need at least 2 vertices")
        if not 0 < epsilon < 1:
            raise ValueError("epsilon must be in (0, 1)")
        logn = _ceil(math.log2(n_vertices))
        length = _ceil((logn / epsilon) ** 2)
        vals = dict(
            repetitions=_ceil(4 / epsilon),
            walks=_ceil(math.sqrt(n_vertices) * logn**2 / epsilon),
            length=length,
            k_indep=4 * length * _ceil(math.log2(2 * degree_bound)),
            epsilon=epsilon,
        )
        vals.update(overrides)
        if "length" in overrides and "k_indep" not in overrides:
            vals["k_indep"] = 4 * vals["length"] * _ceil(math.log2(2 * degree_bound))
        return cls(**vals)


@dataclass
class ExpansionParams:
    repetitions: int
    walks: int
    length: int
    threshold: float
    mu: float
    alpha: float
    outer_retries: int
    k_indep: int
    epsilon: float

    def __post_init__(self):
        if min(self.repetitions, self.walks, self.length, self.outer_retries) < 1:
            raise ValueError("repetitions, walks, length, outer_retries must be >= 1")

    @classmethod
    def derive(
        cls,
        n_vertices: int,
        epsilon: float,
        alpha: float,
        mu: float,
        degree_bound: int,
        **overrides,
    ):
        """K = ceil(N^(1/2+mu)), L = ceil((16 d^2/alpha^2) log2 N), threshold from the
        collision budget N^(2mu)/2 + N^(1.75mu)/128; requires d >= 3, alpha in (0,1),
        mu in (0, 1/4)."""
        if degree_bound < 3:
            raise ValueError("degree bound must be >= 3")
        if not 0 < alpha < 1:
            raise ValueError("alpha must be in (0, 1)")
        if not 0 < mu < 0.25:
            raise ValueError("mu must be in (0, 1/4)")
        if not 0 < epsilon < 1:
            raise ValueError("epsilon must be in (0, 1)")
        if n_vertices < 2:
            raise ValueError("need at least 2 vertices")
        length = _ceil((16 * degree_bound**2 / alpha**2) * math.log2(n_vertices))
        vals = dict(
            repetitions=_ceil(4 / epsilon),
            walks=_ceil(n_vertices ** (0.5 + mu)),
            length=length,
            threshold=0.5 * n_vertices ** (2 * mu) + n_vertices ** (1.75 * mu) / 128,
            mu=mu,
            alpha=alpha,
            outer_retries=4,
            k_indep=4 * length * _ceil(math.log2(2 * degree_bound)),
            epsilon=epsilon,
        )
        vals.update(overrides)
        if "length" in overrides and "k_indep" not in overrides:
            vals["k_indep"] = 4 * vals["length"] * _ceil(math.log2(2 * degree_bound))
        return cls(**vals)


@dataclass
class TesterVerdict:
    kind: str
    accept: bool
    collisions_per_rep: list
    reps_run: int
    ledger: QueryLedger
    params: object
    mode: str
    seed: tuple

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "accept": bool(self.accept),
            "collisions_per_rep": [int(c) for c in self.collisions_per_rep],
            "reps_run": int(self.reps_run),
            "ledger": self.ledger.snapshot(),
            "params": asdict(self.params),
            "mode": self.mode,
            "seed": list(self.seed),
        }


def draw_rep_coins(
    rng: np.random.Generator, mode: str, walks: int, length: int, alphabet: int, k_indep: int
) -> np.ndarray:
    """(walks, length) coin matrix for one repetition.

    kwise mode builds a fresh family from rng and reads symbol i*L+j for walk
    i, step j; the family's independence parameter is k_indep clamped to the
    family size.
    """
    if mode == MODE_RANDOM:
        return rng.integers(0, alphabet, size=(walks, length), dtype=np.uint8)
    if mode != MODE_KWISE:
        raise ValueError(f"unknown mode {mode!r}")
    n_syms = walks * length
    w, pow2 = _alphabet_width(alphabet)
    n_bits = n_syms * w * (1 if pow2 else REJECTION_ROUNDS + 1)
    k = max(1, min(k_indep, n_bits))
    fam = build_family(n_bits, k, family_seed_from_rng(n_bits, k, rng))
    return eval_symbols_vec(fam, 0, n_syms, alphabet).reshape(walks, length)


def endpoint_collision_count(endpoints: np.ndarray) -> int:
    """Pairwise collisions among endpoints: sum of C(m_v, 2) over multiplicities."""
    _, counts = np.unique(np.asarray(endpoints), return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


def parity_collision_pairs(verts: np.ndarray, pars: np.ndarray, n_vertices: int) -> int:
    """Number of walk pairs i<j that meet at some vertex with opposite parity."""
    walks = verts.shape[0]
    even = np.zeros((walks, n_vertices), dtype=bool)
    odd = np.zeros((walks, n_vertices), dtype=bool)
    rows = np.repeat(np.arange(walks), verts.shape[1])
    flat_v = verts.ravel()
    flat_p = pars.ravel()
    sel = flat_p == 0
    even[rows[sel], flat_v[sel]] = True
    odd[rows[~sel], flat_v[~sel]] = True
    cross = even.astype(np.int32) @ odd.astype(np.int32).T
    collide = (cross > 0) | (cross.T > 0)
    return int(np.triu(collide, k=1).sum())


def _bip_relation(a, b) -> bool:
    return a[0] == b[0] and a[1] != b[1]


def test_bipartiteness(
    g: BoundedDegreeGraph,
    params: BipartiteParams,
    mode: str = MODE_KWISE,
    seed=0,
    inject_failure: float = 0.0,
) -> TesterVerdict:
    """One-sided tester: rejects only on a found odd-parity collision."""
    n = g.n_vertices
    alphabet = 2 * g.degree_bound
    path = seed_path(seed)
    ledger = QueryLedger()
    cache = new_cache(1, g)
    prev_probes = 0
    collisions = []
    accept = True
    reps_run = 0
    for rep in range(params.repetitions):
        rng = substream(*path, rep)
        s = int(rng.integers(0, n))
        coins = draw_rep_coins(rng, mode, params.walks, params.length, alphabet, params.k_indep)
        starts = np.full(params.walks, s, dtype=np.int64)
        verts, pars = run_traces(g, starts, coins, cache=cache)
        probes = int(cache.sum())
        ledger.classical_queries += probes - prev_probes
        prev_probes = probes
        ledger.wall_work += params.walks * params.length
        reps_run = rep + 1
        domain = params.walks * params.length
        found = None
        if domain >= 2:
            values = list(zip(verts.ravel().tolist(), pars.ravel().tolist()))
            query = CollisionQuery(
                domain_size=domain,
                evaluator=values.__getitem__,
                relation=_bip_relation,
                codomain_size=2 * n,
                bucket_key=lambda y: y[0],
                injected_failure=inject_failure,
            )
            report = find_collision(query, rng)
            ledger.modeled_quantum_queries += report.modeled_quantum_queries
            found = report.found
        collisions.append(0 if found is None else 1)
        if found is not None:
            accept = False
            break
    return TesterVerdict(
        kind="bipartiteness",
        accept=accept,
        collisions_per_rep=collisions,
        reps_run=reps_run,
        ledger=ledger,
        params=params,
        mode=mode,
        seed=path,
    )


def test_expansion(
    g: BoundedDegreeGraph,
    params: ExpansionParams,
    mode: str = MODE_KWISE,
    seed=0,
    inject_failure: float = 0.0,
) -> TesterVerdict:
    """Rejects when the endpoint collision count exceeds the threshold.

    fully-random mode compares the exact count; kwise mode runs the
    thresholded finder (outer_retries attempts) asking for floor(threshold)+1
    collisions, as the modeled-cost pipeline would.
    """
    n = g.n_vertices
    alphabet = 2 * g.degree_bound
    path = seed_path(seed)
    ledger = QueryLedger()
    cache = new_cache(1, g)
    prev_probes = 0
    collisions = []
    accept = True
    reps_run = 0
    m_count = int(math.floor(params.threshold)) + 1
    for rep in range(params.repetitions):
        rng = substream(*path, rep)
        s = int(rng.integers(0, n))
        coins = draw_rep_coins(rng, mode, params.walks, params.length, alphabet, params.k_indep)
        starts = np.full(params.walks, s, dtype=np.int64)
        endpoints, _ = run_endpoints(g, starts, coins, cache=cache)
        probes = int(cache.sum())
        ledger.classical_queries += probes - prev_probes
        prev_probes = probes
        ledger.wall_work += params.walks * params.length
        reps_run = rep + 1
        x = endpoint_collision_count(endpoints)
        collisions.append(x)
        if mode == MODE_RANDOM:
            rejected = x > params.threshold
        else:
            rejected = False
            ep_list = endpoints.tolist()
            for _ in range(params.outer_retries):
                query = CollisionQuery(
                    domain_size=params.walks,
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
    return TesterVerdict(
        kind="expansion",
        accept=accept,
        collisions_per_rep=collisions,
        reps_run=reps_run,
        ledger=ledger,
        params=params,
        mode=mode,
        seed=path,
    )


def parity_collision_series(
    g: BoundedDegreeGraph,
    params: BipartiteParams,
    mode: str,
    seed,
    reps: int,
) -> np.ndarray:
    """Walk-pair parity-collision counts over `reps` independent repetitions.

    Starting vertices are drawn before the coins, so two modes driven by the
    same seed see identical starting-vertex sequences (paired comparison).
    """
    path = seed_path(seed)
    alphabet = 2 * g.degree_bound
    out = np.empty(reps, dtype=np.int64)
    cache = new_cache(1, g)
    for rep in range(reps):
        rng = substream(*path, rep)
        s = int(rng.integers(0, g.n_vertices))
        coins = draw_rep_coins(rng, mode, params.walks, params.length, alphabet, params.k_indep)
        starts = np.full(params.walks, s, dtype=np.int64)
        verts, pars = run_traces(g, starts, coins, cache=cache)
        out[rep] = parity_collision_pairs(verts, pars, g.n_vertices)
    return out


def endpoint_collision_series(
    g: BoundedDegreeGraph,
    params: ExpansionParams,
    mode: str,
    seed,
    reps: int,
) -> np.ndarray:
    """Exact endpoint collision counts X over `reps` independent repetitions."""
    path = seed_path(seed)
    alphabet = 2 * g.degree_bound
    out = np.empty(reps, dtype=np.int64)
    cache = new_cache(1, g)
    for rep in range(reps):
        rng = substream(*path, rep)
        s = int(rng.integers(0, g.n_vertices))
        coins = draw_rep_coins(rng, mode, params.walks, params.length, alphabet, params.k_indep)
        starts = np.full(params.walks, s, dtype=np.int64)
        endpoints, _ = run_endpoints(g, starts, coins, cache=cache)
        out[rep] = endpoint_collision_count(endpoints)
    return out
