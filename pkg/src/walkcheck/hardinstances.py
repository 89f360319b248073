"""Block-sampled matching-union graphs and their analyzers.

A host on M vertices is split into l equal blocks; each block receives the
union of c uniformly random perfect matchings.  An N-vertex graph is then
induced by sequentially choosing a uniform block and a uniform not-yet-chosen
vertex inside it; the process fails the moment a full block is drawn.  With
one block the induced graph is an expander with high probability; with two or
more blocks it is disconnected and far from every expander.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .graphs import BoundedDegreeGraph, vertex_expansion_exact


@dataclass(frozen=True)
class PmlParams:
    n_sample: int
    host_size: int
    blocks: int
    matchings: int

    def __post_init__(self):
        if self.blocks < 1:
            raise ValueError("need at least one block")
        if self.host_size % self.blocks:
            raise ValueError(f"blocks {self.blocks} must divide host size {self.host_size}")
        if self.host_size < self.n_sample:
            raise ValueError("host must be at least as large as the sample")
        if (self.host_size // self.blocks) % 2:
            raise ValueError("block size must be even so perfect matchings exist")
        if self.matchings < 1:
            raise ValueError("need at least one matching")
        if self.n_sample < 1:
            raise ValueError("sample size must be >= 1")

    @property
    def block_size(self) -> int:
        return self.host_size // self.blocks

    @classmethod
    def derive(cls, n_sample: int, blocks: int, matchings: int, c_exp: float = 0.1) -> "PmlParams":
        """Constructive host size: the smallest multiple of `blocks` that is at
        least N*(1 + N^-c_exp) and has even block size."""
        target = n_sample * (1 + n_sample ** (-c_exp))
        m = blocks * math.ceil(target / blocks)
        while (m // blocks) % 2:
            m += blocks
        return cls(n_sample=n_sample, host_size=m, blocks=blocks, matchings=matchings)


@dataclass(frozen=True)
class MatchingUnionGraph:
    """Host multigraph: partners[j, v] is v's partner in the j-th matching of its block."""

    params: PmlParams
    partners: np.ndarray

    def block_of(self, v: int) -> int:
        return v // self.params.block_size

    def collapsed_adjacency(self) -> list[list[int]]:
        adj = [sorted(set(int(self.partners[j, v]) for j in range(self.params.matchings)))
               for v in range(self.params.host_size)]
        return adj

    def as_graph(self) -> BoundedDegreeGraph:
        return BoundedDegreeGraph(self.params.host_size, self.params.matchings, self.collapsed_adjacency())


@dataclass(frozen=True)
class InducedSample:
    params: PmlParams
    chosen: tuple
    block_counts: tuple
    failed: bool
    induced: BoundedDegreeGraph | None
    edge_multiplicity: dict | None


def sample_perfect_matching(size: int, rng: np.random.Generator, base: int = 0) -> np.ndarray:
    """Uniform perfect matching by pairing the lowest unmatched vertex with a
    uniform free partner; returns the partner array on [base, base+size)."""
    if size % 2:
        raise ValueError("perfect matchings need an even number of vertices")
    partner = np.empty(size, dtype=np.int64)
    free = list(range(size))
    while free:
        u = free[0]
        pick = 1 + int(rng.integers(0, len(free) - 1))
        v = free[pick]
        partner[u] = base + v
        partner[v] = base + u
        free.pop(pick)
        free.pop(0)
    return partner


def sample_matching_union(params: PmlParams, rng: np.random.Generator) -> MatchingUnionGraph:
    """c independent uniform matchings per block; blocks are contiguous ranges."""
    m, l, c = params.host_size, params.blocks, params.matchings
    bs = params.block_size
    partners = np.empty((c, m), dtype=np.int64)
    for b in range(l):
        base = b * bs
        for j in range(c):
            partners[j, base : base + bs] = sample_perfect_matching(bs, rng, base=base)
    return MatchingUnionGraph(params=params, partners=partners)


def sample_induced(host: MatchingUnionGraph, rng: np.random.Generator) -> InducedSample:
    """Sequential induced sampling: uniform block, then uniform unchosen vertex.

    Failure (a full block drawn) is a value, not an error; the induced graph
    collapses parallel edges and records their multiplicities separately.
    """
    params = host.params
    n, l, bs = params.n_sample, params.blocks, params.block_size
    counts = [0] * l
    free = [list(range(bs)) for _ in range(l)]
    chosen: list[int] = []
    for _ in range(n):
        b = int(rng.integers(0, l))
        if counts[b] == bs:
            return InducedSample(
                params=params,
                chosen=tuple(chosen),
                block_counts=tuple(counts),
                failed=True,
                induced=None,
                edge_multiplicity=None,
            )
        pick = int(rng.integers(0, bs - counts[b]))
        slot = free[b][pick]
        free[b][pick] = free[b][-1]
        free[b].pop()
        counts[b] += 1
        chosen.append(b * bs + slot)
    index_of = {v: i for i, v in enumerate(chosen)}
    multiplicity: Counter = Counter()
    for j in range(params.matchings):
        for i, v in enumerate(chosen):
            p = int(host.partners[j, v])
            if p in index_of and v < p:
                multiplicity[(i, index_of[p])] += 1
    adj = [[] for _ in range(n)]
    for (a, b2) in multiplicity:
        lo, hi = min(a, b2), max(a, b2)
        adj[lo].append(hi)
        adj[hi].append(lo)
    induced = BoundedDegreeGraph(n, params.matchings, [sorted(x) for x in adj])
    assert max((len(x) for x in induced.adjacency), default=0) <= params.matchings
    return InducedSample(
        params=params,
        chosen=tuple(chosen),
        block_counts=tuple(counts),
        failed=False,
        induced=induced,
        edge_multiplicity={(min(a, b2), max(a, b2)): m for (a, b2), m in multiplicity.items()},
    )


def sample_graph(params: PmlParams, rng: np.random.Generator, max_retries: int = 64) -> BoundedDegreeGraph:
    """Convenience: draw hosts until the induced sampling succeeds."""
    for _ in range(max_retries):
        host = sample_matching_union(params, rng)
        sample = sample_induced(host, rng)
        if not sample.failed:
            return sample.induced
    raise RuntimeError(f"induced sampling failed {max_retries} times; params too tight")


def chernoff_failure_bound(n_sample: int, blocks: int, c_exp: float) -> float:
    """l * exp(-eps^2 (N/l) / 3) with eps = N^-c_exp.

    Valid whenever eps <= 1 (the one-sided Chernoff regime); the asymptotic
    analysis additionally wants l <= N^(1/4), but the inequality itself does
    not need it, and desk-scale parameter sets sit right at that edge.
    """
    if blocks < 1 or blocks > n_sample:
        raise ValueError("need 1 <= l <= N")
    if c_exp < 0:
        raise ValueError("c_exp must be >= 0 so eps = N^-c_exp stays <= 1")
    eps = n_sample ** (-c_exp)
    return blocks * math.exp(-(eps**2) * (n_sample / blocks) / 3.0)


def failure_rate_empirical(
    params: PmlParams, rng: np.random.Generator, samples: int, chunk: int = 100_000
) -> float:
    """Failure frequency of the induced sampling, via its multinomial law.

    The block-draw sequence is iid uniform regardless of fullness, so the
    process fails iff some final multinomial count exceeds the block size.
    """
    probs = np.full(params.blocks, 1.0 / params.blocks)
    fails = 0
    done = 0
    while done < samples:
        take = min(chunk, samples - done)
        counts = rng.multinomial(params.n_sample, probs, size=take)
        fails += int((counts > params.block_size).any(axis=1).sum())
        done += take
    return fails / samples


def exact_failure_probability(params: PmlParams) -> float:
    """Exact multinomial failure probability (small l and N only)."""
    from itertools import product as iproduct

    n, l, bs = params.n_sample, params.blocks, params.block_size
    if l**n > 4_000_000:
        raise ValueError("exact enumeration too large")
    total = 0
    fail = 0
    for seq in iproduct(range(l), repeat=n):
        total += 1
        counts = [0] * l
        bad = False
        for b in seq:
            counts[b] += 1
            if counts[b] > bs:
                bad = True
                break
        fail += bad
    return fail / total


def same_block_triple_rate(params: PmlParams, rng: np.random.Generator, samples: int) -> float:
    """Frequency that the first three chosen vertices share a block."""
    if params.n_sample < 3:
        raise ValueError("need at least 3 sampled vertices")
    hostless = PmlParams(
        n_sample=3, host_size=params.host_size, blocks=params.blocks, matchings=params.matchings
    )
    bs = hostless.block_size
    hitcount = 0
    for _ in range(samples):
        counts = [0] * hostless.blocks
        blocks_drawn = []
        ok = True
        for _ in range(3):
            b = int(rng.integers(0, hostless.blocks))
            if counts[b] == bs:
                ok = False
                break
            # uniform unchosen vertex; identity is irrelevant for the block event
            rng.integers(0, bs - counts[b])
            counts[b] += 1
            blocks_drawn.append(b)
        if ok and len(set(blocks_drawn)) == 1:
            hitcount += 1
    return hitcount / samples


def spectral_expansion_certificate(g: BoundedDegreeGraph) -> tuple[float, float]:
    """Heuristic evidence for larger graphs: (second adjacency eigenvalue,
    Cheeger-style vertex-expansion lower bound).  Numerical, not exact."""
    n = g.n_vertices
    a = np.zeros((n, n))
    for v, nbrs in enumerate(g.adjacency):
        for u in nbrs:
            a[v, u] += 1.0
    degs = a.sum(axis=1)
    if degs.min() == 0:
        return (float(np.sort(np.linalg.eigvalsh(a))[-2]) if n >= 2 else 0.0, 0.0)
    dinv = 1.0 / np.sqrt(degs)
    lap = np.eye(n) - (a * dinv).T * dinv
    lam = np.sort(np.linalg.eigvalsh(lap))
    gap = float(lam[1])
    vertex_lb = max(0.0, gap / 2.0 * float(degs.min()) / float(degs.max()))
    adj_lam2 = float(np.sort(np.linalg.eigvalsh(a))[-2]) if n >= 2 else 0.0
    return adj_lam2, vertex_lb


def empirical_expander_rate(
    params: PmlParams,
    alpha: float,
    trials: int,
    rng: np.random.Generator,
    method: str = "exact",
) -> float:
    """Fraction of non-failed samples with vertex expansion >= alpha.

    method="exact" brute-forces expansion (sample size <= 24);
    method="spectral" uses the heuristic certificate for larger graphs.
    """
    if method not in ("exact", "spectral"):
        raise ValueError("method must be 'exact' or 'spectral'")
    passed = 0
    seen = 0
    for _ in range(trials):
        host = sample_matching_union(params, rng)
        sample = sample_induced(host, rng)
        if sample.failed:
            continue
        seen += 1
        if method == "exact":
            ok = vertex_expansion_exact(sample.induced) >= alpha
        else:
            ok = spectral_expansion_certificate(sample.induced)[1] >= alpha
        passed += ok
    if seen == 0:
        raise RuntimeError("every sample failed; cannot estimate the expander rate")
    return passed / seen


def neighbor_event_bound(m_host: int, n_sample: int, i: int, alpha: float, c: int) -> float:
    """Bound ((M-N)/N + (1+alpha) i / N)^(c i / 2) for the trapped-set event, clipped to 1."""
    if (1 + alpha) * i > m_host:
        raise ValueError("(1+alpha) * i must not exceed the host size")
    if i < 1 or n_sample < 1 or m_host < n_sample:
        raise ValueError("need i >= 1 and M >= N >= 1")
    base = (m_host - n_sample) / n_sample + (1 + alpha) * i / n_sample
    if base >= 1.0:
        return 1.0
    return base ** (c * i / 2.0)


def empirical_first_vertex_isolation_rate(
    m_host: int, n_sample: int, c: int, trials: int, rng: np.random.Generator
) -> float:
    """Frequency that the first chosen vertex keeps all matching partners unchosen
    (single-block hosts).

    Uses the process law directly: relabel so the first chosen vertex is fixed;
    the remaining unchosen set is an (M-N)-subset of the others, and partners
    across matchings are iid uniform among the other M-1 vertices.
    """
    if m_host <= n_sample:
        return 0.0
    others = m_host - 1
    unchosen = m_host - n_sample
    hits = 0
    for _ in range(trials):
        out = set(rng.choice(others, size=unchosen, replace=False).tolist())
        partners = rng.integers(0, others, size=c)
        if all(int(p) in out for p in partners):
            hits += 1
    return hits / trials


def monomial_coefficient(evaluator, k: int) -> float:
    """Coefficient of a degree-k monomial by inclusion-exclusion over the 2^k
    sub-assignments; evaluator maps a k-tuple of bits (others zero) to [0, 1]."""
    if k > 20:
        raise ValueError("degree capped at 20 (2^k evaluations)")
    total = 0.0
    for mask in range(1 << k):
        bits = tuple((mask >> t) & 1 for t in range(k))
        val = float(evaluator(bits))
        if not -1e-12 <= val <= 1 + 1e-12:
            raise ValueError("evaluator must map assignments into [0, 1]")
        sign = -1 if (k - bin(mask).count("1")) % 2 else 1
        total += sign * val
    return total


def coefficient_bound_check(evaluator, k: int) -> bool:
    """|coefficient| <= 2^k for [0,1]-valued polynomials."""
    return abs(monomial_coefficient(evaluator, k)) <= 2**k + 1e-9
