"""Bounded-degree graphs behind a counting neighbor oracle.

The only sanctioned access path for the testers is ``neighbor_query``: ask for
the i-th neighbor (1-based) of a vertex and pay one query into a ledger.  The
exact structural oracles (bipartiteness, brute-force vertex expansion,
farness bounds) bypass the oracle and exist to validate the testers at desk
scale.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

#: Oracle answer when a vertex has fewer than i neighbors.  Kept outside the
#: vertex-id range [0, n_vertices).
BOTTOM = -1

EXPANSION_BRUTE_FORCE_CAP = 24


class GraphFormatError(ValueError):
    """Malformed graph text/JSON input."""


class ExpansionSizeError(ValueError):
    """Graph too large for exact expansion; use the spectral path instead."""


@dataclass
class QueryLedger:
    """Monotone counters for oracle traffic and modeled work.

    classical_queries counts actual neighbor_query calls; the modeled counter
    accumulates the collision-finder cost model; wall_work counts lazy walk
    steps (coins consumed).
    """

    classical_queries: int = 0
    modeled_quantum_queries: int = 0
    wall_work: int = 0

    def add(self, other: "QueryLedger") -> None:
        self.classical_queries += other.classical_queries
        self.modeled_quantum_queries += other.modeled_quantum_queries
        self.wall_work += other.wall_work

    def snapshot(self) -> dict:
        return {
            "classical_queries": int(self.classical_queries),
            "modeled_quantum_queries": int(self.modeled_quantum_queries),
            "wall_work": int(self.wall_work),
        }


class BoundedDegreeGraph:
    """Undirected graph with per-vertex adjacency lists of length <= degree_bound.

    Vertex ids are 0-based; adjacency must be symmetric as a multiset of
    unordered pairs.  Instances are immutable after construction and safe to
    share across concurrent trials.
    """

    __slots__ = ("n_vertices", "degree_bound", "adjacency", "_adj_array", "_deg_array")

    def __init__(self, n_vertices: int, degree_bound: int, adjacency) -> None:
        if n_vertices < 0:
            raise ValueError("n_vertices must be >= 0")
        if degree_bound < 1:
            raise ValueError("degree_bound must be >= 1")
        adjacency = tuple(tuple(int(u) for u in nbrs) for nbrs in adjacency)
        if len(adjacency) != n_vertices:
            raise ValueError("adjacency must list every vertex")
        pair_counts: Counter = Counter()
        for v, nbrs in enumerate(adjacency):
            if len(nbrs) > degree_bound:
                raise ValueError(f"vertex {v} lists {len(nbrs)} neighbors > degree bound {degree_bound}")
            for u in nbrs:
                if not 0 <= u < n_vertices:
                    raise ValueError(f"neighbor id {u} of vertex {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                pair_counts[(v, u)] += 1
        for (v, u), c in pair_counts.items():
            if pair_counts.get((u, v), 0) != c:
                raise ValueError(f"adjacency not symmetric at pair ({v}, {u})")
        self.n_vertices = n_vertices
        self.degree_bound = degree_bound
        self.adjacency = adjacency
        self._adj_array = None
        self._deg_array = None

    # -- array views used by the walk kernels -------------------------------

    @property
    def adj_array(self) -> np.ndarray:
        """(N, d) int32 adjacency padded with -1."""
        if self._adj_array is None:
            arr = np.full((self.n_vertices, self.degree_bound), -1, dtype=np.int32)
            for v, nbrs in enumerate(self.adjacency):
                if nbrs:
                    arr[v, : len(nbrs)] = nbrs
            self._adj_array = arr
        return self._adj_array

    @property
    def deg_array(self) -> np.ndarray:
        if self._deg_array is None:
            self._deg_array = np.array([len(nbrs) for nbrs in self.adjacency], dtype=np.int32)
        return self._deg_array

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self):
        """Unordered edges, each reported once per multiplicity."""
        seen: Counter = Counter()
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                seen[(min(u, v), max(u, v))] += 1
        out = []
        for (a, b), c in sorted(seen.items()):
            out.extend([(a, b)] * (c // 2))
        return out

    def __repr__(self) -> str:
        return f"BoundedDegreeGraph(n={self.n_vertices}, d={self.degree_bound})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BoundedDegreeGraph)
            and self.n_vertices == other.n_vertices
            and self.degree_bound == other.degree_bound
            and self.adjacency == other.adjacency
        )

    def __hash__(self):
        return hash((self.n_vertices, self.degree_bound, self.adjacency))

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_edges(cls, n_vertices: int, degree_bound: int, edges) -> "BoundedDegreeGraph":
        adj = [[] for _ in range(n_vertices)]
        for u, v in edges:
            adj[u].append(v)
            if u != v:
                adj[v].append(u)
        adj = [sorted(a) for a in adj]
        return cls(n_vertices, degree_bound, adj)

    @classmethod
    def cycle(cls, n: int, degree_bound: int | None = None) -> "BoundedDegreeGraph":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        d = degree_bound if degree_bound is not None else 2
        return cls.from_edges(n, d, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path_graph(cls, n: int, degree_bound: int | None = None) -> "BoundedDegreeGraph":
        d = degree_bound if degree_bound is not None else 2
        return cls.from_edges(n, d, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete(cls, n: int) -> "BoundedDegreeGraph":
        return cls.from_edges(n, n - 1, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def disjoint_union(cls, graphs, degree_bound: int | None = None) -> "BoundedDegreeGraph":
        graphs = list(graphs)
        d = degree_bound if degree_bound is not None else max(g.degree_bound for g in graphs)
        adj = []
        offset = 0
        for g in graphs:
            adj.extend(tuple(u + offset for u in nbrs) for nbrs in g.adjacency)
            offset += g.n_vertices
        return cls(offset, d, adj)


def random_bipartite(n_half: int, degree_bound: int, rng: np.random.Generator) -> BoundedDegreeGraph:
    """Random bipartite graph: union of degree_bound random side-to-side matchings.

    Parallel matchings collapse, so degrees are <= degree_bound.
    """
    edges = set()
    for _ in range(degree_bound):
        perm = rng.permutation(n_half)
        for i in range(n_half):
            edges.add((i, n_half + int(perm[i])))
    return BoundedDegreeGraph.from_edges(2 * n_half, degree_bound, sorted(edges))


# -- the counting oracle -----------------------------------------------------


def neighbor_query(g: BoundedDegreeGraph, v: int, i: int, ledger: QueryLedger) -> int:
    """Return the i-th neighbor of v (1-based) or BOTTOM; charges exactly one query.

    Out-of-range v or i is an input error, distinct from a BOTTOM answer.
    """
    if not 0 <= v < g.n_vertices:
        raise ValueError(f"vertex {v} out of range [0, {g.n_vertices})")
    if not 1 <= i <= g.degree_bound:
        raise ValueError(f"neighbor index {i} out of range [1, {g.degree_bound}]")
    ledger.classical_queries += 1
    nbrs = g.adjacency[v]
    if i <= len(nbrs):
        return nbrs[i - 1]
    return BOTTOM


# -- exact structural oracles (not oracle-metered) ---------------------------


def connected_components(g: BoundedDegreeGraph) -> list[list[int]]:
    seen = [False] * g.n_vertices
    comps = []
    for s in range(g.n_vertices):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comps.append(comp)
    return comps


def is_bipartite_exact(g: BoundedDegreeGraph) -> bool:
    """Two-colorability by full BFS traversal (no oracle accounting)."""
    color = [-1] * g.n_vertices
    for s in range(g.n_vertices):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if color[u] == -1:
                    color[u] = color[v] ^ 1
                    queue.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def bipartition_sides(g: BoundedDegreeGraph) -> list[int] | None:
    """0/1 side labels for a bipartite graph, else None."""
    color = [-1] * g.n_vertices
    for s in range(g.n_vertices):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if color[u] == -1:
                    color[u] = color[v] ^ 1
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def _popcount(arr: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(arr).astype(np.int64)
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)
    out = np.zeros(arr.shape, dtype=np.int64)
    a = arr.astype(np.uint64)
    for shift in range(0, 64, 8):
        out += table[((a >> np.uint64(shift)) & np.uint64(0xFF)).astype(np.int64)]
    return out


def vertex_expansion_exact(g: BoundedDegreeGraph, cap: int = EXPANSION_BRUTE_FORCE_CAP) -> Fraction:
    """Exact min over nonempty U, |U| <= N/2, of |boundary(U)| / |U|.

    Enumerates all 2^N subsets with bitset adjacency; refuses N > cap.
    boundary(U) = vertices outside U adjacent to at least one vertex of U.
    """
    n = g.n_vertices
    if n > cap:
        raise ExpansionSizeError(
            f"n={n} exceeds brute-force cap {cap}; use the spectral certificate path"
        )
    if n < 2:
        raise ValueError("expansion needs at least 2 vertices")
    masks = np.zeros(n, dtype=np.uint32)
    for v, nbrs in enumerate(g.adjacency):
        m = 0
        for u in nbrs:
            m |= 1 << u
        masks[v] = m
    total = 1 << n
    nbr_mask = np.zeros(total, dtype=np.uint32)
    for b in range(n):
        lo = 1 << b
        nbr_mask[lo : 2 * lo] = nbr_mask[:lo] | masks[b]
    half = n // 2
    best_bnd, best_size = None, None
    best_ratio = np.inf
    chunk = 1 << 22
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        sizes = _popcount(idx)
        valid = (sizes >= 1) & (sizes <= half)
        if not valid.any():
            continue
        bnd = _popcount(nbr_mask[idx[valid]] & ~idx[valid])
        sz = sizes[valid]
        ratios = bnd / sz
        am = int(np.argmin(ratios))
        if ratios[am] < best_ratio:
            best_ratio = float(ratios[am])
            best_bnd, best_size = int(bnd[am]), int(sz[am])
    return Fraction(best_bnd, best_size)


def farness_lower_bound_two_components(
    g: BoundedDegreeGraph, alpha_prime: float, d: int
) -> float:
    """alpha'/(2d) farness bound for a graph with >= 2 components vs alpha'-expanders.

    Requires the largest component to be at most N/2 plus fluctuation slack.
    """
    comps = connected_components(g)
    if len(comps) < 2:
        raise ValueError("graph is connected; the two-component farness bound does not apply")
    n = g.n_vertices
    largest = max(len(c) for c in comps)
    if largest > n / 2 + 3 * np.sqrt(n):
        raise ValueError(
            f"largest component has {largest} vertices > N/2 + 3*sqrt(N); bound not applicable"
        )
    if alpha_prime < 0:
        raise ValueError("alpha_prime must be >= 0")
    return alpha_prime / (2 * d)


# -- text / JSON graph formats ------------------------------------------------


def format_graph_text(g: BoundedDegreeGraph) -> str:
    lines = [f"{g.n_vertices} {g.degree_bound}"]
    lines.extend(" ".join(str(u) for u in nbrs) for nbrs in g.adjacency)
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> BoundedDegreeGraph:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("empty graph text")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"header must be 'N d', got {lines[0]!r}")
    try:
        n, d = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphFormatError(f"non-integer header: {lines[0]!r}") from exc
    if len(lines) < n + 1:
        raise GraphFormatError(f"expected {n} adjacency lines, got {len(lines) - 1}")
    adj = []
    for v in range(n):
        row = lines[1 + v].split()
        try:
            adj.append([int(tok) for tok in row])
        except ValueError as exc:
            raise GraphFormatError(f"non-integer neighbor on line {v + 2}") from exc
    for extra in lines[n + 1 :]:
        if extra.strip():
            raise GraphFormatError("trailing non-empty lines after adjacency block")
    try:
        return BoundedDegreeGraph(n, d, adj)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def format_graph_json(g: BoundedDegreeGraph) -> str:
    return json.dumps(
        {"n": g.n_vertices, "d": g.degree_bound, "adj": [list(a) for a in g.adjacency]}
    )


def parse_graph_json(text: str) -> BoundedDegreeGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    try:
        return BoundedDegreeGraph(int(obj["n"]), int(obj["d"]), obj["adj"])
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad graph JSON: {exc}") from exc


def parse_graph(text: str) -> BoundedDegreeGraph:
    """Accept the text format and the JSON equivalent interchangeably."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_graph_json(text)
    return parse_graph_text(text)


def load_graph(path) -> BoundedDegreeGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: BoundedDegreeGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph_text(g))
