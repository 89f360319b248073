"""Graph core: oracle semantics, exact structural oracles, formats."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from walkcheck.graphs import (
    BOTTOM,
    BoundedDegreeGraph,
    ExpansionSizeError,
    GraphFormatError,
    QueryLedger,
    connected_components,
    farness_lower_bound_two_components,
    format_graph_json,
    format_graph_text,
    is_bipartite_exact,
    neighbor_query,
    parse_graph,
    parse_graph_text,
    random_bipartite,
    vertex_expansion_exact,
)


def triangle():
    return BoundedDegreeGraph.cycle(3)


class TestValidation:
    def test_neighbor_out_of_range(self):
        with pytest.raises(ValueError):
            BoundedDegreeGraph(2, 2, [[1], [0, 5]])

    def test_degree_bound_enforced(self):
        with pytest.raises(ValueError):
            BoundedDegreeGraph(3, 1, [[1, 2], [0], [0]])

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            BoundedDegreeGraph(2, 2, [[1], []])

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            BoundedDegreeGraph(2, 2, [[0, 1], [0]])

    def test_parallel_edges_allowed_when_symmetric(self):
        g = BoundedDegreeGraph(2, 2, [[1, 1], [0, 0]])
        assert g.degree(0) == 2


class TestOracle:
    def test_first_neighbor_of_triangle(self):
        led = QueryLedger()
        assert neighbor_query(triangle(), 0, 1, led) == 1
        assert led.classical_queries == 1

    def test_bottom_when_index_exceeds_degree(self):
        g = BoundedDegreeGraph.path_graph(2)
        led = QueryLedger()
        assert neighbor_query(g, 0, 2, led) == BOTTOM
        assert led.classical_queries == 1

    def test_query_all_pairs_charges_n_times_d(self):
        g = BoundedDegreeGraph.cycle(4)
        led = QueryLedger()
        for v in range(4):
            for i in range(1, g.degree_bound + 1):
                neighbor_query(g, v, i, led)
        assert led.classical_queries == 4 * g.degree_bound

    def test_input_errors_distinct_from_bottom(self):
        led = QueryLedger()
        with pytest.raises(ValueError):
            neighbor_query(triangle(), 3, 1, led)
        with pytest.raises(ValueError):
            neighbor_query(triangle(), 0, 0, led)
        with pytest.raises(ValueError):
            neighbor_query(triangle(), 0, 3, led)
        assert led.classical_queries == 0

    def test_oracle_symmetry_on_random_graphs(self):
        rng = np.random.default_rng(11)
        for trial in range(10):
            n_half = int(rng.integers(5, 50))
            g = random_bipartite(n_half, 3, rng)
            led = QueryLedger()
            for v in range(g.n_vertices):
                for i in range(1, g.degree_bound + 1):
                    u = neighbor_query(g, v, i, led)
                    if u == BOTTOM:
                        continue
                    answers = [
                        neighbor_query(g, u, j, led) for j in range(1, g.degree_bound + 1)
                    ]
                    assert v in answers


class TestBipartiteExact:
    def test_even_cycle(self):
        assert is_bipartite_exact(BoundedDegreeGraph.cycle(4))

    def test_odd_cycle(self):
        assert not is_bipartite_exact(BoundedDegreeGraph.cycle(5))

    def test_two_disjoint_triangles(self):
        g = BoundedDegreeGraph.disjoint_union([triangle(), triangle()])
        assert not is_bipartite_exact(g)

    def test_empty_graph(self):
        assert is_bipartite_exact(BoundedDegreeGraph(4, 2, [[], [], [], []]))

    def _odd_closed_walk_exists(self, g):
        # independent oracle: trace of odd adjacency powers
        n = g.n_vertices
        a = np.zeros((n, n), dtype=np.int64)
        for v, nbrs in enumerate(g.adjacency):
            for u in nbrs:
                a[v, u] += 1
        power = a.copy()
        for _ in range(1, n + 1, 2):
            if np.trace(power) > 0:
                return True
            power = power @ a @ a
        return False

    def test_agrees_with_odd_cycle_search_exhaustive_small(self):
        for n in range(2, 6):
            pairs = list(itertools.combinations(range(n), 2))
            for mask in range(1 << len(pairs)):
                edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
                g = BoundedDegreeGraph.from_edges(n, max(1, n - 1), edges)
                assert is_bipartite_exact(g) == (not self._odd_closed_walk_exists(g))

    def test_agrees_with_odd_cycle_search_random_n8(self):
        rng = np.random.default_rng(5)
        for _ in range(600):
            n = int(rng.integers(6, 9))
            pairs = list(itertools.combinations(range(n), 2))
            keep = rng.random(len(pairs)) < 0.3
            edges = [p for p, k in zip(pairs, keep) if k]
            g = BoundedDegreeGraph.from_edges(n, n - 1, edges)
            assert is_bipartite_exact(g) == (not self._odd_closed_walk_exists(g))


def brute_force_expansion(g):
    """Independent subset-enumeration oracle (itertools, no bitsets)."""
    best = None
    verts = range(g.n_vertices)
    for size in range(1, g.n_vertices // 2 + 1):
        for subset in itertools.combinations(verts, size):
            inside = set(subset)
            boundary = {u for v in subset for u in g.adjacency[v]} - inside
            ratio = Fraction(len(boundary), len(inside))
            best = ratio if best is None or ratio < best else best
    return best


class TestExpansionExact:
    def test_complete_four(self):
        assert vertex_expansion_exact(BoundedDegreeGraph.complete(4)) == 1

    def test_two_disjoint_edges(self):
        g = BoundedDegreeGraph.from_edges(4, 1, [(0, 1), (2, 3)])
        assert vertex_expansion_exact(g) == 0

    def test_c6_is_two_thirds(self):
        assert vertex_expansion_exact(BoundedDegreeGraph.cycle(6)) == Fraction(2, 3)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(8):
            n = int(rng.integers(4, 9))
            pairs = list(itertools.combinations(range(n), 2))
            keep = rng.random(len(pairs)) < 0.4
            edges = [p for p, k in zip(pairs, keep) if k]
            g = BoundedDegreeGraph.from_edges(n, n - 1, edges)
            assert vertex_expansion_exact(g) == brute_force_expansion(g)

    def test_zero_iff_disconnected(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            n = int(rng.integers(4, 10))
            pairs = list(itertools.combinations(range(n), 2))
            keep = rng.random(len(pairs)) < 0.25
            edges = [p for p, k in zip(pairs, keep) if k]
            g = BoundedDegreeGraph.from_edges(n, n - 1, edges)
            disconnected = len(connected_components(g)) > 1
            assert (vertex_expansion_exact(g) == 0) == disconnected

    def test_cap_raises_size_error(self):
        g = BoundedDegreeGraph.cycle(30)
        with pytest.raises(ExpansionSizeError):
            vertex_expansion_exact(g)


class TestFarness:
    def test_formula_value(self):
        g = BoundedDegreeGraph.disjoint_union([triangle(), triangle()])
        assert farness_lower_bound_two_components(g, 0.1, 5) == pytest.approx(0.01)
        assert farness_lower_bound_two_components(g, 0.0, 7) == 0
        assert farness_lower_bound_two_components(g, 1.0, 4) == pytest.approx(0.125)

    def test_connected_graph_rejected(self):
        with pytest.raises(ValueError):
            farness_lower_bound_two_components(BoundedDegreeGraph.cycle(8), 0.1, 3)

    def test_lopsided_components_rejected(self):
        g = BoundedDegreeGraph.disjoint_union(
            [BoundedDegreeGraph.cycle(100), triangle()], degree_bound=2
        )
        with pytest.raises(ValueError):
            farness_lower_bound_two_components(g, 0.1, 3)


class TestFormats:
    def test_text_round_trip(self):
        g = BoundedDegreeGraph.from_edges(5, 3, [(0, 1), (1, 2), (3, 4)])
        assert parse_graph_text(format_graph_text(g)) == g

    def test_isolated_vertex_empty_line(self):
        text = "3 2\n1\n0\n\n"
        g = parse_graph_text(text)
        assert g.adjacency == ((1,), (0,), ())
        assert format_graph_text(g) == text

    def test_json_interchangeable(self):
        g = BoundedDegreeGraph.cycle(5)
        assert parse_graph(format_graph_json(g)) == g
        assert parse_graph(format_graph_text(g)) == g

    def test_malformed_inputs(self):
        for text in ["", "2\n", "2 2\n1\nx\n", "2 2\n1\n0\nextra\n", '{"n": 1}']:
            with pytest.raises(GraphFormatError):
                parse_graph(text)


def test_ledger_monotone_and_mergeable():
    led = QueryLedger()
    led.classical_queries += 5
    led.wall_work += 7
    other = QueryLedger(classical_queries=1, modeled_quantum_queries=2, wall_work=3)
    led.add(other)
    assert led.snapshot() == {
        "classical_queries": 6,
        "modeled_quantum_queries": 2,
        "wall_work": 10,
    }
