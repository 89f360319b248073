"""Block-sampled matching-union model: samplers, bounds, analyzers."""

import math
from collections import Counter

import pytest

from walkcheck.graphs import connected_components, vertex_expansion_exact
from walkcheck.hardinstances import (
    PmlParams,
    chernoff_failure_bound,
    coefficient_bound_check,
    empirical_expander_rate,
    empirical_first_vertex_isolation_rate,
    exact_failure_probability,
    failure_rate_empirical,
    monomial_coefficient,
    neighbor_event_bound,
    same_block_triple_rate,
    sample_induced,
    sample_matching_union,
    sample_perfect_matching,
    spectral_expansion_certificate,
)
from walkcheck.testers import substream


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            PmlParams(4, 16, 3, 2)  # 3 does not divide 16
        with pytest.raises(ValueError):
            PmlParams(20, 16, 1, 2)  # host smaller than sample
        with pytest.raises(ValueError):
            PmlParams(4, 10, 2, 2)  # odd block size
        assert PmlParams(4, 16, 2, 2).block_size == 8

    def test_derive_constructive_default(self):
        p = PmlParams.derive(200, 4, 3)
        assert p.host_size >= 200 * (1 + 200**-0.1)
        assert p.host_size % 4 == 0 and (p.host_size // 4) % 2 == 0
        assert p.host_size == 320
        assert PmlParams.derive(200, 4, 3).host_size - 200 * (1 + 200**-0.1) < 8


class TestMatchingSampler:
    def test_block_of_two_forced(self):
        rng = substream(1)
        partner = sample_perfect_matching(2, rng)
        assert list(partner) == [1, 0]

    def test_block_of_four_uniform_over_three_matchings(self):
        rng = substream(2)
        counts = Counter()
        trials = 30_000
        for _ in range(trials):
            partner = sample_perfect_matching(4, rng)
            counts[tuple(partner)] += 1
        assert len(counts) == 3
        for c in counts.values():
            assert abs(c / trials - 1 / 3) < 3 * math.sqrt((1 / 3) * (2 / 3) / trials)

    def test_partner_structure_and_degree_bound(self):
        params = PmlParams(12, 16, 2, 5)
        rng = substream(3)
        host = sample_matching_union(params, rng)
        bs = params.block_size
        for j in range(params.matchings):
            for v in range(params.host_size):
                p = int(host.partners[j, v])
                assert p != v
                assert v // bs == p // bs
                assert int(host.partners[j, p]) == v
        g = host.as_graph()
        assert max(len(a) for a in g.adjacency) <= params.matchings


class TestInducedSampler:
    def test_single_block_exact_fit_never_fails(self):
        params = PmlParams(10, 10, 1, 2)
        rng = substream(4)
        for _ in range(200):
            host = sample_matching_union(params, rng)
            s = sample_induced(host, rng)
            assert not s.failed
            assert sorted(s.chosen) == list(range(10))

    def test_exact_fit_two_blocks_failure_matches_enumeration(self):
        params = PmlParams(4, 8, 2, 1)
        exact = exact_failure_probability(params)
        # sequential law: fails unless each block drawn exactly block_size times
        rng = substream(5)
        trials = 20_000
        fails = 0
        for _ in range(trials):
            host = sample_matching_union(params, rng)
            fails += sample_induced(host, rng).failed
        se = math.sqrt(exact * (1 - exact) / trials)
        assert abs(fails / trials - exact) <= 3 * se

    def test_exact_failure_probability_m12_l3_n12(self):
        # fails unless each of 3 blocks is drawn exactly 4 times
        params = PmlParams(12, 12, 3, 1)
        exact = exact_failure_probability(params)
        from math import factorial

        success = factorial(12) / (factorial(4) ** 3) / 3**12
        assert exact == pytest.approx(1 - success)

    def test_multinomial_shortcut_matches_sequential(self):
        params = PmlParams(6, 8, 2, 1)
        rng = substream(6)
        trials = 30_000
        seq_fail = 0
        for _ in range(trials):
            host = sample_matching_union(params, rng)
            seq_fail += sample_induced(host, rng).failed
        fast = failure_rate_empirical(params, substream(7), 200_000)
        p_seq = seq_fail / trials
        se = math.sqrt(max(p_seq * (1 - p_seq), 1e-12) / trials)
        assert abs(p_seq - fast) <= 4 * se

    def test_block_counts_law_exhaustive_m8_l2_n4(self):
        # marginal of final block counts among non-failed == binomial restricted
        params = PmlParams(4, 8, 2, 1)
        rng = substream(8)
        counts = Counter()
        trials = 40_000
        for _ in range(trials):
            host = sample_matching_union(params, rng)
            s = sample_induced(host, rng)
            if not s.failed:
                counts[s.block_counts] += 1
        for (a, b), c in counts.items():
            expect = math.comb(4, a) / 2**4
            assert abs(c / trials - expect) < 4 * math.sqrt(expect * (1 - expect) / trials)

    def test_induced_graph_degree_bounded_and_loopless(self):
        params = PmlParams(14, 16, 1, 6)
        rng = substream(9)
        for _ in range(60):
            host = sample_matching_union(params, rng)
            s = sample_induced(host, rng)
            assert not s.failed
            g = s.induced
            assert max(len(a) for a in g.adjacency) <= 6
            assert all(m >= 1 for m in s.edge_multiplicity.values())

    def test_two_blocks_disconnected_zero_expansion(self):
        params = PmlParams(12, 16, 2, 3)
        rng = substream(10)
        for _ in range(30):
            host = sample_matching_union(params, rng)
            s = sample_induced(host, rng)
            if s.failed:
                continue
            assert len(connected_components(s.induced)) >= 2
            assert vertex_expansion_exact(s.induced) == 0

    def test_failure_monotone_in_host_slack(self):
        rng = substream(11)
        rates = []
        for host in (24, 28, 32):
            params = PmlParams(24, host, 2, 1)
            rates.append(failure_rate_empirical(params, rng, 150_000))
        assert rates[0] >= rates[1] >= rates[2]


class TestBounds:
    def test_chernoff_formula_value(self):
        val = chernoff_failure_bound(10**4, 10, 0.1)
        eps = (10**4) ** -0.1
        assert val == pytest.approx(10 * math.exp(-(eps**2) * 1000 / 3))

    def test_single_block_conservative(self):
        assert chernoff_failure_bound(100, 1, 0.1) > 0
        params = PmlParams(20, 20, 1, 1)
        assert failure_rate_empirical(params, substream(12), 10_000) == 0

    def test_precondition(self):
        with pytest.raises(ValueError):
            chernoff_failure_bound(16, 20, 0.1)  # l > N
        with pytest.raises(ValueError):
            chernoff_failure_bound(16, 2, -0.5)  # eps > 1

    def test_empirical_rate_below_bound(self):
        params = PmlParams.derive(200, 4, 3)
        bound = chernoff_failure_bound(200, 4, 0.1)
        rate = failure_rate_empirical(params, substream(13), 100_000)
        assert rate <= bound

    def test_neighbor_event_bound_values(self):
        assert neighbor_event_bound(20, 20, 1, 0.0, 4) == pytest.approx((1 / 20) ** 2)
        assert neighbor_event_bound(10, 5, 4, 1.0, 2) == 1.0  # base >= 1 clips
        with pytest.raises(ValueError):
            neighbor_event_bound(10, 5, 8, 1.0, 2)

    def test_isolation_rate_below_bound(self):
        rate = empirical_first_vertex_isolation_rate(20, 18, 4, 100_000, substream(14))
        bound = neighbor_event_bound(20, 18, 1, 0.0, 4)
        assert rate <= bound

    def test_triple_same_block_rate(self):
        params = PmlParams(12, 16, 2, 1)
        rate = same_block_triple_rate(params, substream(15), 50_000)
        se = math.sqrt(0.25 * 0.75 / 50_000)
        assert abs(rate - 0.25) <= 3 * se


class TestExpanderRate:
    def test_c6_single_matching_zero_expansion(self):
        # one matching: disjoint edges, always disconnected for N >= 4
        params = PmlParams(8, 8, 1, 1)
        rate = empirical_expander_rate(params, 0.01, 40, substream(16))
        assert rate == 0.0

    def test_l2_rate_zero(self):
        params = PmlParams(10, 12, 2, 4)
        assert empirical_expander_rate(params, 0.05, 30, substream(17)) == 0.0

    def test_c6_block16_expands(self):
        params = PmlParams(16, 16, 1, 6)
        rate = empirical_expander_rate(params, 0.3, 100, substream(18))
        assert rate >= 0.9

    def test_spectral_certificate_sanity(self):
        params = PmlParams(16, 16, 1, 6)
        host = sample_matching_union(params, substream(19))
        g = sample_induced(host, substream(20)).induced
        lam2, lower = spectral_expansion_certificate(g)
        assert lam2 < 6.0
        assert 0 <= lower <= 6.0
        exact = float(vertex_expansion_exact(g))
        assert lower <= exact + 1e-9

    def test_method_validation(self):
        with pytest.raises(ValueError):
            empirical_expander_rate(PmlParams(8, 8, 1, 2), 0.1, 2, substream(0), method="x")


class TestCoefficientBound:
    def test_constant_evaluator(self):
        assert monomial_coefficient(lambda bits: 1.0, 3) == pytest.approx(0.0)

    def test_and_function(self):
        coeff = monomial_coefficient(lambda bits: float(all(bits)), 4)
        assert coeff == pytest.approx(1.0)
        assert coefficient_bound_check(lambda bits: float(all(bits)), 4)

    def test_parity_like_bounded(self):
        coeff = monomial_coefficient(lambda bits: (sum(bits) % 2) * 1.0, 3)
        assert abs(coeff) <= 8
        assert coefficient_bound_check(lambda bits: (sum(bits) % 2) * 1.0, 3)

    def test_out_of_range_evaluator_rejected(self):
        with pytest.raises(ValueError):
            monomial_coefficient(lambda bits: 2.0, 2)

    def test_degree_cap(self):
        with pytest.raises(ValueError):
            monomial_coefficient(lambda bits: 0.0, 21)

    def test_random_bounded_evaluators(self):
        rng = substream(21)
        for k in (2, 3, 5):
            table = rng.random(1 << k)
            assert coefficient_bound_check(
                lambda bits: table[sum(b << i for i, b in enumerate(bits))], k
            )
