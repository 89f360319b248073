"""Collision finder and thresholded counter: contract and cost model."""

import pytest

from walkcheck.collisions import (
    CollisionQuery,
    count_at_least,
    find_collision,
    modeled_quantum_cost,
    retry_budget,
)
from walkcheck.graphs import QueryLedger
from walkcheck.partitions import partitions_of
from walkcheck.testers import substream


def labels_query(labels, p=0.0, exclude=None):
    labels = list(labels)
    return CollisionQuery(
        domain_size=len(labels),
        evaluator=labels.__getitem__,
        relation=lambda a, b: a == b,
        codomain_size=max(labels) + 1 if labels else 1,
        exclude=set(exclude or ()),
        injected_failure=p,
    )


def collision_count(labels):
    from collections import Counter

    return sum(c * (c - 1) // 2 for c in Counter(labels).values())


class TestCost:
    def test_reference_values(self):
        assert modeled_quantum_cost(1000, 1023) == 100 * 10
        assert modeled_quantum_cost(8, 1) == 4
        assert modeled_quantum_cost(1, 7) == 3
        assert modeled_quantum_cost(1, 1) == 1

    def test_exact_two_thirds_power(self):
        assert modeled_quantum_cost(27, 1) == 9
        assert modeled_quantum_cost(28, 1) == 10  # ceil(28^(2/3)) = 10

    def test_log_exponent_knob(self):
        assert modeled_quantum_cost(8, 1023, log_exponent=2) == 4 * 100

    def test_retry_budget(self):
        assert retry_budget(1) == 3   # ceil(log2 3) + 1
        assert retry_budget(2) == 4   # ceil(log2 6) = 3
        assert retry_budget(6) == 6   # ceil(log2 18) = 5


class TestFindCollision:
    def test_injective_always_none(self):
        rng = substream(0)
        q = labels_query(range(10), p=0.9)
        for _ in range(50):
            assert find_collision(q, rng).found is None

    def test_unique_pair_found(self):
        rng = substream(1)
        rep = find_collision(labels_query([3, 1, 4, 1, 5]), rng)
        assert rep.found == (1, 3)
        assert rep.classical_evals == 5

    def test_excluded_smallest_gives_next(self):
        rng = substream(2)
        labels = [0, 0, 0, 1, 1]  # pairs: (0,1),(0,2),(1,2),(3,4)
        assert find_collision(labels_query(labels), rng).found == (0, 1)
        q = labels_query(labels, exclude=[(0, 1), (1, 0)])
        assert find_collision(q, rng).found == (0, 2)

    def test_relation_and_bucket(self):
        values = [(0, 0), (0, 1), (1, 0), (1, 0)]
        q = CollisionQuery(
            domain_size=4,
            evaluator=values.__getitem__,
            relation=lambda a, b: a[0] == b[0] and a[1] != b[1],
            codomain_size=4,
            bucket_key=lambda y: y[0],
        )
        assert find_collision(q, substream(3)).found == (0, 1)

    def test_small_domain_rejected(self):
        with pytest.raises(ValueError):
            find_collision(labels_query([1]), substream(0))


class TestCountAtLeast:
    def test_zero_collisions_always_false(self):
        rng = substream(4)
        q = labels_query(range(8))
        assert not count_at_least(q, 1, rng).reached

    def test_exact_threshold_at_p0(self):
        rng = substream(5)
        labels = [0, 0, 0, 1, 1]  # 4 distinct collisions
        for m in range(1, 7):
            assert count_at_least(labels_query(labels), m, rng).reached == (m <= 4)

    def test_exhaustive_partitions_sound_and_complete_p0(self):
        rng = substream(6)
        for n in range(2, 7):
            for shape in partitions_of(range(n)):
                labels = [0] * n
                for cls_idx, cls in enumerate(shape):
                    for member in cls:
                        labels[member] = cls_idx
                x = collision_count(labels)
                for m in range(1, 7):
                    assert count_at_least(labels_query(labels), m, rng).reached == (x >= m)

    def test_soundness_any_p(self):
        rng = substream(7)
        labels = [0, 0, 1, 2, 3]  # exactly 1 collision
        for p in (0.0, 0.25, 0.5, 0.9):
            for _ in range(40):
                assert not count_at_least(labels_query(labels, p=p), 2, rng).reached

    def test_probabilistic_completeness_p_half(self):
        wins = 0
        labels = [0] * 4 + [1] * 4  # 12 collisions
        for t in range(400):
            if count_at_least(labels_query(labels, p=0.5), 6, substream(8, t)).reached:
                wins += 1
        assert wins / 400 >= 2 / 3

    def test_exclusion_swap_closed_and_genuine(self):
        rng = substream(9)
        labels = [0, 0, 1, 1, 0]
        res = count_at_least(labels_query(labels), 3, rng)
        assert res.reached
        for (a, b) in res.excluded:
            assert (b, a) in res.excluded
            assert labels[a] == labels[b]

    def test_cost_monotonicity(self):
        rng = substream(10)
        labels = [0, 0, 1, 1, 0, 2]
        m = 3
        led = QueryLedger()
        res = count_at_least(labels_query(labels, p=0.25), m, rng, ledger=led)
        bound = m * retry_budget(m) * modeled_quantum_cost(6, 3)
        assert res.modeled_quantum_queries <= bound
        assert led.modeled_quantum_queries == res.modeled_quantum_queries

    def test_prior_exclusions_respected(self):
        rng = substream(11)
        labels = [0, 0, 0]  # 3 collisions
        q = labels_query(labels, exclude=[(0, 1), (1, 0)])
        assert count_at_least(q, 3, rng).reached is False
        assert count_at_least(q, 2, rng).reached is True
