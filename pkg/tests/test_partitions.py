"""Partition lattice: refinement, signed chain counts, interval identities."""

import math

import pytest

from walkcheck.partitions import (
    BELL,
    SetPartition,
    chain_coefficient,
    enumerate_partitions,
    interval,
    mobius_closed_form,
    partition_lattice_mobius,
    partitions_of,
    refinement_order,
    refinements_of,
    verify_prop_part,
)


class TestSetPartition:
    def test_canonical_form(self):
        a = SetPartition([(2, 0), (1,)])
        b = SetPartition([[1], [0, 2]])
        assert a == b and hash(a) == hash(b)
        assert a.classes == ((0, 2), (1,))

    def test_validation(self):
        with pytest.raises(ValueError):
            SetPartition([(0, 1), (1, 2)])
        with pytest.raises(ValueError):
            SetPartition([(0,), ()])

    def test_refinement(self):
        fine = SetPartition([(0,), (1,), (2,)])
        mid = SetPartition([(0, 1), (2,)])
        coarse = SetPartition([(0, 1, 2)])
        assert fine < mid < coarse
        assert not mid.is_refinement_of(fine)
        other = SetPartition([(0, 2), (1,)])
        assert not mid <= other and not other <= mid

    def test_ground_mismatch(self):
        with pytest.raises(ValueError):
            SetPartition([(0, 1)]).is_refinement_of(SetPartition([(0, 1, 2)]))


class TestEnumeration:
    def test_bell_counts(self):
        for k in range(1, 8):
            assert len(enumerate_partitions(k)) == BELL[k]

    def test_cap(self):
        with pytest.raises(ValueError):
            enumerate_partitions(9)

    def test_partitions_of_distinct(self):
        parts = partitions_of(range(4))
        assert len(parts) == 15
        assert len({SetPartition(p) for p in parts}) == 15

    def test_refinement_order_pairs(self):
        parts = enumerate_partitions(3)
        order = refinement_order(parts)
        assert len(order) == sum(
            1 for a in parts for b in parts if a.is_refinement_of(b)
        )
        finest = parts.index(SetPartition.finest(3))
        assert all((finest, j) in order for j in range(len(parts)))

    def test_refinements_of(self):
        coarse = SetPartition([(0, 1), (2, 3)])
        refs = refinements_of(coarse)
        assert len(refs) == 4  # 2 options per class
        assert all(r <= coarse for r in refs)

    def test_interval_is_product_of_block_lattices(self):
        lower = SetPartition.finest(4)
        upper = SetPartition([(0, 1, 2), (3,)])
        inter = interval(lower, upper)
        assert len(inter) == 5  # partitions of the 3 singletons inside (0,1,2)
        assert all(lower <= p <= upper for p in inter)


class TestChainCoefficients:
    def test_identity_on_equal(self):
        p = SetPartition([(0, 1), (2,)])
        assert chain_coefficient(p, p) == 1

    def test_cover_is_minus_one(self):
        fine = SetPartition.finest(2)
        coarse = SetPartition.coarsest(2)
        assert chain_coefficient(fine, coarse) == -1

    def test_k3_finest_to_coarsest_is_two(self):
        assert chain_coefficient(SetPartition.finest(3), SetPartition.coarsest(3)) == 2

    def test_incomparable_is_zero(self):
        a = SetPartition([(0, 1), (2,)])
        b = SetPartition([(0, 2), (1,)])
        assert chain_coefficient(a, b) == 0

    def test_matches_closed_form_everywhere(self):
        for k in range(1, 6):
            for upper in enumerate_partitions(k):
                for lower in refinements_of(upper):
                    assert chain_coefficient(lower, upper) == mobius_closed_form(lower, upper)

    def test_full_lattice_mobius_factorial(self):
        for k in range(1, 7):
            assert chain_coefficient(
                SetPartition.finest(k), SetPartition.coarsest(k)
            ) == partition_lattice_mobius(k)
            assert partition_lattice_mobius(k) == (-1) ** (k - 1) * math.factorial(k - 1)


class TestIntervalSums:
    def test_k2_hand_value(self):
        # 1 + (-1) = 0
        assert verify_prop_part(2)

    def test_k3_hand_value(self):
        # finest-to-coarsest: 2 + 3*(-1) + 1 = 0
        fine, coarse = SetPartition.finest(3), SetPartition.coarsest(3)
        total = sum(chain_coefficient(mid, coarse) for mid in interval(fine, coarse))
        assert total == 0

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_exhaustive(self, k):
        assert verify_prop_part(k)
