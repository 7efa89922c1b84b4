from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb

import pytest

from hopfdiag.combinatorics import (
    IntegerPartition,
    SetPartition,
    bell_number,
    bell_polynomial,
    enumerate_integer_partitions,
    enumerate_set_partitions,
    partition_type_multiplicity,
    stirling2,
)
from hopfdiag.errors import BoundExceededError


def brute_force_set_partitions(n):
    """Oracle: every labelling 1..n -> {0..n-1}, deduplicated as frozensets of blocks."""
    seen = set()
    for labels in product(range(max(n, 1)), repeat=n):
        blocks = {}
        for i, lab in enumerate(labels, start=1):
            blocks.setdefault(lab, set()).add(i)
        seen.add(frozenset(frozenset(b) for b in blocks.values()))
    return seen


def brute_force_integer_partitions(n):
    out = set()
    for k in range(1, n + 1):
        for combo in combinations_with_replacement(range(1, n + 1), k):
            if sum(combo) == n:
                out.add(tuple(sorted(combo, reverse=True)))
    return out


@pytest.mark.parametrize("n,k,expected", [(3, 2, 3), (5, 3, 25)])
def test_stirling2_against_enumeration(n, k, expected):
    oracle = sum(1 for p in brute_force_set_partitions(n) if len(p) == k)
    assert oracle == expected
    assert stirling2(n, k) == expected


@pytest.mark.parametrize("n", range(0, 9))
def test_stirling2_boundary_values(n):
    assert stirling2(n, n) == 1
    if n >= 1:
        assert stirling2(n, 1) == 1
    assert stirling2(n, n + 3) == 0


def test_bell_numbers():
    assert bell_number(0) == 1
    assert bell_number(3) == 5 == len(brute_force_set_partitions(3))
    # oracle recurrence B(n+1) = sum_k C(n,k) B(k)
    bells = [1]
    for n in range(7):
        bells.append(sum(comb(n, k) * bells[k] for k in range(n + 1)))
    assert bells[7] == 877
    assert [bell_number(n) for n in range(8)] == bells


def test_bell_polynomial():
    assert bell_polynomial(0) == [1]
    assert bell_polynomial(2) == [0, 1, 1]
    assert bell_polynomial(3) == [0, 1, 3, 1]
    assert all(isinstance(c, Fraction) for c in bell_polynomial(4))


def test_set_partitions_small():
    assert enumerate_set_partitions(1) == [SetPartition(1, ((1,),))]
    assert len(enumerate_set_partitions(3)) == 5
    assert len(enumerate_set_partitions(6)) == 203
    assert enumerate_set_partitions(0) == [SetPartition(0, ())]


@pytest.mark.parametrize("n", range(0, 7))
def test_set_partitions_match_brute_force(n):
    ours = enumerate_set_partitions(n)
    as_sets = {frozenset(frozenset(b) for b in p.blocks) for p in ours}
    assert len(as_sets) == len(ours)
    assert as_sets == brute_force_set_partitions(n)


def test_set_partitions_canonical_and_deterministic():
    parts = enumerate_set_partitions(5)
    assert parts == enumerate_set_partitions(5)
    for p in parts:
        mins = [b[0] for b in p.blocks]
        assert mins == sorted(mins)
        assert SetPartition.from_rgs(p.rgs()) == p
    assert [p.rgs() for p in parts] == sorted(p.rgs() for p in parts)


def test_set_partition_bound():
    with pytest.raises(BoundExceededError, match="bound 9"):
        enumerate_set_partitions(10)
    assert len(enumerate_set_partitions(10, bound=10)) == 115975


def test_set_partition_validation():
    with pytest.raises(ValueError):
        SetPartition(3, ((1, 2),))
    with pytest.raises(ValueError):
        SetPartition(2, ((1, 2), (2,)))


@pytest.mark.parametrize("n,count", [(1, 1), (4, 5), (5, 7)])
def test_integer_partitions(n, count):
    parts = enumerate_integer_partitions(n)
    assert len(parts) == count
    assert {p.parts for p in parts} == brute_force_integer_partitions(n)
    assert parts[0] == IntegerPartition((n,))
    assert [p.parts for p in parts] == sorted((p.parts for p in parts), reverse=True)


def test_integer_partition_validation_and_bound():
    with pytest.raises(ValueError):
        IntegerPartition((1, 2))
    assert IntegerPartition.of([1, 3, 2]).parts == (3, 2, 1)
    with pytest.raises(BoundExceededError):
        enumerate_integer_partitions(5, bound=4)


def test_partition_type_multiplicity_examples():
    assert partition_type_multiplicity(IntegerPartition((5,))) == 1
    assert partition_type_multiplicity(IntegerPartition((1, 1, 1))) == 1
    assert partition_type_multiplicity(IntegerPartition((2, 1))) == 3
    assert partition_type_multiplicity(IntegerPartition((3,))) == 1
    assert partition_type_multiplicity(IntegerPartition((2, 2))) == 3


@pytest.mark.parametrize("n", range(0, 9))
def test_partition_type_census(n):
    census = Counter(p.block_type() for p in enumerate_set_partitions(n))
    for lam in enumerate_integer_partitions(n):
        assert partition_type_multiplicity(lam) == census[lam]
    assert sum(partition_type_multiplicity(lam) for lam in enumerate_integer_partitions(n)) == bell_number(n)


@pytest.mark.parametrize("n", range(0, 9))
def test_stirling_bell_enumeration_agree(n):
    total = sum(stirling2(n, k) for k in range(n + 1))
    assert total == bell_number(n) == len(enumerate_set_partitions(n))
