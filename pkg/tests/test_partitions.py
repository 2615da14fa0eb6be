from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from tuttealg.errors import DomainError, StructuralError
from tuttealg.exactalg import MultiPoly, falling_factorial
from tuttealg.graphs import complete_graph
from tuttealg.partitions import (
    SetPartition,
    bell,
    components_partition,
    cross_edges,
    enumerate_partitions,
    refines,
    stirling2,
)


def bell_by_recurrence(n):
    """B_{n+1} = sum_k C(n,k) B_k, independent of the triangle."""
    from math import comb

    b = [1]
    for m in range(n):
        b.append(sum(comb(m, k) * b[k] for k in range(m + 1)))
    return b[n]


def test_enumeration_counts():
    assert len(list(enumerate_partitions("abc"))) == 5
    assert len(list(enumerate_partitions(()))) == 1
    assert len(list(enumerate_partitions(range(4)))) == 15


@pytest.mark.parametrize("n", range(11))
def test_enumeration_is_bell_without_duplicates(n):
    parts = list(enumerate_partitions(range(n)))
    assert len(parts) == len(set(parts)) == bell(n) == bell_by_recurrence(n)
    assert [p.rgs for p in parts] == sorted(p.rgs for p in parts)


def test_refines_examples():
    g = ("1", "2", "3")
    bottom, top = SetPartition.finest(g), SetPartition.coarsest(g)
    for p in enumerate_partitions(g):
        assert refines(bottom, p) and refines(p, top)
    a = SetPartition.from_blocks(g, [["1", "2"], ["3"]])
    b = SetPartition.from_blocks(g, [["1", "3"], ["2"]])
    assert not refines(a, b) and not refines(b, a)
    with pytest.raises(StructuralError):
        refines(a, SetPartition.finest(("1", "2")))


def test_refinement_is_a_partial_order():
    parts = list(enumerate_partitions(range(4)))
    for a in parts:
        assert refines(a, a)
    for a, b in product(parts, repeat=2):
        if refines(a, b) and refines(b, a):
            assert a == b
    for a, b, c in product(parts, repeat=3):
        if refines(a, b) and refines(b, c):
            assert refines(a, c)


def test_stirling_examples():
    assert stirling2(3, 2) == 3
    assert all(stirling2(n, n) == 1 for n in range(8))
    assert all(stirling2(n, 0) == 0 for n in range(1, 8))
    with pytest.raises(DomainError):
        stirling2(-1, 0)


@pytest.mark.parametrize("n", range(9))
def test_stirling_identity(n):
    q = MultiPoly.var("q")
    total = sum((falling_factorial(q, k) * stirling2(n, k) for k in range(n + 1)), MultiPoly.zero())
    assert total == q ** n


def test_stirling_counts_blocks():
    for n in range(7):
        for k in range(n + 1):
            assert stirling2(n, k) == sum(1 for p in enumerate_partitions(range(n)) if len(p) == k)


def test_cross_edges_examples():
    g = (1, 2, 3)
    assert cross_edges(SetPartition.finest(g)) == 3
    assert cross_edges(SetPartition.coarsest(g)) == 0
    assert cross_edges(SetPartition.from_blocks((1, 2, 3, 4), [[1, 2], [3, 4]])) == 4


@given(st.lists(st.integers(0, 3), min_size=1, max_size=7))
@settings(max_examples=50, deadline=None)
def test_cross_edges_pair_count(labels):
    p = SetPartition.from_blocks(range(len(labels)),
                                 [[i for i, l in enumerate(labels) if l == b] for b in set(labels)])
    pairs = sum(1 for i, j in combinations(range(len(labels)), 2) if labels[i] != labels[j])
    assert cross_edges(p) == pairs


def test_components_partition_examples():
    k4 = complete_graph(4)
    assert components_partition(k4, []) == SetPartition.finest(k4.vertices)
    assert len(components_partition(k4, range(6))) == 1
    e12 = next(i for i, (u, v, _) in enumerate(k4.edges) if {u, v} == {"1", "2"})
    assert components_partition(k4, [e12]).to_text() == "{1,2|3|4}"


def test_invalid_rgs():
    with pytest.raises(StructuralError):
        SetPartition("ab", [1, 0])
    with pytest.raises(StructuralError):
        SetPartition.from_blocks("ab", [["a"], ["a", "b"]])
