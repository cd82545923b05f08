from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covrad.errors import DimensionError, DomainError, ResourceError
from covrad.matchings import (
    MatchingCode,
    PartialMatching,
    PerfectMatching,
    beta,
    beta_x,
    contains,
    edge_frequency,
    enumerate_perfect_matchings,
    enumerate_x_matchings,
    matching_distance,
)
from conftest import matching_tuples
from oracles import all_matchings

M6a = PerfectMatching([(1, 2), (3, 4), (5, 6)])
M6b = PerfectMatching([(1, 3), (2, 4), (5, 6)])


def test_distance_examples():
    assert matching_distance(M6a, M6b) == 2
    assert matching_distance(M6a, M6a) == 0
    assert matching_distance(PerfectMatching([(1, 2), (3, 4)]), PerfectMatching([(1, 3), (2, 4)])) == 2


def test_canonical_form_and_validation():
    m = PerfectMatching([[6, 5], [2, 1], [4, 3]])
    assert m == M6a and m.edges == ((1, 2), (3, 4), (5, 6))
    with pytest.raises(DomainError):
        PerfectMatching([(1, 2), (2, 3)])
    with pytest.raises(DomainError):
        PerfectMatching([(1, 2), (3, 7)])
    with pytest.raises(DomainError):
        PerfectMatching([(1, 1), (2, 3)])
    with pytest.raises(DomainError):
        PartialMatching(3, [(1, 2), (2, 5)])


def test_contains_examples():
    assert contains(M6a, PartialMatching(3, []))
    assert contains(M6a, PartialMatching(3, [(1, 2)]))
    assert not contains(M6a, PartialMatching(3, [(1, 3)]))
    with pytest.raises(DimensionError):
        contains(M6a, PartialMatching(2, [(1, 2)]))


def test_enumeration_examples():
    assert [m.edges for m in enumerate_perfect_matchings(1)] == [((1, 2),)]
    assert [m.edges for m in enumerate_perfect_matchings(2)] == [
        ((1, 2), (3, 4)),
        ((1, 3), (2, 4)),
        ((1, 4), (2, 3)),
    ]
    assert sum(1 for _ in enumerate_perfect_matchings(3)) == 15


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_matches_oracle_and_is_sorted(n):
    listed = list(enumerate_perfect_matchings(n))
    assert listed == sorted(listed)
    assert {frozenset(m.edges) for m in listed} == set(all_matchings(n))
    assert len(listed) == len(set(listed)) == beta(n)


def test_enumeration_cap():
    with pytest.raises(ResourceError):
        next(enumerate_perfect_matchings(8))
    with pytest.raises(ResourceError):
        next(enumerate_perfect_matchings(3, cap=2))


def test_beta_values():
    assert beta(3) == 15
    assert beta_x(3, 1) == 3
    assert all(beta_x(n, n) == 1 for n in range(1, 8))
    with pytest.raises(DomainError):
        beta_x(3, 0)
    with pytest.raises(DomainError):
        beta_x(3, 4)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_containing_count_is_beta_x(n):
    space = list(enumerate_perfect_matchings(n))
    for x in range(1, n + 1):
        for X in enumerate_x_matchings(n, x):
            assert sum(contains(m, X) for m in space) == beta_x(n, x)


def test_edge_frequency():
    counts, top = edge_frequency(MatchingCode([M6a]))
    assert top == 1 and sum(counts.values()) == 3 and len(counts) == 15
    counts, top = edge_frequency(MatchingCode(enumerate_perfect_matchings(2)))
    assert top == 1 and set(counts.values()) == {1}


def test_code_rejects_duplicates():
    with pytest.raises(DomainError, match="duplicate"):
        MatchingCode([M6a, PerfectMatching([(2, 1), (4, 3), (6, 5)])])


@given(matching_tuples(3))
def test_metric_axioms(triple):
    a, b, c = triple
    assert matching_distance(a, b) == matching_distance(b, a)
    assert (matching_distance(a, b) == 0) == (a == b)
    assert matching_distance(a, b) != 1
    assert matching_distance(a, c) <= matching_distance(a, b) + matching_distance(b, c)


@settings(max_examples=50)
@given(matching_tuples(2), st.randoms(use_true_random=False))
def test_vertex_relabelling_invariance(pair, rnd):
    a, b = pair
    labels = list(range(1, 2 * a.n + 1))
    rnd.shuffle(labels)

    def relabel(m):
        return PerfectMatching([(labels[u - 1], labels[v - 1]) for u, v in m.edges])

    assert matching_distance(relabel(a), relabel(b)) == matching_distance(a, b)


def test_x_matching_count():
    # oracle: count x-subsets of edges that are vertex-disjoint
    n, x = 3, 2
    edges = list(combinations(range(1, 7), 2))
    expected = sum(1 for c in combinations(edges, x) if len({v for e in c for v in e}) == 2 * x)
    assert sum(1 for _ in enumerate_x_matchings(n, x)) == expected == 45
