import numpy as np
import pytest
from hypothesis import given

from covrad.errors import DimensionError, DomainError, ResourceError
from covrad.perms import (
    PartialInjection,
    Permutation,
    PermutationCode,
    agreement_positions,
    enumerate_permutations,
    frequency_matrix,
    hamming_distance,
    injections,
    max_frequency,
)
from conftest import perm_pairs, perms

P = Permutation.parse


@pytest.mark.parametrize(
    "g, h, expected",
    [("123", "231", 3), ("1234", "1234", 0), ("1234", "1243", 2)],
)
def test_hamming_distance_examples(g, h, expected):
    assert hamming_distance(P(g), P(h)) == expected


@pytest.mark.parametrize(
    "g, h, expected",
    [("123", "231", set()), ("123", "123", {1, 2, 3}), ("1234", "1243", {1, 2})],
)
def test_agreement_positions_examples(g, h, expected):
    assert agreement_positions(P(g), P(h)) == expected


def test_mismatched_n_is_a_dimension_error():
    with pytest.raises(DimensionError):
        hamming_distance(P("12"), P("123"))
    with pytest.raises(DimensionError):
        agreement_positions(P("12"), P("123"))


@pytest.mark.parametrize("bad", [(1, 1, 2), (0, 1, 2), (1, 2, 4), ()])
def test_permutation_rejects_non_bijections(bad):
    with pytest.raises(DomainError):
        Permutation(bad)


def test_enumeration_order_and_counts():
    assert [p.images for p in enumerate_permutations(1)] == [(1,)]
    s3 = list(enumerate_permutations(3))
    assert len(s3) == 6 and str(s3[0]) == "123" and str(s3[-1]) == "321"
    assert s3 == sorted(s3)
    assert sum(1 for _ in enumerate_permutations(4)) == 24


def test_enumeration_cap():
    with pytest.raises(ResourceError, match="cap 8"):
        next(enumerate_permutations(9))
    assert sum(1 for _ in enumerate_permutations(3, cap=3)) == 6
    with pytest.raises(ResourceError, match="cap 2"):
        next(enumerate_permutations(3, cap=2))


def test_frequency_examples():
    table = frequency_matrix(PermutationCode([P("123")]))
    assert (table == np.eye(3, dtype=int)).all()
    table = frequency_matrix(PermutationCode([P("123"), P("213")]))
    assert table[0, 0] == 1 and table[0, 1] == 1 and table[2, 2] == 2
    assert (table.sum(axis=1) == 2).all()
    assert max_frequency(PermutationCode([P("123")])) == 1
    assert max_frequency(PermutationCode([P("123"), P("213")])) == 2
    s3 = PermutationCode(enumerate_permutations(3))
    assert (frequency_matrix(s3) == 2).all() and max_frequency(s3) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_frequency_of_whole_group(n):
    import math

    table = frequency_matrix(PermutationCode(enumerate_permutations(n)))
    assert (table == math.factorial(n - 1)).all()


def test_code_invariants():
    code = PermutationCode([P("213"), P("123")])
    assert [str(g) for g in code] == ["123", "213"]
    with pytest.raises(DomainError, match="duplicate"):
        PermutationCode([P("123"), P("123")])
    with pytest.raises(DimensionError):
        PermutationCode([P("12"), P("123")])
    with pytest.raises(DomainError):
        PermutationCode([])


def test_partial_injection():
    f = PartialInjection(5, (3, 1), (2, 5))
    assert f.domain == (1, 3) and f.images == (5, 2)
    assert f(3) == 2 and f.image_set == {2, 5}
    with pytest.raises(DomainError):
        PartialInjection(5, (1, 2), (3, 3))
    with pytest.raises(DomainError):
        PartialInjection(3, (1,), (4,))
    assert sum(1 for _ in injections(5, (1, 2))) == 20


@given(perm_pairs(3))
def test_metric_axioms(triple):
    g, h, k = triple
    assert hamming_distance(g, h) == hamming_distance(h, g) >= 0
    assert (hamming_distance(g, h) == 0) == (g == h)
    assert hamming_distance(g, k) <= hamming_distance(g, h) + hamming_distance(h, k)


@given(perm_pairs(2))
def test_distance_is_never_one_and_matches_agreements(pair):
    g, h = pair
    d = hamming_distance(g, h)
    assert d != 1
    assert d == g.n - len(agreement_positions(g, h))


@given(perm_pairs(3))
def test_bi_invariance(triple):
    g, h, sigma = triple
    d = hamming_distance(g, h)
    assert hamming_distance(sigma.compose(g), sigma.compose(h)) == d
    assert hamming_distance(g.compose(sigma), h.compose(sigma)) == d


@given(perms())
def test_inverse(g):
    assert g.compose(g.inverse()) == Permutation.identity(g.n)
