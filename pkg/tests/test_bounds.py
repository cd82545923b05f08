import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from covrad.bounds import (
    NONE,
    UNBOUNDED,
    BoundReport,
    best_bound,
    code_bounds,
    evaluate,
    lll_perm_kmax,
    lll_perm_rhs_printed,
    lll_perm_threshold,
    lll_pm_kmax,
    lll_pm_rhs_printed,
    lll_pm_threshold,
    union_perm_threshold,
    union_pm_threshold,
    w_count,
)
from covrad.combinatorics import E_LOWER, E_UPPER, binomial
from covrad.errors import DomainError
from covrad.perms import PermutationCode, enumerate_permutations
from oracles import count_w_partitions


def test_e_bracket_is_certified():
    with mpmath.workdps(60):
        e = mpmath.e
        assert mpmath.mpf(E_LOWER.numerator) / E_LOWER.denominator < e
        upper = mpmath.mpf(E_UPPER.numerator) / E_UPPER.denominator
        assert upper > e
        assert upper - e < mpmath.mpf(10) ** -30


def test_binomial_convention():
    assert binomial(5, -1) == 0
    assert binomial(3, 4) == 0
    assert binomial(-2, 1) == 0
    assert binomial(6, 2) == 15


def test_union_perm_examples():
    assert union_perm_threshold(4, 1, 2) == 2
    assert union_perm_threshold(3, 1, 1) == 1
    assert not evaluate("union-perm", 3, 1, 1, 1).satisfied
    assert union_perm_threshold(3, 3, 2) == UNBOUNDED


def test_union_pm_examples():
    assert union_pm_threshold(3, 1, 1) == Fraction(5, 3)
    assert union_pm_threshold(3, 1, 3) == 15
    assert union_pm_threshold(2, 4, 1) == UNBOUNDED
    rep = evaluate("union-pm", 3, 1, 1, 1)
    assert rep.satisfied and rep.implied_bound == 3


def test_lll_perm_examples():
    t = lll_perm_threshold(10, 2, 2)
    assert math.floor(t) == 9
    assert abs(float(t) - (8100 / math.e - 1) / 324) < 1e-12
    assert lll_perm_threshold(5, 1, 2) == NONE
    assert evaluate("lll-perm", 10, 2, 2, 9).satisfied
    assert not evaluate("lll-perm", 10, 2, 2, 10).satisfied


def test_lll_is_conservative_in_e():
    # the exact-e value is strictly larger than the certified one
    with mpmath.workdps(60):
        for n, m, s in [(10, 2, 2), (6, 3, 3), (8, 1, 4)]:
            exact = (mpmath.mpf(math.perm(n, s)) ** m / mpmath.e - 1) / (s * (2 * n - s) * math.comb(n - 1, s - 1))
            k = lll_perm_kmax(n, m, s)
            assert mpmath.mpf(k.numerator) / k.denominator < exact


def test_w_count_examples():
    assert w_count(3, 1) == 2
    assert w_count(2, 2) == 3


@pytest.mark.parametrize("n", range(1, 7))
def test_w_count_matches_partition_oracle(n):
    for x in range(1, n + 1):
        assert w_count(n, x) == count_w_partitions(n, x)


def test_strictness():
    # union needs value < T; with T = 2 a code of size 2 is not certified
    assert not evaluate("union-perm", 4, 1, 2, 2).satisfied
    t = lll_pm_threshold(6, 3, 2)
    assert t != NONE and t == lll_pm_kmax(6, 3, 2)


def test_range_errors():
    for bad in [(3, 1, 0), (3, 1, 4), (3, 0, 1)]:
        with pytest.raises(DomainError):
            union_perm_threshold(*bad)
        with pytest.raises(DomainError):
            lll_pm_threshold(*bad)
    with pytest.raises(DomainError):
        evaluate("nope", 3, 1, 1, 1)


def test_s_equals_n_is_allowed():
    t = lll_perm_threshold(4, 2, 4)
    assert t == (Fraction(24**2) / E_UPPER - 1) / (4 * 4 * 1)


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def test_printed_forms_match_canonical_forms():
    rng = random.Random(2024)
    for _ in range(100):
        n = rng.randint(2, 12)
        m = rng.randint(1, 4)
        p = rng.randint(1, n)
        with mpmath.workdps(50):
            e = mpmath.e
            canon = (mpmath.mpf(math.perm(n, p)) ** m / e - 1) / (p * (2 * n - p) * math.comb(n - 1, p - 1))
            assert _rel(lll_perm_rhs_printed(n, m, p), canon) < 1e-12
            canon = (mpmath.mpf(w_count(n, p)) ** m / e - 1) / (2 * p * (2 * n - 1) * math.comb(n - 1, p - 1))
            assert _rel(lll_pm_rhs_printed(n, m, p), canon) < 1e-12


@pytest.mark.parametrize("n", range(2, 9))
def test_m_one_permutation_form(n):
    # single-covering shape: n (s-1)! / (s (2n-s)) * (1/e - (n-s)!/n!)
    for s in range(1, n + 1):
        reduced = n * math.factorial(s - 1) / (s * (2 * n - s)) * (1 / math.e - math.factorial(n - s) / math.factorial(n))
        assert float(lll_perm_rhs_printed(n, 1, s)) == pytest.approx(reduced, rel=1e-12)
        assert float(lll_perm_kmax(n, 1, s)) == pytest.approx(reduced, rel=1e-12)


@pytest.mark.parametrize("n", range(1, 7))
def test_m_one_matching_form(n):
    for x in range(1, n + 1):
        sigma = count_w_partitions(n, x)
        reduced = (sigma / math.e - 1) / (2 * x * (2 * n - 1) * math.comb(n - 1, x - 1))
        assert float(lll_pm_kmax(n, 1, x)) == pytest.approx(reduced, rel=1e-12)


def test_best_bound_examples():
    assert best_bound("perm", 4, 1, size=24, k=6).best == 0
    assert code_bounds(PermutationCode(enumerate_permutations(4)), 1).best == 0
    sweep = best_bound("perm", 4, 1, size=1)
    hit = [r for r in sweep.reports if r.family == "union-perm" and r.param == 2]
    assert hit[0].satisfied and hit[0].implied_bound == 3
    sweep = best_bound("matching", 3, 1, size=1)
    hit = [r for r in sweep.reports if r.family == "union-pm" and r.param == 1]
    assert hit[0].satisfied and hit[0].implied_bound == 3
    assert len(best_bound("perm", 5, 2, size=3, k=2).reports) == 10


@given(
    st.sampled_from(["union-perm", "lll-perm", "union-pm", "lll-pm"]),
    st.integers(1, 9),
    st.integers(1, 4),
    st.data(),
)
def test_report_round_trip_and_implied_bound(family, n, m, data):
    param = data.draw(st.integers(1, n))
    value = data.draw(st.integers(1, 50))
    rep = evaluate(family, n, m, param, value)
    assert (rep.implied_bound == n - param + 1) if rep.satisfied else rep.implied_bound is None
    assert BoundReport.from_dict(rep.to_dict()) == rep
