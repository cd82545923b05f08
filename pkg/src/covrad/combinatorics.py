"""Exact integer and rational helpers for the bound evaluators."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def factorial(a: int) -> int:
    return math.factorial(a)


@lru_cache(maxsize=4096)
def binomial(a: int, b: int) -> int:
    """C(a, b), defined as 0 whenever b < 0 or b > a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def _e_bracket(terms: int) -> tuple[Fraction, Fraction]:
    # sum_{k<=K} 1/k! < e < sum_{k<=K} 1/k! + 1/(K! K)
    lower = Fraction(0)
    for k in range(terms + 1):
        lower += Fraction(1, math.factorial(k))
    return lower, lower + Fraction(1, math.factorial(terms) * terms)


E_TERMS = 34
E_LOWER, E_UPPER = _e_bracket(E_TERMS)


def pairings(count: int) -> int:
    """Perfect matchings of ``count`` labeled points: count! / ((count/2)! 2^(count/2))."""
    if count % 2:
        return 0
    half = count // 2
    return factorial(count) // (factorial(half) * 2**half)
