"""Perfect matchings and x-matchings of the complete graph K_2n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from covrad.errors import DimensionError, DomainError, ResourceError

DEFAULT_MATCHING_CAP = 7

Edge = tuple[int, int]


def _canonical_edges(edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    out = []
    for e in edges:
        pair = tuple(int(v) for v in e)
        if len(pair) != 2 or pair[0] == pair[1]:
            raise DomainError(f"{list(pair)} is not an edge")
        out.append((min(pair), max(pair)))
    return tuple(sorted(out))


@dataclass(frozen=True, order=True)
class PartialMatching:
    """A set of pairwise disjoint edges of K_2n (an x-matching, x = len(edges))."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        edges = _canonical_edges(self.edges)
        object.__setattr__(self, "edges", edges)
        seen: set[int] = set()
        for a, b in edges:
            for v in (a, b):
                if not 1 <= v <= 2 * self.n:
                    raise DomainError(f"vertex {v} outside 1..{2 * self.n}")
                if v in seen:
                    raise DomainError(f"vertex {v} is covered twice in {[list(e) for e in edges]}")
                seen.add(v)

    @property
    def x(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)


class PerfectMatching(PartialMatching):
    """A partial matching that covers every vertex of K_2n."""

    def __init__(self, edges: Iterable[Sequence[int]], n: int | None = None):
        edges = _canonical_edges(edges)
        if n is None:
            n = len(edges)
        super().__init__(n, edges)
        if len(self.edges) != n:
            raise DomainError(f"a perfect matching of K_{2 * n} needs {n} edges, got {len(self.edges)}")

    @classmethod
    def standard(cls, n: int) -> PerfectMatching:
        """The matching {1,2},{3,4},...,{2n-1,2n}."""
        return cls([(2 * i + 1, 2 * i + 2) for i in range(n)])

    def partner(self) -> tuple[int, ...]:
        """0-indexed partner array: ``partner()[v-1]`` is the vertex matched to v."""
        arr = [0] * (2 * self.n)
        for a, b in self.edges:
            arr[a - 1] = b
            arr[b - 1] = a
        return tuple(arr)

    def __repr__(self) -> str:
        return f"PerfectMatching({[list(e) for e in self.edges]})"


def _check_same_n(a: PartialMatching, b: PartialMatching) -> None:
    if a.n != b.n:
        raise DimensionError(f"matchings of different graphs: K_{2 * a.n} vs K_{2 * b.n}")


def matching_distance(m1: PerfectMatching, m2: PerfectMatching) -> int:
    """n minus the number of shared edges."""
    _check_same_n(m1, m2)
    return m1.n - len(set(m1.edges) & set(m2.edges))


def contains(m: PartialMatching, sub: PartialMatching) -> bool:
    """True iff every edge of ``sub`` is an edge of ``m``."""
    _check_same_n(m, sub)
    return set(sub.edges) <= set(m.edges)


def _pairings(vertices: list[int]) -> Iterator[list[Edge]]:
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    for i, other in enumerate(rest):
        for tail in _pairings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + tail


def enumerate_perfect_matchings(n: int, cap: int = DEFAULT_MATCHING_CAP) -> Iterator[PerfectMatching]:
    """Yield every perfect matching of K_2n in canonical lexicographic order.

    The lowest unmatched vertex is paired first, so each matching appears once
    and already in canonical form.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n > cap:
        raise ResourceError(f"n={n} exceeds the matching enumeration cap {cap} ({beta(n)} points)")
    for edges in _pairings(list(range(1, 2 * n + 1))):
        yield PerfectMatching(edges)


def enumerate_x_matchings(n: int, x: int) -> Iterator[PartialMatching]:
    """All x-matchings of K_2n, in canonical order."""
    all_edges = list(combinations(range(1, 2 * n + 1), 2))
    for chosen in combinations(all_edges, x):
        verts = [v for e in chosen for v in e]
        if len(set(verts)) == 2 * x:
            yield PartialMatching(n, chosen)


def beta(n: int) -> int:
    """Number of perfect matchings of K_2n: (2n)! / (2^n n!)."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return math.factorial(2 * n) // (2**n * math.factorial(n))


def beta_x(n: int, x: int) -> int:
    """Number of perfect matchings of K_2n containing a fixed x-matching."""
    if not 1 <= x <= n:
        raise DomainError(f"x must satisfy 1 <= x <= n, got x={x}, n={n}")
    return beta(n - x)


class MatchingCode:
    """A nonempty set of distinct perfect matchings of one K_2n, canonically ordered."""

    kind = "matching"

    def __init__(self, members: Iterable[PerfectMatching | Sequence[Sequence[int]]], n: int | None = None):
        ms = [m if isinstance(m, PerfectMatching) else PerfectMatching(m) for m in members]
        if not ms:
            raise DomainError("a code must have at least one member")
        sizes = {m.n for m in ms}
        if n is not None:
            sizes.add(n)
        if len(sizes) != 1:
            raise DimensionError(f"code members have mixed sizes {sorted(sizes)}")
        if len(set(ms)) != len(ms):
            dup = next(m for m in ms if ms.count(m) > 1)
            raise DomainError(f"duplicate code member {[list(e) for e in dup.edges]}")
        self.members: tuple[PerfectMatching, ...] = tuple(sorted(ms))
        self.n: int = sizes.pop()

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[PerfectMatching]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatchingCode) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"MatchingCode(n={self.n}, size={len(self)})"


def edge_frequency(code: MatchingCode) -> tuple[dict[Edge, int], int]:
    """Occurrence count of each of the C(2n, 2) edges across the code, and the maximum."""
    if len(code) == 0:
        raise DomainError("edge frequency of an empty code is undefined")
    counts = {e: 0 for e in combinations(range(1, 2 * code.n + 1), 2)}
    for m in code:
        for e in m.edges:
            counts[e] += 1
    return counts, max(counts.values())


def partner_array(matchings: Sequence[PerfectMatching]) -> np.ndarray:
    """Stack partner arrays into an int array of shape (len, 2n)."""
    return np.array([m.partner() for m in matchings], dtype=np.int16)
