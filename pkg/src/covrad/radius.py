"""Exact covering and multicovering radii by exhaustive search.

The search evaluates every m-set of points of a finite metric space. For a
candidate set W the inner quantity is ``min_g max_{h in W} d(g, h)``; the
radius is its maximum over all W. Distances between code members and points
are tabulated once, and candidate sets are scored in vectorized chunks taken
from the lexicographic stream of index combinations. Chunks may be scored on
a thread pool; results are merged with the rule "larger value wins, earlier
combination wins ties", which is associative, so the witness does not depend
on the number of workers.
"""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, islice
from typing import Any, Iterator, Sequence

import numpy as np

from covrad.errors import DimensionError, DomainError, ResourceError
from covrad.matchings import (
    DEFAULT_MATCHING_CAP,
    MatchingCode,
    PerfectMatching,
    beta,
    enumerate_perfect_matchings,
    matching_distance,
    partner_array,
)
from covrad.perms import (
    DEFAULT_PERM_CAP,
    Permutation,
    PermutationCode,
    enumerate_permutations,
    hamming_distance,
)

DEFAULT_BUDGET = 10**8

# Cells of the (members x chunk x m) work array per chunk.
_CHUNK_CELLS = 1 << 22


class PointSpace:
    """A finite metric space with a fixed total order on its points.

    Subclasses provide ``n`` (the largest possible distance), ``size``,
    ``_enumerate``, ``distance`` and ``_distance_table``.
    """

    kind: str
    n: int
    cap: int

    @property
    def size(self) -> int:
        raise NotImplementedError

    def _enumerate(self) -> Iterator[Any]:
        raise NotImplementedError

    def distance(self, a: Any, b: Any) -> int:
        raise NotImplementedError

    def _distance_table(self, members: Sequence[Any]) -> np.ndarray:
        raise NotImplementedError

    @cached_property
    def points(self) -> tuple:
        return tuple(self._enumerate())

    @cached_property
    def _index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def index_of(self, point: Any) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise DomainError(f"{point!r} is not a point of this space") from None

    def distance_table(self, members: Sequence[Any]) -> np.ndarray:
        """Distances from each member (rows) to every point (columns)."""
        for m in members:
            if m.n != self.n:
                raise DimensionError(f"code member {m!r} does not belong to this {self.kind} space (n={self.n})")
        return self._distance_table(members)


class PermutationSpace(PointSpace):
    """S_n with the Hamming metric."""

    kind = "permutation"

    def __init__(self, n: int, cap: int = DEFAULT_PERM_CAP):
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        self.n = n
        self.cap = cap

    @property
    def size(self) -> int:
        return math.factorial(self.n)

    def _enumerate(self) -> Iterator[Permutation]:
        return enumerate_permutations(self.n, cap=self.cap)

    def distance(self, a: Permutation, b: Permutation) -> int:
        return hamming_distance(a, b)

    @cached_property
    def _array(self) -> np.ndarray:
        return np.array([p.images for p in self.points], dtype=np.int8)

    def _distance_table(self, members: Sequence[Permutation]) -> np.ndarray:
        code = np.array([m.images for m in members], dtype=np.int8)
        return (code[:, None, :] != self._array[None, :, :]).sum(axis=2, dtype=np.int16)


class MatchingSpace(PointSpace):
    """Perfect matchings of K_2n with the metric n - |M ∩ M'|."""

    kind = "matching"

    def __init__(self, n: int, cap: int = DEFAULT_MATCHING_CAP):
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        self.n = n
        self.cap = cap

    @property
    def size(self) -> int:
        return beta(self.n)

    def _enumerate(self) -> Iterator[PerfectMatching]:
        return enumerate_perfect_matchings(self.n, cap=self.cap)

    def distance(self, a: PerfectMatching, b: PerfectMatching) -> int:
        return matching_distance(a, b)

    @cached_property
    def _array(self) -> np.ndarray:
        return partner_array(self.points)

    def _distance_table(self, members: Sequence[PerfectMatching]) -> np.ndarray:
        code = partner_array(members)
        shared_vertices = (code[:, None, :] == self._array[None, :, :]).sum(axis=2, dtype=np.int16)
        return (self.n - shared_vertices // 2).astype(np.int16)


def space_for(code: PermutationCode | MatchingCode, cap: int | None = None) -> PointSpace:
    """The ambient space of ``code``."""
    if isinstance(code, PermutationCode):
        return PermutationSpace(code.n, DEFAULT_PERM_CAP if cap is None else cap)
    if isinstance(code, MatchingCode):
        return MatchingSpace(code.n, DEFAULT_MATCHING_CAP if cap is None else cap)
    raise TypeError(f"unsupported code type {type(code).__name__}")


@dataclass(frozen=True)
class RadiusResult:
    """Outcome of an exact search.

    ``witness`` is the lexicographically least maximizing m-set (as points in
    the space's order); ``member`` is the first code member attaining the
    minimum over the witness, and ``member_distance`` its max distance to the
    witness, which equals ``radius``.
    """

    radius: int
    m: int
    witness: tuple
    member: Any
    member_distance: int
    candidates: int


def _check_inputs(code, space: PointSpace | None, m: int, budget: int) -> tuple[PointSpace, int]:
    if len(code) == 0:
        raise DomainError("the code is empty")
    if space is None:
        space = space_for(code)
    size = space.size
    if not 1 <= m <= size:
        raise DomainError(f"m must satisfy 1 <= m <= {size}, got {m}")
    count = math.comb(size, m)
    if count > budget:
        raise ResourceError(f"C({size}, {m}) = {count} candidate sets exceeds the search budget {budget}")
    return space, count


def _chunks(size: int, m: int, chunk: int) -> Iterator[tuple[int, np.ndarray]]:
    """Consecutive blocks of the lexicographic combination stream with their start rank."""
    if m == 1:
        for start in range(0, size, chunk):
            yield start, np.arange(start, min(size, start + chunk), dtype=np.int64)[:, None]
        return
    stream = combinations(range(size), m)
    start = 0
    while True:
        flat = np.fromiter((i for c in islice(stream, chunk) for i in c), dtype=np.int64)
        if flat.size == 0:
            return
        idx = flat.reshape(-1, m)
        yield start, idx
        start += len(idx)


def _score(table: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """min over members of max over each candidate set."""
    return table[:, idx].max(axis=2).min(axis=0)


def _chunk_best(table: np.ndarray, start: int, idx: np.ndarray) -> tuple[int, int, np.ndarray]:
    vals = _score(table, idx)
    pos = int(np.argmax(vals))
    return int(vals[pos]), start + pos, idx[pos]


def _better(a, b):
    """Merge two (value, rank, witness) candidates: larger value, then earlier rank."""
    if a is None:
        return b
    if b is None:
        return a
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    return a if a[1] <= b[1] else b


def _run_chunks(fn, chunks, workers: int, stop=None):
    """Apply ``fn`` to chunks in order, yielding results in order.

    With ``workers > 1`` a bounded window of chunks is in flight at once.
    ``stop(result)`` returning True ends the stream early.
    """
    if workers <= 1:
        for args in chunks:
            res = fn(*args)
            yield res
            if stop is not None and stop(res):
                return
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        window: deque = deque()
        it = iter(chunks)
        exhausted = False
        while True:
            while not exhausted and len(window) < 2 * workers:
                try:
                    args = next(it)
                except StopIteration:
                    exhausted = True
                    break
                window.append(pool.submit(fn, *args))
            if not window:
                return
            res = window.popleft().result()
            yield res
            if stop is not None and stop(res):
                for fut in window:
                    fut.cancel()
                return


def multicovering_radius(
    code,
    space: PointSpace | None = None,
    m: int = 1,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> RadiusResult:
    """Exact m-covering radius ``max_W min_g max_{h in W} d(g, h)`` over m-sets W."""
    space, count = _check_inputs(code, space, m, budget)
    members = list(code)
    table = space.distance_table(members)
    size = table.shape[1]
    chunk = max(256, _CHUNK_CELLS // (len(members) * m))
    ceiling = space.n

    best = None
    # A set attaining the largest possible distance cannot be beaten, and the
    # first one found is the lexicographically least.
    for res in _run_chunks(
        lambda s, idx: _chunk_best(table, s, idx),
        _chunks(size, m, chunk),
        workers,
        stop=lambda r: r[0] >= ceiling,
    ):
        best = _better(best, res)

    value, _, widx = best
    witness = tuple(space.points[i] for i in widx)
    per_member = table[:, widx].max(axis=1)
    j = int(np.argmin(per_member))
    return RadiusResult(
        radius=value,
        m=m,
        witness=witness,
        member=members[j],
        member_distance=int(per_member[j]),
        candidates=count,
    )


def covering_radius(code, space: PointSpace | None = None, budget: int = DEFAULT_BUDGET, workers: int = 1) -> RadiusResult:
    """Exact covering radius ``max_h min_g d(g, h)``."""
    return multicovering_radius(code, space, m=1, budget=budget, workers=workers)


def minmax_distance(code, witness: Sequence[Any], space: PointSpace | None = None) -> int:
    """Evaluate ``min_g max_{h in witness} d(g, h)`` directly, pair by pair."""
    if space is None:
        space = space_for(code)
    return min(max(space.distance(g, h) for h in witness) for g in code)


@dataclass(frozen=True)
class Characterization:
    holds: bool
    witness: tuple | None


def agreement_characterization(
    code,
    space: PointSpace | None = None,
    m: int = 1,
    s: int = 1,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> Characterization:
    """Is there an m-set W such that every member g agrees with some h in W in at most s-1 places?

    Agreement counts fixed positions for permutations and shared edges for
    matchings, so it equals ``n - d(g, h)``. The condition holds exactly when
    the m-covering radius is at least ``n - s + 1``; the search stops at the
    first (lexicographically least) qualifying m-set.
    """
    space, _ = _check_inputs(code, space, m, budget)
    if not 1 <= s <= space.n:
        raise DomainError(f"s must satisfy 1 <= s <= n={space.n}, got {s}")
    members = list(code)
    table = space.distance_table(members)
    target = space.n - s + 1
    chunk = max(256, _CHUNK_CELLS // (len(members) * m))

    def first_hit(start, idx):
        hits = np.flatnonzero(_score(table, idx) >= target)
        return None if hits.size == 0 else idx[hits[0]]

    for res in _run_chunks(first_hit, _chunks(table.shape[1], m, chunk), workers, stop=lambda r: r is not None):
        if res is not None:
            return Characterization(True, tuple(space.points[i] for i in res))
    return Characterization(False, None)
