"""Monte Carlo estimates of agreement-event probabilities.

An event fixes an anchor (a permutation g with a position set S, or a perfect
matching M with an x-matching X inside it) and asks whether every point of a
uniformly random m-set agrees with the anchor there: g(x) = h(x) on S, or
X contained in each matching.

Seeding: a run with ``seed`` and ``samples`` is cut into blocks of
``BLOCK`` draws. Block ``b`` uses ``numpy.random.default_rng`` seeded with
the ``b``-th child of ``SeedSequence(seed)``. Hit counts of blocks are added,
so the result does not depend on how blocks are distributed over workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from covrad.combinatorics import binomial, factorial
from covrad.errors import DomainError
from covrad.matchings import PartialMatching, PerfectMatching, beta, beta_x, contains
from covrad.perms import Permutation
from covrad.radius import MatchingSpace, PermutationSpace

BLOCK = 1 << 16


@dataclass(frozen=True)
class EventSpec:
    """``structure`` is "perm" or "matching"; ``size`` is s or x.

    ``anchor`` defaults to the identity (resp. {1,2},{3,4},...), and
    ``positions`` to {1..s} (resp. the first x edges of the anchor).
    """

    structure: str
    n: int
    m: int
    size: int
    anchor: Permutation | PerfectMatching | None = None
    positions: tuple | None = None

    def __post_init__(self) -> None:
        if self.structure not in ("perm", "matching"):
            raise DomainError(f"structure must be 'perm' or 'matching', got {self.structure!r}")
        if self.n < 1 or self.m < 1:
            raise DomainError("n and m must be >= 1")
        if not 1 <= self.size <= self.n:
            raise DomainError(f"agreement size must satisfy 1 <= size <= n={self.n}, got {self.size}")
        if self.structure == "perm":
            anchor = Permutation.identity(self.n) if self.anchor is None else self.anchor
            positions = tuple(sorted(self.positions or range(1, self.size + 1)))
            if anchor.n != self.n or len(positions) != self.size or not set(positions) <= set(range(1, self.n + 1)):
                raise DomainError("anchor/positions do not match n and s")
        else:
            anchor = PerfectMatching.standard(self.n) if self.anchor is None else self.anchor
            positions = tuple(sorted(self.positions or anchor.edges[: self.size]))
            if anchor.n != self.n or len(positions) != self.size or not set(positions) <= set(anchor.edges):
                raise DomainError("X must consist of size edges of the anchor matching")
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "positions", positions)

    def space(self):
        return PermutationSpace(self.n) if self.structure == "perm" else MatchingSpace(self.n)

    def good_mask(self, space) -> np.ndarray:
        """Boolean array over the space's points: does the point agree with the anchor?"""
        if self.structure == "perm":
            g = self.anchor
            return np.array([all(p(x) == g(x) for x in self.positions) for p in space.points], dtype=bool)
        X = PartialMatching(self.n, self.positions)
        return np.array([contains(p, X) for p in space.points], dtype=bool)


def analytic_event_probability(spec: EventSpec) -> Fraction:
    """C(agreeing points, m) / C(all points, m)."""
    if spec.structure == "perm":
        good, total = factorial(spec.n - spec.size), factorial(spec.n)
    else:
        good, total = beta_x(spec.n, spec.size), beta(spec.n)
    if spec.m > total:
        raise DomainError(f"m={spec.m} exceeds the space size {total}")
    return Fraction(binomial(good, spec.m), binomial(total, spec.m))


def sample_m_sets(rng: np.random.Generator, size: int, m: int, count: int) -> np.ndarray:
    """``count`` uniform m-subsets of range(size), each row sorted ascending.

    Rows are drawn as ordered tuples with replacement and redrawn when they
    repeat an index; conditioned on distinctness every ordered tuple is
    equally likely, so each m-subset is too.
    """
    if not 1 <= m <= size:
        raise DomainError(f"cannot draw {m} distinct points from {size}")
    if m == 1:
        return rng.integers(0, size, size=(count, 1))
    # Rejection is cheap while m is small relative to size; otherwise permute.
    if m * m > size:
        return np.sort(np.array([rng.choice(size, m, replace=False) for _ in range(count)]), axis=1)
    out = np.empty((count, m), dtype=np.int64)
    filled = 0
    while filled < count:
        need = count - filled
        draw = np.sort(rng.integers(0, size, size=(need + need // 4 + 8, m)), axis=1)
        ok = draw[np.all(np.diff(draw, axis=1) != 0, axis=1)][:need]
        out[filled : filled + len(ok)] = ok
        filled += len(ok)
    return out


@dataclass(frozen=True)
class EstimateReport:
    samples: int
    hits: int
    analytic: Fraction
    seed: int

    @property
    def estimate(self) -> Fraction:
        return Fraction(self.hits, self.samples)

    @property
    def sigma(self) -> float:
        p = float(self.analytic)
        return math.sqrt(p * (1 - p) / self.samples)

    @property
    def z_score(self) -> float:
        """Normal-approximation z of the hit count; 0 when the analytic value is 0 or 1."""
        p = float(self.analytic)
        if p in (0.0, 1.0):
            return 0.0 if self.hits == round(p * self.samples) else math.inf
        return (self.hits - self.samples * p) / math.sqrt(self.samples * p * (1 - p))

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "hits": self.hits,
            "estimate": float(self.estimate),
            "analytic": str(self.analytic),
            "analytic_float": float(self.analytic),
            "z_score": self.z_score,
            "seed": self.seed,
        }


def _block_hits(good: np.ndarray, m: int, seed_seq: np.random.SeedSequence, count: int) -> int:
    rng = np.random.default_rng(seed_seq)
    sets = sample_m_sets(rng, len(good), m, count)
    return int(np.all(good[sets], axis=1).sum())


def estimate_event_probability(spec: EventSpec, samples: int, seed: int = 0, workers: int = 1) -> EstimateReport:
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    analytic = analytic_event_probability(spec)
    space = spec.space()
    good = spec.good_mask(space)
    nblocks = -(-samples // BLOCK)
    children = np.random.SeedSequence(seed).spawn(nblocks)
    sizes = [min(BLOCK, samples - b * BLOCK) for b in range(nblocks)]
    jobs = list(zip(children, sizes))
    if workers <= 1:
        hits = sum(_block_hits(good, spec.m, ss, c) for ss, c in jobs)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda job: _block_hits(good, spec.m, *job), jobs))
    return EstimateReport(samples=samples, hits=hits, analytic=analytic, seed=seed)
