"""Permutations of {1..n} under the Hamming metric, and permutation codes."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from covrad.errors import DimensionError, DomainError, ResourceError

DEFAULT_PERM_CAP = 8


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}, stored as its 1-indexed image sequence."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n == 0:
            raise DomainError("a permutation needs n >= 1")
        if sorted(images) != list(range(1, n + 1)):
            raise DomainError(f"{list(images)} is not a permutation of 1..{n}")

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Build from a compact digit string such as ``"7123456"`` (n <= 9)."""
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __len__(self) -> int:
        return len(self.images)

    def compose(self, other: Permutation) -> Permutation:
        """Return ``self ∘ other``, i.e. x -> self(other(x))."""
        _check_same_n(self, other)
        return Permutation(tuple(self.images[v - 1] for v in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for x, v in enumerate(self.images, start=1):
            inv[v - 1] = x
        return Permutation(tuple(inv))

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(v) for v in self.images)
        return " ".join(str(v) for v in self.images)


def _check_same_n(g: Permutation, h: Permutation) -> None:
    if g.n != h.n:
        raise DimensionError(f"permutations on different ground sets: n={g.n} vs n={h.n}")


def hamming_distance(g: Permutation, h: Permutation) -> int:
    """Number of positions where ``g`` and ``h`` differ."""
    _check_same_n(g, h)
    return sum(a != b for a, b in zip(g.images, h.images))


def agreement_positions(g: Permutation, h: Permutation) -> frozenset[int]:
    """Positions x (1-indexed) with g(x) == h(x)."""
    _check_same_n(g, h)
    return frozenset(x for x, (a, b) in enumerate(zip(g.images, h.images), start=1) if a == b)


def enumerate_permutations(n: int, cap: int = DEFAULT_PERM_CAP) -> Iterator[Permutation]:
    """Yield all of S_n in lexicographic order of image sequences."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n > cap:
        raise ResourceError(f"n={n} exceeds the permutation enumeration cap {cap} ({math.factorial(n)} points)")
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


class PermutationCode:
    """A nonempty set of distinct permutations of a common {1..n}.

    Members are held in lexicographic order. Duplicates are rejected rather
    than merged so that malformed inputs surface early.
    """

    kind = "permutation"

    def __init__(self, members: Iterable[Permutation | Sequence[int]], n: int | None = None):
        perms = [m if isinstance(m, Permutation) else Permutation(tuple(m)) for m in members]
        if not perms:
            raise DomainError("a code must have at least one member")
        sizes = {p.n for p in perms}
        if n is not None:
            sizes.add(n)
        if len(sizes) != 1:
            raise DimensionError(f"code members have mixed ground-set sizes {sorted(sizes)}")
        if len(set(perms)) != len(perms):
            dup = next(p for p in perms if perms.count(p) > 1)
            raise DomainError(f"duplicate code member {list(dup.images)}")
        self.members: tuple[Permutation, ...] = tuple(sorted(perms))
        self.n: int = sizes.pop()

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PermutationCode) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"PermutationCode(n={self.n}, members=[{', '.join(map(str, self.members))}])"


def frequency_matrix(code: PermutationCode) -> np.ndarray:
    """n x n table whose entry [a-1, b-1] counts members g with g(a) = b."""
    if len(code) == 0:
        raise DomainError("frequency of an empty code is undefined")
    n = code.n
    table = np.zeros((n, n), dtype=np.int64)
    rows = np.arange(n)
    for g in code:
        table[rows, np.asarray(g.images) - 1] += 1
    return table


def max_frequency(code: PermutationCode) -> int:
    """Least k with N_G(a, b) <= k for all a, b."""
    return int(frequency_matrix(code).max())


@dataclass(frozen=True)
class PartialInjection:
    """An injective map from a subset S of {1..n} into {1..n}."""

    n: int
    domain: tuple[int, ...]
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.domain) != len(self.images):
            raise DomainError("domain and images must have the same length")
        pairs = sorted(zip((int(d) for d in self.domain), (int(v) for v in self.images)))
        domain = tuple(p[0] for p in pairs)
        images = tuple(p[1] for p in pairs)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "images", images)
        if len(set(domain)) != len(domain):
            raise DomainError(f"repeated domain element in {list(domain)}")
        if len(set(images)) != len(images):
            raise DomainError(f"images {list(images)} are not pairwise distinct")
        for v in domain + images:
            if not 1 <= v <= self.n:
                raise DomainError(f"value {v} outside 1..{self.n}")

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[int, int]) -> PartialInjection:
        return cls(n, tuple(mapping), tuple(mapping.values()))

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain, self.images))

    def __call__(self, x: int) -> int:
        return self.as_dict()[x]

    @property
    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)


def injections(n: int, domain: Sequence[int]) -> Iterator[PartialInjection]:
    """All injections from ``domain`` into {1..n}."""
    for images in itertools.permutations(range(1, n + 1), len(domain)):
        yield PartialInjection(n, tuple(domain), images)
