"""Injective re-targeting maps behind the local-lemma certificates, with verifiers.

Permutations
    Given an injection f: S -> [n] and a permutation h_in, build a permutation
    h that restricts to f on S. :func:`phi_perm` is the chain-following map
    (always a permutation); :func:`phi_perm_broken` is the single-step rule,
    kept as a negative control because it can repeat values.

Matchings
    Given an x-matching X, a split W of its vertices into singletons and
    pairs, and a perfect matching M_in containing X, :func:`phi_matching`
    builds a perfect matching that contains W: every pair of W is an edge and
    every singleton is matched outside V(X).

The ``verify_*`` functions check the claimed properties exhaustively and
return a :class:`Verdict` listing counterexamples rather than raising.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from covrad.errors import DomainError, ResourceError
from covrad.matchings import (
    PartialMatching,
    PerfectMatching,
    _pairings,
    contains,
    enumerate_perfect_matchings,
    enumerate_x_matchings,
)
from covrad.perms import PartialInjection, Permutation, PermutationCode, enumerate_permutations, injections

PERM_VERIFY_CAP = 7
MATCHING_VERIFY_CAP = 5


# --------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class PermMapInstance:
    f: PartialInjection
    h_in: Permutation

    def __post_init__(self) -> None:
        if self.f.n != self.h_in.n:
            raise DomainError(f"injection on n={self.f.n} but permutation on n={self.h_in.n}")

    @property
    def n(self) -> int:
        return self.h_in.n

    @property
    def T(self) -> frozenset[int]:
        """Positions outside S whose h_in-value lies in f(S)."""
        fs = self.f.image_set
        dom = set(self.f.domain)
        return frozenset(x for x in range(1, self.n + 1) if x not in dom and self.h_in(x) in fs)


@dataclass(frozen=True)
class MapStep:
    x: int
    rule: str  # "S", "T" or "keep"
    chain: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        d = {"x": self.x, "rule": self.rule}
        if self.chain:
            d["chain"] = list(self.chain)
        return d


@dataclass(frozen=True)
class MapOutput:
    """Raw output of a permutation map; ``images`` may contain repeats."""

    images: tuple[int, ...]
    trace: tuple[MapStep, ...]

    @property
    def is_permutation(self) -> bool:
        return sorted(self.images) == list(range(1, len(self.images) + 1))

    def permutation(self) -> Permutation:
        return Permutation(self.images)

    def to_dict(self) -> dict:
        return {
            "output": list(self.images),
            "is_permutation": self.is_permutation,
            "trace": [s.to_dict() for s in self.trace],
        }


def _apply_perm_map(inst: PermMapInstance, broken: bool) -> MapOutput:
    n = inst.n
    h_in = inst.h_in.images
    f = inst.f.as_dict()
    f_inv = {v: k for k, v in f.items()}
    out = [0] * n
    trace = []
    for x in range(1, n + 1):
        if x in f:
            out[x - 1] = f[x]
            trace.append(MapStep(x, "S"))
            continue
        y = h_in[x - 1]
        if y not in f_inv:
            out[x - 1] = y
            trace.append(MapStep(x, "keep"))
            continue
        chain = [y]
        if broken:
            y = h_in[f_inv[y] - 1]
            chain.append(y)
        else:
            # The orbit of rho leaves f(S) within |S| steps because rho is
            # injective on f(S); the cap only guards against a logic error.
            for _ in range(n + 1):
                y = h_in[f_inv[y] - 1]
                chain.append(y)
                if y not in f_inv:
                    break
            else:
                raise RuntimeError(f"rho-iteration did not leave f(S) for x={x}; this is a bug")
        out[x - 1] = y
        trace.append(MapStep(x, "T", tuple(chain)))
    return MapOutput(tuple(out), tuple(trace))


def phi_perm_broken(inst: PermMapInstance) -> MapOutput:
    """Single-step rule: h = f on S, ``h(x) = h_in(f^-1(h_in(x)))`` on T, h = h_in elsewhere."""
    return _apply_perm_map(inst, broken=True)


def phi_perm_trace(inst: PermMapInstance) -> MapOutput:
    """:func:`phi_perm` with the per-position trace kept."""
    return _apply_perm_map(inst, broken=False)


def phi_perm(inst: PermMapInstance) -> Permutation:
    """Chain-following map: on T, iterate ``rho = h_in ∘ f^-1`` until the value leaves f(S)."""
    out = _apply_perm_map(inst, broken=False)
    if not out.is_permutation:
        raise RuntimeError(f"phi_perm produced a non-permutation {list(out.images)}; this is a bug")
    return out.permutation()


@dataclass
class Verdict:
    """Result of an exhaustive check. ``ok`` means no counterexamples."""

    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self, limit: int = 20) -> dict:
        return {
            "check": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "counterexample_count": len(self.counterexamples),
            "counterexamples": [repr(c) for c in self.counterexamples[:limit]],
            **self.details,
        }


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n > cap:
        raise ResourceError(f"n={n} exceeds the verifier cap {cap}")


def _position_sets(n: int, max_size: int) -> Iterator[tuple[int, ...]]:
    for size in range(1, min(max_size, n) + 1):
        yield from combinations(range(1, n + 1), size)


def _instances(n: int, S: Sequence[int] | None, f: PartialInjection | None, max_size: int) -> Iterator[PartialInjection]:
    if f is not None:
        yield f
    elif S is not None:
        yield from injections(n, tuple(S))
    else:
        for dom in _position_sets(n, max_size):
            yield from injections(n, dom)


def verify_phi_perm_outputs(
    n: int, S: Sequence[int] | None = None, f: PartialInjection | None = None, max_size: int = 2, cap: int = PERM_VERIFY_CAP
) -> Verdict:
    """For every injection and every input permutation: the output is a
    permutation and restricts to f on S."""
    _check_cap(n, cap)
    verdict = Verdict("phi-perm-outputs")
    perms = list(enumerate_permutations(n, cap=cap))
    for inj in _instances(n, S, f, max_size):
        fmap = inj.as_dict()
        for h_in in perms:
            out = _apply_perm_map(PermMapInstance(inj, h_in), broken=False)
            verdict.checked += 1
            if not out.is_permutation or any(out.images[x - 1] != v for x, v in fmap.items()):
                verdict.counterexamples.append((inj, h_in, out.images))
    return verdict


def verify_phi_perm_injective(
    n: int,
    S: Sequence[int] | None = None,
    f: PartialInjection | None = None,
    max_size: int = 2,
    broken: bool = False,
    cap: int = PERM_VERIFY_CAP,
) -> Verdict:
    """Check that distinct inputs agreeing with each other on S have distinct outputs.

    Inputs are grouped by their restriction to S; within each group every
    pair of distinct permutations must map to distinct outputs. With
    ``broken=True`` the single-step rule is checked instead, restricted to
    inputs whose output is a permutation.
    """
    _check_cap(n, cap)
    verdict = Verdict("phi-perm-broken-injective" if broken else "phi-perm-injective")
    perms = list(enumerate_permutations(n, cap=cap))
    skipped = 0
    for inj in _instances(n, S, f, max_size):
        groups: dict[tuple, dict[tuple, Permutation]] = defaultdict(dict)
        for h_in in perms:
            out = _apply_perm_map(PermMapInstance(inj, h_in), broken=broken)
            if not out.is_permutation:
                if not broken:
                    verdict.counterexamples.append(("not a permutation", inj, h_in, out.images))
                skipped += 1
                continue
            key = tuple(h_in(x) for x in inj.domain)
            seen = groups[key]
            if out.images in seen:
                verdict.counterexamples.append((inj, seen[out.images], h_in, out.images))
            else:
                seen[out.images] = h_in
            # Pairs compared implicitly: each new input is checked against every earlier one in its class.
            verdict.checked += 1
    if broken:
        verdict.details["non_permutation_outputs_skipped"] = skipped
    return verdict


def _non_neighbour_positions(g_i: Permutation, S: Sequence[int], g_j: Permutation) -> tuple[int, ...]:
    """Positions x outside S with g_j(x) outside g_i(S): the legal elements of S'."""
    gS = {g_i(x) for x in S}
    return tuple(x for x in range(1, g_i.n + 1) if x not in S and g_j(x) not in gS)


def verify_phi_perm_preserves_E(
    n: int,
    code: PermutationCode,
    S: Sequence[int] | None = None,
    f: PartialInjection | None = None,
    max_size: int = 2,
    cap: int = PERM_VERIFY_CAP,
) -> Verdict:
    """Check that the map never creates an agreement outside the dependency neighbourhood.

    For each anchor member g_i, each (S, f), and each h_in agreeing with g_i
    on S: for every member g_j and nonempty S' with S' ∩ S = ∅ and
    g_j(S') ∩ g_i(S) = ∅, if h_in does not agree with g_j on S' then neither
    does phi(h_in).
    """
    _check_cap(n, cap)
    if code.n != n:
        raise DomainError(f"code is on n={code.n}, expected {n}")
    verdict = Verdict("phi-perm-preserves-E")
    perms = list(enumerate_permutations(n, cap=cap))
    members = list(code)
    excluded = 0
    for inj in _instances(n, S, f, max_size):
        dom = inj.domain
        for g_i in members:
            agreeing = [h for h in perms if all(h(x) == g_i(x) for x in dom)]
            legal = {id(g_j): _non_neighbour_positions(g_i, dom, g_j) for g_j in members}
            for h_in in agreeing:
                out = phi_perm(PermMapInstance(inj, h_in))
                for g_j in members:
                    pos = legal[id(g_j)]
                    excluded += (1 << (n - len(dom))) - (1 << len(pos))
                    for size in range(1, len(pos) + 1):
                        for S2 in combinations(pos, size):
                            verdict.checked += 1
                            before = all(h_in(x) == g_j(x) for x in S2)
                            after = all(out(x) == g_j(x) for x in S2)
                            if after and not before:
                                verdict.counterexamples.append((inj, g_i, h_in, g_j, S2, out))
    verdict.details["neighbourhood_sets_excluded"] = excluded
    return verdict


# --------------------------------------------------------------------------
# matchings


@dataclass(frozen=True)
class WPartition:
    """A split of V(X) into ``singletons`` (even count 2q) and ``doubletons`` (r pairs).

    Valid only when ``2q + r <= n``; singletons are kept ascending.
    """

    n: int
    singletons: tuple[int, ...]
    doubletons: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        singles = tuple(sorted(int(v) for v in self.singletons))
        doubles = tuple(sorted((min(a, b), max(a, b)) for a, b in self.doubletons))
        object.__setattr__(self, "singletons", singles)
        object.__setattr__(self, "doubletons", doubles)
        verts = list(singles) + [v for e in doubles for v in e]
        if len(set(verts)) != len(verts):
            raise DomainError(f"W blocks overlap: singletons {list(singles)}, pairs {[list(e) for e in doubles]}")
        if any(a == b for a, b in doubles):
            raise DomainError("a doubleton needs two distinct vertices")
        if len(singles) % 2:
            raise DomainError(f"W needs an even number of singletons, got {len(singles)}")
        if len(singles) + len(doubles) > self.n:
            raise DomainError(
                f"W violates 2q + r <= n: {len(singles)} singletons + {len(doubles)} pairs > n={self.n}"
            )

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.singletons) | {v for e in self.doubletons for v in e}

    @property
    def x(self) -> int:
        return len(self.vertices) // 2


def contained_in(m: PerfectMatching, w: WPartition) -> bool:
    """Every pair of W is an edge of m, and every singleton is matched outside V(W)."""
    partner = m.partner()
    verts = w.vertices
    return all(partner[a - 1] == b for a, b in w.doubletons) and all(partner[v - 1] not in verts for v in w.singletons)


def enumerate_w_partitions(n: int, X: PartialMatching) -> Iterator[WPartition]:
    """All valid W over V(X), ordered by pair count then lexicographically."""
    verts = sorted(X.vertices)
    x = len(X)
    for r in range(max(0, 2 * x - n), x + 1):
        for paired in combinations(verts, 2 * r):
            singles = tuple(v for v in verts if v not in paired)
            for pairs in _pairings(list(paired)):
                yield WPartition(n, singles, tuple(pairs))


@dataclass(frozen=True)
class MatchMapInstance:
    X: PartialMatching
    W: WPartition
    M_in: PerfectMatching

    def __post_init__(self) -> None:
        if not (self.X.n == self.W.n == self.M_in.n):
            raise DomainError("X, W and M_in must live in the same K_2n")
        if self.W.vertices != self.X.vertices:
            raise DomainError("W must partition exactly the vertices of X")
        if not contains(self.M_in, self.X):
            raise DomainError(f"{self.M_in!r} does not contain X={[list(e) for e in self.X.edges]}")


def phi_matching(inst: MatchMapInstance) -> PerfectMatching:
    """Re-target ``M_in`` so that it contains W.

    The edges of M_in outside X, written low-high and sorted by low endpoint,
    give a vertex sequence tau. The i-th smallest singleton is matched to the
    i-th vertex of tau; the untouched tail of tau keeps its original edges,
    and the pairs of W are added as edges.
    """
    x_edges = set(inst.X.edges)
    outside = sorted(e for e in inst.M_in.edges if e not in x_edges)
    tau = [v for e in outside for v in e]
    singles = inst.W.singletons
    new_edges = [(w, tau[i]) for i, w in enumerate(singles)]
    leftover = outside[len(singles) // 2:]
    return PerfectMatching(new_edges + list(inst.W.doubletons) + leftover)


def _matchings_containing(n: int, X: PartialMatching, cap: int) -> list[PerfectMatching]:
    return [m for m in enumerate_perfect_matchings(n, cap=cap) if contains(m, X)]


def _x_matchings(n: int, xs: Iterable[int]) -> Iterator[PartialMatching]:
    for x in xs:
        yield from enumerate_x_matchings(n, x)


def verify_phi_matching_injective(
    n: int,
    X: PartialMatching | None = None,
    W: WPartition | None = None,
    xs: Iterable[int] | None = None,
    cap: int = MATCHING_VERIFY_CAP,
) -> Verdict:
    """Check outputs are perfect matchings containing W, distinct for distinct inputs.

    With ``X`` omitted every x-matching for x in ``xs`` (default 1..n-1) is
    used; with ``W`` omitted every valid W over V(X).
    """
    _check_cap(n, cap)
    verdict = Verdict("phi-matching-injective")
    xs = range(1, n) if xs is None else xs
    instances = 0
    for XX in [X] if X is not None else _x_matchings(n, xs):
        inputs = _matchings_containing(n, XX, cap)
        for WW in [W] if W is not None else enumerate_w_partitions(n, XX):
            instances += 1
            seen: dict[PerfectMatching, PerfectMatching] = {}
            for m in inputs:
                out = phi_matching(MatchMapInstance(XX, WW, m))
                verdict.checked += 1
                if not contained_in(out, WW):
                    verdict.counterexamples.append(("does not contain W", XX, WW, m, out))
                if out in seen:
                    verdict.counterexamples.append(("collision", XX, WW, seen[out], m, out))
                seen[out] = m
    verdict.details["x_w_instances"] = instances
    return verdict


def verify_phi_matching_preserves_E(
    n: int,
    X: PartialMatching | None = None,
    W: WPartition | None = None,
    xs: Iterable[int] | None = None,
    cap: int = MATCHING_VERIFY_CAP,
) -> Verdict:
    """For every nonempty matching X' sharing no vertex with X: X' not in M_in implies X' not in phi(M_in)."""
    _check_cap(n, cap)
    verdict = Verdict("phi-matching-preserves-E")
    xs = range(1, n) if xs is None else xs
    for XX in [X] if X is not None else _x_matchings(n, xs):
        used = XX.vertices
        free = [e for e in combinations(range(1, 2 * n + 1), 2) if e[0] not in used and e[1] not in used]
        others = [
            set(c)
            for size in range(1, n - len(XX) + 1)
            for c in combinations(free, size)
            if len({v for e in c for v in e}) == 2 * size
        ]
        inputs = _matchings_containing(n, XX, cap)
        for WW in [W] if W is not None else enumerate_w_partitions(n, XX):
            for m in inputs:
                out = phi_matching(MatchMapInstance(XX, WW, m))
                before, after = set(m.edges), set(out.edges)
                for X2 in others:
                    verdict.checked += 1
                    if X2 <= after and not X2 <= before:
                        verdict.counterexamples.append((XX, WW, m, sorted(X2), out))
    return verdict
