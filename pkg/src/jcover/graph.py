"""Johnson graphs, their maximal cliques, clique covers, and codes.

The graph J(n, k) has the k-element subsets of {1..n} as vertices, with an
edge whenever two subsets share k-1 elements (equivalently, their indicator
bit strings are at Hamming distance 2).  Every maximal clique falls into one
of two families, each described by a single generating subset:

* kind A, generator S of size k-1: all k-sets extending S by one element;
* kind B, generator S of size k+1: all k-sets obtained by dropping one
  element of S.

Covers are duplicate-free lists of such cliques, and a set of vertices with
pairwise intersections of size at most k-2 (pairwise Hamming distance >= 4)
is a constant-weight code.  Everything here is an immutable value object;
operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .errors import PreconditionError, VerificationError
from .subsets import ORDER_COLEX, elements_of, k_subset_masks, mask_of

MAX_GROUND_SET = 64


@dataclass(frozen=True, order=True)
class GraphParams:
    """Ground-set size n and subset size k of a Johnson graph."""

    n: int
    k: int

    def __post_init__(self):
        if not (0 < self.k < self.n):
            raise PreconditionError(f"need 0 < k < n, got n={self.n}, k={self.k}")
        if self.n < 2 or self.n > MAX_GROUND_SET:
            raise PreconditionError(f"need 2 <= n <= {MAX_GROUND_SET}, got n={self.n}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def complement(self) -> "GraphParams":
        return GraphParams(self.n, self.n - self.k)


@dataclass(frozen=True, order=True)
class KSubset:
    """A vertex of J(n, k): a k-subset of {1..n}, stored as a bitmask."""

    params: GraphParams
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask & ~self.params.full_mask:
            raise PreconditionError(f"mask {self.mask:#x} has bits outside 1..{self.params.n}")
        if self.mask.bit_count() != self.params.k:
            raise PreconditionError(
                f"expected a {self.params.k}-subset, got {self.mask.bit_count()} elements"
            )

    @classmethod
    def from_elements(cls, params: GraphParams, elements: Iterable[int]) -> "KSubset":
        return cls(params, mask_of(elements))

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    def __repr__(self):
        return f"KSubset({{{', '.join(map(str, self.elements))}}} in [{self.params.n}])"


class CliqueKind(Enum):
    """The two families of maximal cliques."""

    A = "A"  # extension clique: every k-set containing a fixed (k-1)-set
    B = "B"  # subset clique: every k-set inside a fixed (k+1)-set


@dataclass(frozen=True, order=True)
class Clique:
    """A maximal-clique descriptor: a kind plus its generating subset."""

    kind: CliqueKind
    generator: int  # bitmask; size k-1 for kind A, k+1 for kind B
    params: GraphParams

    def __post_init__(self):
        if self.generator < 0 or self.generator & ~self.params.full_mask:
            raise PreconditionError("generator has elements outside the ground set")
        size = self.generator.bit_count()
        want = self.params.k - 1 if self.kind is CliqueKind.A else self.params.k + 1
        if size != want:
            raise PreconditionError(
                f"kind {self.kind.value} generator must have {want} elements, got {size}"
            )

    @classmethod
    def from_elements(cls, kind: CliqueKind, elements: Iterable[int], params: GraphParams) -> "Clique":
        return cls(kind, mask_of(elements), params)

    @property
    def generator_elements(self) -> tuple[int, ...]:
        return elements_of(self.generator)

    def __repr__(self):
        gen = ",".join(map(str, self.generator_elements))
        return f"Clique({self.kind.value}{{{gen}}} in J({self.params.n},{self.params.k}))"


@dataclass(frozen=True)
class Cover:
    """An ordered, duplicate-free collection of cliques for one graph."""

    params: GraphParams
    cliques: tuple[Clique, ...]

    def __post_init__(self):
        object.__setattr__(self, "cliques", tuple(self.cliques))
        for c in self.cliques:
            if c.params != self.params:
                raise PreconditionError(f"clique {c!r} does not belong to J{self.params}")
        if len({(c.kind, c.generator) for c in self.cliques}) != len(self.cliques):
            raise PreconditionError("cover contains duplicate cliques")

    def __len__(self):
        return len(self.cliques)


@dataclass(frozen=True)
class Code:
    """A constant-weight code: vertices at pairwise Hamming distance >= 4."""

    params: GraphParams
    words: tuple[KSubset, ...]

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        for w in self.words:
            if w.params != self.params:
                raise PreconditionError(f"word {w!r} does not belong to J{self.params}")
        if not is_code(self.words):
            raise VerificationError("words do not satisfy the pairwise distance bound")

    def __len__(self):
        return len(self.words)

    @property
    def word_masks(self) -> list[int]:
        return [w.mask for w in self.words]


@dataclass(frozen=True)
class CoverStats:
    """Clique counts by kind and per-element generator membership counts."""

    n_a: int
    n_b: int
    a: dict[int, int] = field(compare=False)
    b: dict[int, int] = field(compare=False)


@dataclass(frozen=True)
class CoverCheck:
    """Result of verifying a cover: full coverage flag plus any misses."""

    covered: bool
    uncovered_vertices: tuple[KSubset, ...]


def vertices(params: GraphParams, order: str = ORDER_COLEX) -> list[KSubset]:
    """All vertices of J(n, k) in canonical (or the requested) order."""
    return [KSubset(params, m) for m in k_subset_masks(params.n, params.k, order)]


def adjacent(s: KSubset, t: KSubset) -> bool:
    """True iff the two vertices share exactly k-1 elements."""
    if s.params != t.params:
        raise PreconditionError("vertices belong to different graphs")
    return (s.mask ^ t.mask).bit_count() == 2


def clique_vertex_masks(c: Clique) -> list[int]:
    """Vertex bitmasks of a clique, in ascending mask order."""
    gen = c.generator
    if c.kind is CliqueKind.A:
        others = c.params.full_mask & ~gen
        masks = []
        while others:
            low = others & -others
            masks.append(gen | low)
            others ^= low
        return masks
    rest = gen
    masks = []
    while rest:
        low = rest & -rest
        masks.append(gen ^ low)
        rest ^= low
    return sorted(masks)


def clique_vertices(c: Clique) -> list[KSubset]:
    """Vertices of a clique as KSubsets (n-k+1 of them for kind A, k+1 for B)."""
    return [KSubset(c.params, m) for m in clique_vertex_masks(c)]


def is_maximal(c: Clique) -> bool:
    """Whether the clique is maximal in its graph."""
    n, k = c.params.n, c.params.k
    if c.kind is CliqueKind.A:
        return k < n - 1 or (n == 2 and k == 1)
    return k > 1


def enumerate_maximal_cliques(params: GraphParams) -> list[Clique]:
    """All maximal cliques, kind A first, generators in ascending mask order.

    This fixed order is the canonical clique indexing used by the solvers.
    """
    n, k = params.n, params.k
    out: list[Clique] = []
    if k < n - 1 or (n == 2 and k == 1):
        out.extend(Clique(CliqueKind.A, m, params) for m in k_subset_masks(n, k - 1))
    if k > 1:
        out.extend(Clique(CliqueKind.B, m, params) for m in k_subset_masks(n, k + 1))
    return out


def verify_cover(cover: Cover) -> CoverCheck:
    """Check that the cliques cover every vertex of the graph."""
    params = cover.params
    seen: set[int] = set()
    for c in cover.cliques:
        seen.update(clique_vertex_masks(c))
    missing = [
        KSubset(params, m)
        for m in k_subset_masks(params.n, params.k)
        if m not in seen
    ]
    return CoverCheck(covered=not missing, uncovered_vertices=tuple(missing))


def complement_cover(cover: Cover) -> Cover:
    """Map a cover of J(n, k) to a cover of J(n, n-k) by complementing generators.

    Kind A generators become kind B generators of the complement set and vice
    versa; the map is an involution and preserves cover validity and size.
    """
    params = cover.params
    comp = params.complement()
    full = params.full_mask
    cliques = tuple(
        Clique(
            CliqueKind.B if c.kind is CliqueKind.A else CliqueKind.A,
            full & ~c.generator,
            comp,
        )
        for c in cover.cliques
    )
    return Cover(comp, cliques)


def cover_stats(cover: Cover) -> CoverStats:
    """Count cliques by kind and generator membership per ground element."""
    n = cover.params.n
    a = {j: 0 for j in range(1, n + 1)}
    b = {j: 0 for j in range(1, n + 1)}
    n_a = n_b = 0
    for c in cover.cliques:
        tally = a if c.kind is CliqueKind.A else b
        if c.kind is CliqueKind.A:
            n_a += 1
        else:
            n_b += 1
        for j in c.generator_elements:
            tally[j] += 1
    return CoverStats(n_a=n_a, n_b=n_b, a=a, b=b)


def is_code(words: Iterable[KSubset]) -> bool:
    """True iff all pairs of words intersect in at most k-2 elements."""
    words = list(words)
    if not words:
        return True
    params = words[0].params
    for w in words:
        if w.params != params:
            raise PreconditionError("code words belong to different graphs")
    k = params.k
    masks = [w.mask for w in words]
    if len(set(masks)) != len(masks):
        return False
    if len(masks) <= 2000:
        for i, mi in enumerate(masks):
            for mj in masks[i + 1 :]:
                if (mi & mj).bit_count() > k - 2:
                    return False
        return True
    return _is_code_indexed(masks, k)


def _is_code_indexed(masks: list[int], k: int) -> bool:
    # Conflict index on (k-1)-subsets: two words meet in >= k-1 elements iff
    # they share a (k-1)-subset.  Avoids the quadratic all-pairs scan.
    seen: set[int] = set()
    for m in masks:
        rest = m
        while rest:
            low = rest & -rest
            sub = m ^ low
            if sub in seen:
                return False
            rest ^= low
        rest = m
        while rest:
            low = rest & -rest
            seen.add(m ^ low)
            rest ^= low
    return True
