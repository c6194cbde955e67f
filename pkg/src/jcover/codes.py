"""Distance-4 codes via greedy scans, and the doubled-graph correspondence.

JK(n,k) consists of two copies of J(n,k) with extra edges joining disjoint
subsets across the copies.  Independent sets in JK(2k, k-1) are exactly the
pairwise-disjoint collections of maximum cliques in J(2k, k), so a greedy
independent-set pass over a fixed vertex order (a lexicode) can certify
values of the clique covering number.  If the single-copy greedy output is
pairwise intersecting, both copies can be used at once, which is how the
large half-sized graphs are handled.

The scan itself is streaming: candidates are generated in order and checked
against an index of (w-1)-subsets of the accepted words, so the full vertex
list is never materialized.  Enormous parameters (k=16) are delegated to
the compiled backend and gated behind an explicit heavy flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

from . import _backend
from .errors import BudgetExceededError, PreconditionError, VerificationError
from .graph import (
    Clique,
    CliqueKind,
    Cover,
    GraphParams,
    KSubset,
    adjacent,
    verify_cover,
)
from .subsets import ORDER_COLEX, ORDER_LEX, k_subset_masks

# Largest candidate-stream length the pure scan accepts without the heavy flag.
LEXICODE_BUDGET = 3_000_000


@dataclass(frozen=True, order=True)
class JKVertex:
    """A vertex of JK(n,k): a subset together with its copy index."""

    subset: KSubset
    side: int

    def __post_init__(self):
        if self.side not in (0, 1):
            raise PreconditionError(f"side must be 0 or 1, got {self.side}")


def jk_adjacent(u: JKVertex, v: JKVertex) -> bool:
    """Same copy: Johnson adjacency; across copies: subset disjointness."""
    if u.subset.params != v.subset.params:
        raise PreconditionError("vertices belong to different graphs")
    if u.side == v.side:
        return adjacent(u.subset, v.subset)
    return u.subset.mask & v.subset.mask == 0


def j_to_jk_isomorphism(s: KSubset) -> JKVertex:
    """The bijection J(2k,k) -> JK(2k-1,k-1) splitting on the last element."""
    n, k = s.params.n, s.params.k
    if n != 2 * k:
        raise PreconditionError(f"the map needs n = 2k, got ({n},{k})")
    target = GraphParams(n - 1, k - 1)
    top = 1 << (n - 1)
    if s.mask & top:
        return JKVertex(KSubset(target, s.mask & ~top), 0)
    return JKVertex(KSubset(target, s.params.full_mask & ~s.mask & ~top), 1)


def greedy_independent_set(
    vertex_order: Iterable, adjacency: Callable[[object, object], bool]
) -> list:
    """Accept each vertex not adjacent to any previously accepted one."""
    accepted: list = []
    for v in vertex_order:
        if all(not adjacency(v, u) for u in accepted):
            accepted.append(v)
    return accepted


@dataclass(frozen=True)
class Lexicode:
    """The greedy distance-4 code over J(2k, k-1) in a fixed order."""

    params: GraphParams
    words: tuple[KSubset, ...]
    order_convention: str

    @property
    def k(self) -> int:
        return self.params.n // 2

    def __len__(self):
        return len(self.words)

    @property
    def word_masks(self) -> list[int]:
        return [w.mask for w in self.words]


def _lexicode_scan_py(n: int, w: int, order: str) -> list[int]:
    """Greedy distance-4 scan over all w-subset masks of [n], in order."""
    accepted: list[int] = []
    index: set[int] = set()
    for mask in k_subset_masks(n, w, order):
        rest = mask
        hit = False
        while rest:
            low = rest & -rest
            if mask ^ low in index:
                hit = True
                break
            rest ^= low
        if hit:
            continue
        accepted.append(mask)
        rest = mask
        while rest:
            low = rest & -rest
            index.add(mask ^ low)
            rest ^= low
    return accepted


def lexicode_masks(k: int, order: str = ORDER_COLEX, heavy: bool = False) -> Sequence[int]:
    """Accepted word masks of the greedy scan over J(2k, k-1)."""
    if k < 2:
        raise PreconditionError(f"need k >= 2, got {k}")
    if order not in (ORDER_COLEX, ORDER_LEX):
        raise PreconditionError(f"unknown order convention {order!r}")
    n, w = 2 * k, k - 1
    stream = comb(n, w)
    if stream > LEXICODE_BUDGET and not heavy:
        raise BudgetExceededError(
            f"scanning {stream} candidates needs the heavy flag"
        )
    backend_scan = _backend.get("lexicode_scan")
    if backend_scan is not None and n <= 32:
        return backend_scan(n, w, order)
    return _lexicode_scan_py(n, w, order)


def lexicode(k: int, order: str = ORDER_COLEX, heavy: bool = False) -> Lexicode:
    """Run the greedy scan and wrap the words as a value object."""
    params = GraphParams(2 * k, k - 1)
    masks = lexicode_masks(k, order, heavy)
    words = tuple(KSubset(params, int(m)) for m in masks)
    return Lexicode(params=params, words=words, order_convention=order)


def pairwise_intersecting(words: Lexicode | Sequence[KSubset]) -> bool:
    """Whether every pair of words shares an element.

    A pair is disjoint exactly when one word sits inside the complement of
    the other, so each word probes the w-subsets of its complement against
    the word index instead of scanning all pairs.
    """
    if isinstance(words, Lexicode):
        seq = words.words
    else:
        seq = list(words)
    if not seq:
        return True
    params = seq[0].params
    n, w = params.n, params.k
    masks = set(s.mask for s in seq)
    for s in seq:
        complement = params.full_mask & ~s.mask
        if complement.bit_count() < w:
            continue
        for other in k_subset_masks_of(complement, w):
            if other in masks:
                return False
    return True


def k_subset_masks_of(pool_mask: int, size: int) -> Iterator[int]:
    """All size-subsets of the set bits of pool_mask, as masks."""
    bits = []
    rest = pool_mask
    while rest:
        low = rest & -rest
        bits.append(low)
        rest ^= low
    for combo in combinations(bits, size):
        mask = 0
        for b in combo:
            mask |= b
        yield mask


def theta_cover_from_lexicode(k: int, order: str = ORDER_COLEX) -> Cover:
    """Lift a half-sized lexicode to a disjoint maximum-clique cover of J(2k,k).

    Requires the scan to reach catalan(k)/2 words, all pairwise
    intersecting; word S then contributes the extension clique on S and the
    subset clique on its complement, giving catalan(k) disjoint cliques.
    """
    from .bounds import catalan

    code = lexicode(k, order)
    want = catalan(k) // 2
    if len(code) != want:
        raise VerificationError(
            f"scan produced {len(code)} words, the lift needs {want}"
        )
    if not pairwise_intersecting(code):
        raise VerificationError("scan words are not pairwise intersecting")
    params = GraphParams(2 * k, k)
    full = params.full_mask
    cliques: list[Clique] = []
    for word in code.words:
        cliques.append(Clique(CliqueKind.A, word.mask, params))
    for word in code.words:
        cliques.append(Clique(CliqueKind.B, full & ~word.mask, params))
    cover = Cover(params, tuple(cliques))
    check = verify_cover(cover)
    if not check.covered:
        raise VerificationError(
            f"lifted cliques miss {len(check.uncovered_vertices)} vertices"
        )
    return cover


def jk_independence_check(vertices: Sequence[JKVertex]) -> bool:
    """Whether no two of the listed doubled-graph vertices are adjacent."""
    n = len(vertices)
    for i in range(n):
        for j in range(i + 1, n):
            if jk_adjacent(vertices[i], vertices[j]):
                return False
    return True


def jk_two_halves_order(params: GraphParams, order: str = ORDER_COLEX) -> Iterator[JKVertex]:
    """All of copy 0 in the given order, then all of copy 1."""
    for side in (0, 1):
        for mask in k_subset_masks(params.n, params.k, order):
            yield JKVertex(KSubset(params, mask), side)


def two_halves_greedy_masks(k: int, order: str = ORDER_COLEX) -> tuple[list[int], list[int]]:
    """Greedy independent set over JK(2k,k-1) in two-halves order, as masks.

    Returns the accepted masks per copy.  Uses the same conflict index as
    the lexicode scan for the within-copy checks and complement probing for
    the cross-copy disjointness checks.
    """
    n, w = 2 * k, k - 1
    full = (1 << n) - 1
    accepted0 = _lexicode_scan_py(n, w, order)
    index0 = set(accepted0)
    accepted1: list[int] = []
    conflict1: set[int] = set()
    for mask in k_subset_masks(n, w, order):
        rest = mask
        hit = False
        while rest:
            low = rest & -rest
            if mask ^ low in conflict1:
                hit = True
                break
            rest ^= low
        if not hit:
            complement = full & ~mask
            for other in k_subset_masks_of(complement, w):
                if other in index0:
                    hit = True
                    break
        if hit:
            continue
        accepted1.append(mask)
        rest = mask
        while rest:
            low = rest & -rest
            conflict1.add(mask ^ low)
            rest ^= low
    return accepted0, accepted1


def two_halves_agreement(k: int, order: str = ORDER_COLEX) -> bool:
    """Whether the doubled-graph greedy picks the same words in both copies."""
    accepted0, accepted1 = two_halves_greedy_masks(k, order)
    return accepted0 == accepted1


def heavy_cover_count(k: int, order: str = ORDER_COLEX) -> tuple[int, int]:
    """Count-based verification of the lifted cover for very large k.

    Runs the scan, then walks every vertex of every lifted clique, ranking
    it into a bitset; a repeated rank (an overlap) is an error.  Returns
    (number of words, number of distinct vertices covered); the cover is
    verified when words * 2 * (k+1) vertices equal binomial(2k,k).
    """
    masks = lexicode_masks(k, order, heavy=True)
    counter = _backend.get("cover_count_check")
    if counter is not None and 2 * k <= 32:
        covered = counter(2 * k, k, masks)
    else:
        covered = _cover_count_check_py(2 * k, k, masks)
    return len(masks), covered


def _cover_count_check_py(n: int, k: int, word_masks: Sequence[int]) -> int:
    """Pure fallback for the counting check; slow at scale but exact."""
    from .subsets import colex_rank

    full = (1 << n) - 1
    seen = bytearray((comb(n, k) + 7) // 8)
    covered = 0
    for mask in word_masks:
        mask = int(mask)
        vertex_masks = []
        others = full & ~mask
        rest = others
        while rest:
            low = rest & -rest
            vertex_masks.append(mask | low)
            rest ^= low
        comp = full & ~mask
        rest = comp
        while rest:
            low = rest & -rest
            vertex_masks.append(comp ^ low)
            rest ^= low
        for vm in vertex_masks:
            r = colex_rank(vm)
            byte, bit = r >> 3, 1 << (r & 7)
            if seen[byte] & bit:
                raise VerificationError("lifted cliques overlap")
            seen[byte] |= bit
            covered += 1
    return covered
