"""Explicit clique-cover constructions and cover/code conversions.

Closed-form covers exist for k <= 3: the complete graph (k=1), the n-2
mixed cover (k=2), and the two-part split cover (k=3).  A recursion over
the smallest ground element covers every (n,k) with binomial(n-2,k-1)
cliques.  Distance-4 codes give pairwise-disjoint clique collections, and
under the right conditions the process can be reversed to read a code off
a cover.  Finally, block designs (covering designs and Turan systems)
translate directly into single-kind covers.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

from .errors import PreconditionError, VerificationError
from .graph import (
    Clique,
    CliqueKind,
    Code,
    Cover,
    GraphParams,
    KSubset,
    complement_cover,
    is_code,
    verify_cover,
)
from .subsets import mask_of


def cover_k1(n: int) -> Cover:
    """The one-clique cover of the complete graph J(n,1)."""
    params = GraphParams(n, 1)
    return Cover(params, (Clique(CliqueKind.A, 0, params),))


def cover_k2(n: int) -> Cover:
    """The minimum cover of J(n,2): n-3 extension cliques plus one triple."""
    if n <= 2:
        raise PreconditionError(f"need n > 2, got {n}")
    params = GraphParams(n, 2)
    cliques = [Clique(CliqueKind.A, 1 << (j - 1), params) for j in range(1, n - 2)]
    cliques.append(Clique.from_elements(CliqueKind.B, (n - 2, n - 1, n), params))
    return Cover(params, tuple(cliques))


def two_part_split(n: int) -> list[int]:
    """Generator masks of all pairs inside {1..floor(n/2)} or its complement."""
    half = n // 2
    masks = []
    for b in range(2, half + 1):
        for a in range(1, b):
            masks.append((1 << (a - 1)) | (1 << (b - 1)))
    for b in range(half + 2, n + 1):
        for a in range(half + 1, b):
            masks.append((1 << (a - 1)) | (1 << (b - 1)))
    return masks


def cover_k3(n: int) -> Cover:
    """The split cover of J(n,3): extension cliques on within-part pairs.

    Any 3-set has two elements in one part, so the floor((n-1)^2/4) cliques
    cover everything; for n > 7 this size is also optimal.
    """
    if n <= 3:
        raise PreconditionError(f"need n > 3, got {n}")
    params = GraphParams(n, 3)
    return Cover(
        params, tuple(Clique(CliqueKind.A, m, params) for m in two_part_split(n))
    )


def cover_recursive(params: GraphParams) -> Cover:
    """Cover J(n,k) by recursion on the smallest element.

    Vertices avoiding element 1 form a J(n-1,k) on {2..n}; vertices holding
    it reduce to a J(n-1,k-1) once 1 is dropped.  Lifting covers of both
    (shifting ground sets up by one, prepending 1 to the second group's
    generators) yields binomial(n-2,k-1) cliques in total, anchored at the
    one-clique covers for k=1 and k=n-1.
    """
    n, k = params.n, params.k
    if k == 1:
        return cover_k1(n)
    if k == n - 1:
        return complement_cover(cover_k1(n))
    sub_same = cover_recursive(GraphParams(n - 1, k))
    sub_drop = cover_recursive(GraphParams(n - 1, k - 1))
    cliques = [
        Clique(c.kind, c.generator << 1, params) for c in sub_same.cliques
    ]
    cliques.extend(
        Clique(c.kind, (c.generator << 1) | 1, params) for c in sub_drop.cliques
    )
    return Cover(params, tuple(cliques))


def cliques_from_code(code: Code, j: int) -> list[Clique]:
    """One maximal clique per codeword, pairwise disjoint.

    A word S maps to the extension clique on S minus j when j is in S, and
    to the subset clique on S plus j otherwise; distance >= 4 between words
    forces the resulting cliques apart.
    """
    params = code.params
    if not 1 <= j <= params.n:
        raise PreconditionError(f"element {j} outside 1..{params.n}")
    bit = 1 << (j - 1)
    out = []
    for word in code.words:
        if word.mask & bit:
            out.append(Clique(CliqueKind.A, word.mask & ~bit, params))
        else:
            out.append(Clique(CliqueKind.B, word.mask | bit, params))
    return out


class BlockRole(Enum):
    """How a block file should be read: as which design family."""

    COVERING_DESIGN = "covering"  # (k+1)-blocks; every k-set inside some block
    TURAN_SYSTEM = "turan"  # (k-1)-blocks; every k-set contains some block


def cover_from_blocks(
    params: GraphParams, blocks: Sequence[Sequence[int]], role: BlockRole
) -> Cover:
    """Build the single-kind cover induced by a block design.

    Covering-design blocks become subset cliques, Turan-system blocks become
    extension cliques.  The defining property is validated by running the
    cover verifier; a failure reports a witness vertex.
    """
    k = params.k
    want = k + 1 if role is BlockRole.COVERING_DESIGN else k - 1
    kind = CliqueKind.B if role is BlockRole.COVERING_DESIGN else CliqueKind.A
    cliques = []
    for block in blocks:
        mask = mask_of(block)
        if mask.bit_count() != want:
            raise PreconditionError(
                f"{role.value} blocks for k={k} must have {want} elements, "
                f"got {sorted(block)}"
            )
        cliques.append(Clique(kind, mask, params))
    cover = Cover(params, tuple(cliques))
    check = verify_cover(cover)
    if not check.covered:
        witness = check.uncovered_vertices[0]
        raise VerificationError(
            f"blocks do not satisfy the {role.value} property: "
            f"{set(witness.elements)} is left uncovered"
        )
    return cover


def code_from_cover_simple(cover: Cover, j: int) -> Code:
    """Invert the code-to-cliques map using a single element j.

    Works when j avoids every extension generator and lies in every subset
    generator; each clique then contributes the one word it came from.
    """
    params = cover.params
    if params.k == 1:
        raise PreconditionError(
            "k=1 covers carry no generator structure to convert"
        )
    if not 1 <= j <= params.n:
        raise PreconditionError(f"element {j} outside 1..{params.n}")
    bit = 1 << (j - 1)
    words = []
    for c in cover.cliques:
        if c.kind is CliqueKind.A:
            if c.generator & bit:
                raise PreconditionError(
                    f"element {j} appears in extension generator "
                    f"{set(c.generator_elements)}"
                )
            words.append(KSubset(params, c.generator | bit))
        else:
            if not c.generator & bit:
                raise PreconditionError(
                    f"element {j} missing from subset generator "
                    f"{set(c.generator_elements)}"
                )
            words.append(KSubset(params, c.generator & ~bit))
    return Code(params, tuple(words))


def code_from_cover_two_element(cover: Cover, j1: int, j2: int) -> Code:
    """Invert a cover to a code using a primary and a fallback element.

    Extension cliques gain j1 when possible, else j2; subset cliques drop j1
    when possible, else j2.  The rule can fail for general covers, so the
    resulting word set is checked and a verification error raised when it is
    not a code.
    """
    params = cover.params
    n = params.n
    if j1 == j2 or not (1 <= j1 <= n and 1 <= j2 <= n):
        raise PreconditionError(f"need distinct elements in 1..{n}, got {j1}, {j2}")
    b1, b2 = 1 << (j1 - 1), 1 << (j2 - 1)
    words = []
    for c in cover.cliques:
        gen = c.generator
        if c.kind is CliqueKind.A:
            if not gen & b1:
                words.append(KSubset(params, gen | b1))
            elif not gen & b2:
                words.append(KSubset(params, gen | b2))
            else:
                raise PreconditionError(
                    f"extension generator {set(c.generator_elements)} "
                    f"contains both {j1} and {j2}"
                )
        else:
            if gen & b1:
                words.append(KSubset(params, gen & ~b1))
            elif gen & b2:
                words.append(KSubset(params, gen & ~b2))
            else:
                raise PreconditionError(
                    f"subset generator {set(c.generator_elements)} "
                    f"contains neither {j1} nor {j2}"
                )
    if len({w.mask for w in words}) != len(words) or not is_code(words):
        raise VerificationError(
            f"the ({j1},{j2}) rule produced words violating the distance bound"
        )
    return Code(params, tuple(words))


def find_conversion_element(cover: Cover) -> int | None:
    """Smallest element usable by code_from_cover_simple, if any."""
    params = cover.params
    if params.k == 1:
        return None
    a_union = 0
    b_intersection = params.full_mask
    for c in cover.cliques:
        if c.kind is CliqueKind.A:
            a_union |= c.generator
        else:
            b_intersection &= c.generator
    eligible = b_intersection & ~a_union
    if not eligible:
        return None
    return (eligible & -eligible).bit_length()
