"""Bitmask helpers for subsets of {1, ..., n}.

Element i of the ground set maps to bit i-1, so a subset is a plain int and
all set algebra is AND/OR/XOR plus bit_count().  The ground set size is
capped at 64 elsewhere so every subset fits a machine word in the compiled
kernels; on the Python side ints are arbitrary precision anyway.

Two enumeration orders are used throughout:

* ``colex``: ascending numeric mask value (colexicographic on the sorted
  element tuples).  This is the canonical order.
* ``lex``: lexicographic on the sorted element tuples.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterator

ORDER_COLEX = "colex"
ORDER_LEX = "lex"


def mask_of(elements) -> int:
    """Pack an iterable of 1-based elements into a bitmask."""
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    """Unpack a bitmask into the sorted tuple of 1-based elements."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def k_subset_masks(n: int, k: int, order: str = ORDER_COLEX) -> Iterator[int]:
    """Yield all k-subset masks of {1..n} in the requested order."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    if order == ORDER_COLEX:
        # Gosper's hack: next mask with the same popcount.
        mask = (1 << k) - 1
        limit = 1 << n
        while mask < limit:
            yield mask
            low = mask & -mask
            ripple = mask + low
            mask = ripple | (((mask ^ ripple) >> 2) // low)
    elif order == ORDER_LEX:
        for combo in combinations(range(1, n + 1), k):
            yield mask_of(combo)
    else:
        raise ValueError(f"unknown subset order {order!r}")


def colex_rank(mask: int) -> int:
    """Rank of a k-subset mask in colex order (0-based)."""
    rank = 0
    i = 1
    while mask:
        low = mask & -mask
        rank += comb(low.bit_length() - 1, i)
        i += 1
        mask ^= low
    return rank
