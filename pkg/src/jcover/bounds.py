"""Closed-form bounds and identities for clique covers of Johnson graphs.

Lower bounds on the clique covering number come from counting (vertices
divided by the clique number) and, for J(n,3), from a triangle-counting
argument built on Goodman's bound.  Upper bounds come from the recursive
cover construction and from ingested covering designs.  Independence
numbers are bounded through the iterated Johnson bound, which also yields
the primality test for when the Catalan number is attained.

Everything is exact integer or Fraction arithmetic; several comparisons in
the J(n,3) analysis sit within 1 of a binomial coefficient, so floating
point is never used.

Tabulated values (the theta table for n <= 15 and a few cited independence
bounds) are loaded from JSON files under fixtures/, not hardcoded here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import ceil, comb, isqrt

from .errors import PreconditionError
from .graph import GraphParams

MAX_CATALAN_K = 33  # largest k with binomial(2k,k)/(k+1) < 2^63


def clique_number(params: GraphParams) -> int:
    """omega(J(n,k)) = max(n-k+1, k+1), the larger of the two clique kinds."""
    return max(params.n - params.k + 1, params.k + 1)


def catalan(k: int) -> int:
    """The k'th Catalan number, binomial(2k,k)/(k+1)."""
    if k < 0:
        raise PreconditionError(f"need k >= 0, got {k}")
    if k > MAX_CATALAN_K:
        raise PreconditionError(f"catalan({k}) does not fit 64 bits")
    return comb(2 * k, k) // (k + 1)


def simple_lower_bound(params: GraphParams) -> int:
    """Counting bound: at least binomial(n,k)/omega cliques are needed."""
    return -(-comb(params.n, params.k) // clique_number(params))


def recursive_upper_bound(params: GraphParams) -> int:
    """binomial(n-2, k-1), the size of the recursive cover."""
    return comb(params.n - 2, params.k - 1)


def goodman_triangle_bound(n_vertices: int, m_edges: int) -> Fraction:
    """Lower bound (4m/3n)(m - n^2/4) on the triangle count of an (n,m)-graph."""
    if n_vertices < 1:
        raise PreconditionError(f"need at least one vertex, got {n_vertices}")
    if not 0 <= m_edges <= comb(n_vertices, 2):
        raise PreconditionError(
            f"need 0 <= m <= {comb(n_vertices, 2)}, got m={m_edges}"
        )
    m, n = Fraction(m_edges), Fraction(n_vertices)
    return (4 * m) / (3 * n) * (m - n * n / 4)


def max_type_a_count_k3(n: int) -> int:
    """floor((n-1)^2/4), the two-part split cover size for J(n,3)."""
    return (n - 1) ** 2 // 4


def coverable_upper_bound(n: int, n_a: int) -> Fraction:
    """Upper bound c(n_a) on how many J(n,3) vertices a split cover reaches.

    A candidate cover one short of the split construction is assumed to hold
    n_a extension cliques and n_b = floor((n-1)^2/4) - 1 - n_a subset
    cliques; extension cliques miss at least the Goodman triangle count of
    the complementary edge set and subset cliques add at most 4 each.
    """
    if n <= 3:
        raise PreconditionError(f"need n > 3, got {n}")
    cap = max_type_a_count_k3(n) - 1
    if not 0 <= n_a <= cap:
        raise PreconditionError(f"need 0 <= n_a <= {cap}, got {n_a}")
    n_b = cap - n_a
    m = n * (n - 1) // 2 - n_a
    return comb(n, 3) - goodman_triangle_bound(n, m) + 4 * n_b


def johnson_alpha_upper(params: GraphParams) -> int:
    """Iterated first Johnson bound on the independence number.

    alpha(J(n,k)) <= floor(n/k * alpha(J(n-1,k-1))), applied k-2 times down
    to the known value alpha(J(n-k+2,2)) = floor((n-k+2)/2).
    """
    n, k = params.n, params.k
    if k < 2:
        raise PreconditionError("the bound chain needs k >= 2")
    base_n = n - k + 2
    value = base_n // 2
    for i in range(3, k + 1):
        ni = base_n + i - 2
        value = (ni * value) // i
    return value


@lru_cache(maxsize=None)
def _alpha_refined(n: int, k: int) -> int:
    k = min(k, n - k)
    if k <= 1:
        return 1
    if k == 2:
        return n // 2
    first = (n * _alpha_refined(n - 1, k - 1)) // k
    second = (n * _alpha_refined(n - 1, k)) // (n - k)
    return min(first, second)


def johnson_alpha_upper_refined(params: GraphParams) -> int:
    """Both Johnson bounds iterated jointly; never weaker than the first alone.

    Kept separate from catalan_tightness_test, which is defined in terms of
    the plain first-bound chain.
    """
    return _alpha_refined(params.n, params.k)


def catalan_tightness_test(k: int) -> bool:
    """Whether the iterated Johnson bound on alpha(J(2k,k)) rounds nowhere.

    Equivalent to the bound equalling the k'th Catalan number, which in turn
    happens exactly when k+1 is prime.  Reports only the recursion outcome;
    sharper published values can still rule out alpha = C_k when this holds.
    """
    if k < 2:
        raise PreconditionError("need k >= 2")
    return johnson_alpha_upper(GraphParams(2 * k, k)) == catalan(k)


def is_prime(m: int) -> bool:
    """Trial-division primality check for small m."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    for d in range(3, isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True


def theta_closed_form(params: GraphParams) -> int | None:
    """Exact covering number where a closed form is known (k~ <= 3).

    After normalizing k to min(k, n-k): one clique suffices for k=1; n-2 for
    k=2; and for k=3 the split construction gives floor((n-1)^2/4) when
    n > 5, with small cases 1 (n=4) and 3 (n=5).  Returns None otherwise.
    """
    n = params.n
    k = min(params.k, n - params.k)
    if k == 0:
        return None
    if k == 1:
        return 1
    if k == 2:
        return n - 2
    if k == 3:
        if n == 4:
            return 1
        if n == 5:
            return 3
        return max_type_a_count_k3(n)
    return None


@lru_cache(maxsize=1)
def _theta_table() -> dict[int, list[int | tuple[int, int]]]:
    raw = json.loads(
        resources.files("jcover.fixtures").joinpath("table1.json").read_text()
    )
    table: dict[int, list[int | tuple[int, int]]] = {}
    for key, row in raw["rows"].items():
        table[int(key)] = [
            (entry[0], entry[1]) if isinstance(entry, list) else entry
            for entry in row
        ]
    return table


def known_theta(params: GraphParams) -> int | tuple[int, int] | None:
    """Tabulated covering number: an exact value or a (lo, hi) interval.

    The table is stored for k <= n-k only in the sense that lookup applies
    the complement symmetry; rows cover n <= 15 as published.
    """
    row = _theta_table().get(params.n)
    if row is None:
        return None
    return row[params.k - 1]


def known_theta_bounds(params: GraphParams) -> tuple[int, int] | None:
    """Tabulated covering number as a (lo, hi) pair, exact values doubled up."""
    value = known_theta(params)
    if value is None:
        return None
    if isinstance(value, tuple):
        return value
    return (value, value)


@lru_cache(maxsize=1)
def cited_alpha_upper() -> dict[tuple[int, int], int]:
    """Published independence-number upper bounds beyond the Johnson chain."""
    raw = json.loads(
        resources.files("jcover.fixtures").joinpath("alpha_citations.json").read_text()
    )
    out: dict[tuple[int, int], int] = {}
    for name, value in raw["alpha_upper"].items():
        inner = name[name.index("(") + 1 : name.index(")")]
        n, k = (int(part) for part in inner.split(","))
        out[(n, k)] = value
    return out


def steiner_divisibility(v: int, s: int, t: int, lam: int = 1) -> bool:
    """Necessary divisibility conditions for a t-(v,s,lam) design to exist."""
    if not (v >= s >= t >= 1) or lam < 1:
        raise PreconditionError(f"need v >= s >= t >= 1 and lam >= 1, got {(v, s, t, lam)}")
    return all(
        lam * comb(v - i, t - i) % comb(s - i, t - i) == 0 for i in range(t)
    )


def turan_to_covering(v: int, m: int, n: int) -> tuple[int, int, int]:
    """Parameters (v, v-n, v-m) of the covering problem dual to T(v, m, n)."""
    if not v >= m >= n >= 1:
        raise PreconditionError(f"need v >= m >= n >= 1, got {(v, m, n)}")
    return (v, v - n, v - m)


@dataclass(frozen=True)
class BoundsReport:
    """Every bound this package can compute for one parameter pair."""

    params: GraphParams
    omega: int
    lower_simple: int
    upper_recursive: int
    alpha_upper_johnson: int
    catalan: int | None
    catalan_tight: bool | None
    closed_form: int | None
    known_theta: int | tuple[int, int] | None
    design_upper: int | None

    @property
    def best_lower(self) -> int:
        lo = self.lower_simple
        if self.closed_form is not None:
            lo = max(lo, self.closed_form)
        known = self.known_theta
        if isinstance(known, tuple):
            lo = max(lo, known[0])
        elif known is not None:
            lo = max(lo, known)
        return lo

    @property
    def best_upper(self) -> int:
        hi = self.upper_recursive
        if self.design_upper is not None:
            hi = min(hi, self.design_upper)
        if self.closed_form is not None:
            hi = min(hi, self.closed_form)
        known = self.known_theta
        if isinstance(known, tuple):
            hi = min(hi, known[1])
        elif known is not None:
            hi = min(hi, known)
        return hi


def bounds_report(params: GraphParams, design_upper: int | None = None) -> BoundsReport:
    """Assemble all applicable bounds for J(n,k) into one report."""
    n, k = params.n, params.k
    alpha_up = johnson_alpha_upper(params) if k >= 2 else 1
    is_half = n == 2 * k
    return BoundsReport(
        params=params,
        omega=clique_number(params),
        lower_simple=simple_lower_bound(params),
        upper_recursive=recursive_upper_bound(params),
        alpha_upper_johnson=alpha_up,
        catalan=catalan(k) if is_half else None,
        catalan_tight=catalan_tightness_test(k) if is_half and k >= 2 else None,
        closed_form=theta_closed_form(params),
        known_theta=known_theta(params),
        design_upper=design_upper,
    )


def brute_force_triangle_count(n_vertices: int, edges: set[tuple[int, int]]) -> int:
    """Count triangles by scanning all vertex triples (test oracle scale)."""
    count = 0
    for a in range(1, n_vertices + 1):
        for b in range(a + 1, n_vertices + 1):
            if (a, b) not in edges:
                continue
            for c in range(b + 1, n_vertices + 1):
                if (a, c) in edges and (b, c) in edges:
                    count += 1
    return count


def ceil_fraction(value: Fraction) -> int:
    """Smallest integer >= value."""
    return ceil(value)
