"""Acceptance gate: one test per acceptance criterion.

Each test exercises its criterion end to end at the stated tolerance and
records a PASS/FAIL line; the lines are echoed in the terminal summary.
Heavy variants (the k=16 scan, the self-complementary k=5 search) carry the
heavy marker and run only with JCOVER_HEAVY=1.
"""

import json
import random
import time
from importlib import resources
from itertools import combinations
from math import comb

import pytest

from jcover.bounds import (
    brute_force_triangle_count,
    catalan,
    catalan_tightness_test,
    ceil_fraction,
    clique_number,
    coverable_upper_bound,
    goodman_triangle_bound,
    is_prime,
    johnson_alpha_upper,
    known_theta,
    known_theta_bounds,
    simple_lower_bound,
)
from jcover.codes import (
    heavy_cover_count,
    j_to_jk_isomorphism,
    jk_adjacent,
    lexicode,
    pairwise_intersecting,
    theta_cover_from_lexicode,
)
from jcover.constructions import (
    BlockRole,
    cliques_from_code,
    code_from_cover_simple,
    code_from_cover_two_element,
    cover_from_blocks,
    cover_k2,
    cover_k3,
    cover_recursive,
    find_conversion_element,
)
from jcover.files import cover_from_dict, load_blocks
from jcover.graph import (
    CliqueKind,
    Code,
    GraphParams,
    KSubset,
    adjacent,
    clique_vertex_masks,
    cover_stats,
    verify_cover,
    vertices,
)
from jcover.solver import (
    Budget,
    SetCoverInstance,
    SolveStatus,
    anneal_cover,
    covering_number_small,
    exact_max_independent_set,
    exact_set_cover,
    exact_theta,
    johnson_neighbor_masks,
    symmetric_cover_search,
)

RESULTS: list[str] = []


def _record(number, label: str, failures: list[str], elapsed: float, budget: float):
    status = "PASS" if not failures and elapsed <= budget else "FAIL"
    RESULTS.append(
        f"criterion {number}: {status} ({label}; {elapsed:.1f}s of {budget:.0f}s)"
    )
    print(RESULTS[-1])
    assert not failures, f"criterion {number}: " + "; ".join(failures)
    assert elapsed <= budget, f"criterion {number}: {elapsed:.1f}s over {budget:.0f}s"


def _fixture_cover(name: str):
    text = resources.files("jcover.fixtures").joinpath(f"covers/{name}.json").read_text()
    return cover_from_dict(json.loads(text))


FIXTURE_SIZES = {
    "j8_4": 14,
    "j9_4": 25,
    "j10_4": 40,
    "j10_5": 46,
    "j11_4": 56,
    "j12_6": 132,
}


def test_criterion_01_published_covers_verify():
    start = time.monotonic()
    failures = []
    for name, size in FIXTURE_SIZES.items():
        cover = _fixture_cover(name)
        if len(cover) != size:
            failures.append(f"{name}: size {len(cover)} != {size}")
        if not verify_cover(cover).covered:
            failures.append(f"{name}: does not cover its graph")
    _record(1, "six stored covers verify at the published sizes",
            failures, time.monotonic() - start, 5.0)


def test_criterion_02_construction_sizes():
    start = time.monotonic()
    failures = []
    for n in range(3, 51):
        cover = cover_k2(n)
        if len(cover) != n - 2 or not verify_cover(cover).covered:
            failures.append(f"k2 cover broken for n={n}")
    for n in range(4, 31):
        cover = cover_k3(n)
        if len(cover) != (n - 1) ** 2 // 4 or not verify_cover(cover).covered:
            failures.append(f"k3 cover broken for n={n}")
    for n in range(2, 15):
        for k in range(1, n):
            cover = cover_recursive(GraphParams(n, k))
            if len(cover) != comb(n - 2, k - 1):
                failures.append(f"recursive size off at ({n},{k})")
            if not verify_cover(cover).covered:
                failures.append(f"recursive cover broken at ({n},{k})")
    _record(2, "closed-form and recursive covers have their stated sizes",
            failures, time.monotonic() - start, 30.0)


def test_criterion_03_exact_solver_fast_entries():
    start = time.monotonic()
    failures = []
    for n in range(2, 9):
        for k in range(1, n):
            params = GraphParams(n, k)
            outcome = exact_theta(params, tier="fast")
            want = known_theta(params)
            if outcome.status is not SolveStatus.OPTIMAL:
                failures.append(f"({n},{k}): not optimal")
            if outcome.best_value != want:
                failures.append(f"({n},{k}): got {outcome.best_value}, table {want}")
    _record(3, "exact covering numbers match the stored table for n <= 8",
            failures, time.monotonic() - start, 600.0)


def test_criterion_03_extended_intervals():
    # Reduced search budgets; the warm start and the counting bound already
    # pin the interval endpoints the criterion asks for.
    start = time.monotonic()
    failures = []
    nine = exact_theta(GraphParams(9, 4), budget=Budget(2_000_000, 60.0), tier="extended")
    if not nine.lower_bound <= 25 <= nine.best_value or nine.best_value != 25:
        failures.append(
            f"(9,4): interval [{nine.lower_bound}, {nine.best_value}] misses 25"
        )
    ten = exact_theta(GraphParams(10, 5), budget=Budget(2_000_000, 60.0), tier="extended")
    if ten.best_value != 46:
        failures.append(f"(10,5): upper bound {ten.best_value} != 46")
    if ten.lower_bound < 42:
        failures.append(f"(10,5): lower bound {ten.lower_bound} < 42")
    _record(3, "budgeted solves bracket (9,4) at 25 and (10,5) in [42,46]",
            failures, time.monotonic() - start, 600.0)


def test_criterion_04_annealer_reaches_table_values():
    start = time.monotonic()
    failures = []
    seed = 0
    for n in range(2, 11):
        for k in range(1, n):
            params = GraphParams(n, k)
            want = known_theta(params)
            if not isinstance(want, int):
                continue
            out = anneal_cover(params, seed=seed)
            if not verify_cover(out.cover).covered:
                failures.append(f"({n},{k}): annealed cover invalid")
            if out.size > want:
                failures.append(f"({n},{k}): annealed {out.size} > table {want}")
    _record(4, "default schedule reaches every exact table value for n <= 10",
            failures, time.monotonic() - start, 600.0)


def test_criterion_05_lexicode_covers():
    start = time.monotonic()
    failures = []
    for k, words, cover_size in [(2, 1, 2), (4, 7, 14), (8, 715, 1430)]:
        code = lexicode(k)
        if len(code) != words:
            failures.append(f"k={k}: scan size {len(code)} != {words}")
        if not pairwise_intersecting(code):
            failures.append(f"k={k}: words not pairwise intersecting")
        cover = theta_cover_from_lexicode(k)
        if len(cover) != cover_size:
            failures.append(f"k={k}: cover size {len(cover)} != {cover_size}")
        if not verify_cover(cover).covered:
            failures.append(f"k={k}: lifted cover invalid")
        bounds = known_theta_bounds(GraphParams(2 * k, k))
        if bounds is not None and not bounds[0] <= len(cover) <= bounds[1]:
            failures.append(f"k={k}: size outside stored bounds {bounds}")
    _record(5, "greedy scans lift to disjoint covers of sizes 2/14/1430",
            failures, time.monotonic() - start, 120.0)


@pytest.mark.heavy
def test_criterion_05_heavy_k16_counting_check():
    start = time.monotonic()
    failures = []
    words, covered = heavy_cover_count(16)
    if words != catalan(16) // 2:
        failures.append(f"scan size {words} != {catalan(16) // 2}")
    if 2 * words != 35357670:
        failures.append(f"clique count {2 * words} != 35357670")
    if covered != comb(32, 16):
        failures.append(f"covered {covered} != {comb(32, 16)}")
    _record("5 (heavy)", "k=16 lift covers binomial(32,16) vertices disjointly",
            failures, time.monotonic() - start, 3600.0)


COVERABLE_ROWS = [
    (8, 8, 55, 56),
    (9, 12, 83, 84),
    (9, 13, 83, 84),
    (10, 17, 117, 120),
    (10, 18, 117, 120),
    (11, 23, 163, 165),
    (11, 24, 163, 165),
]


def test_criterion_06_bound_identities():
    start = time.monotonic()
    failures = []
    for n, n_a, want_ceil, total in COVERABLE_ROWS:
        got = ceil_fraction(coverable_upper_bound(n, n_a))
        if got != want_ceil:
            failures.append(f"coverable({n},{n_a}) ceil {got} != {want_ceil}")
        if not got < total == comb(n, 3):
            failures.append(f"coverable({n},{n_a}) does not fall below binomial(n,3)")
    rng = random.Random(6021)
    for _ in range(100):
        n = rng.randint(3, 12)
        pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
        edges = {p for p in pairs if rng.random() < rng.random()}
        if goodman_triangle_bound(n, len(edges)) > brute_force_triangle_count(n, edges):
            failures.append(f"triangle bound exceeds the count on n={n}, m={len(edges)}")
    if johnson_alpha_upper(GraphParams(8, 4)) != 14:
        failures.append("independence bound for (8,4) is not 14")
    for k in range(2, 31):
        if catalan_tightness_test(k) != is_prime(k + 1):
            failures.append(f"tightness test wrong at k={k}")
    for n in range(2, 9):
        for k in range(1, n):
            params = GraphParams(n, k)
            alpha = exact_max_independent_set(johnson_neighbor_masks(params))
            if alpha.status is not SolveStatus.OPTIMAL:
                failures.append(f"alpha({n},{k}) not solved")
            if alpha.size * clique_number(params) > comb(n, k):
                failures.append(f"clique-coclique bound violated at ({n},{k})")
            lo, _ = known_theta_bounds(params)
            if alpha.size > lo:
                failures.append(f"alpha {alpha.size} exceeds theta lower bound at ({n},{k})")
    _record(6, "counting, triangle, independence, and primality identities hold",
            failures, time.monotonic() - start, 120.0)


def test_criterion_07_cover_code_conversions():
    start = time.monotonic()
    failures = []
    small = _fixture_cover("j8_4")
    j = find_conversion_element(small)
    if j != 6:
        failures.append(f"conversion element {j} != 6")
    code = code_from_cover_simple(small, j)
    if len(code) != 14:
        failures.append(f"converted code has {len(code)} words, wanted 14")
    large = _fixture_cover("j12_6")
    two = code_from_cover_two_element(large, 10, 9)
    if len(two) != 132:
        failures.append(f"two-element conversion gave {len(two)} words, wanted 132")
    stats = cover_stats(large)
    for element in range(1, 13):
        want = 15 if element in (9, 10) else 30
        if stats.a[element] != want:
            failures.append(f"a[{element}] = {stats.a[element]}, wanted {want}")
    _record(7, "stored covers convert to codes of 14 and 132 words",
            failures, time.monotonic() - start, 10.0)


def test_criterion_08_independence_numbers():
    start = time.monotonic()
    failures = []
    small = exact_max_independent_set(johnson_neighbor_masks(GraphParams(6, 2)))
    if small.size != 3:
        failures.append(f"alpha(J(6,2)) = {small.size} != 3")
    if not small.size < known_theta(GraphParams(6, 2)):
        failures.append("alpha(J(6,2)) does not fall below the covering number 4")
    half = exact_max_independent_set(johnson_neighbor_masks(GraphParams(8, 4)))
    if half.size != 14:
        failures.append(f"alpha(J(8,4)) = {half.size} != 14")
    _record(8, "independence numbers alpha(J(6,2))=3 < theta and alpha(J(8,4))=14",
            failures, time.monotonic() - start, 60.0)


def _random_cover_instance(rng: random.Random) -> SetCoverInstance:
    universe = rng.randint(3, 9)
    n_sets = rng.randint(3, 12)
    sets = []
    for _ in range(n_sets - 1):
        size = rng.randint(1, universe)
        sets.append(tuple(sorted(rng.sample(range(universe), size))))
    covered = set()
    for s in sets:
        covered.update(s)
    rest = tuple(sorted(set(range(universe)) - covered))
    sets.append(rest if rest else tuple(sorted(rng.sample(range(universe), 2))))
    return SetCoverInstance(universe, tuple(sets))


def _oracle_set_cover(instance: SetCoverInstance) -> int:
    full = (1 << instance.universe_size) - 1
    masks = []
    for s in instance.sets:
        m = 0
        for e in s:
            m |= 1 << e
        masks.append(m)
    for size in range(0, len(masks) + 1):
        for combo in combinations(masks, size):
            got = 0
            for m in combo:
                got |= m
            if got == full:
                return size
    raise AssertionError("infeasible oracle instance")


def test_criterion_09_solver_and_structure_oracles():
    start = time.monotonic()
    failures = []
    for k in (2, 3, 4):
        params = GraphParams(2 * k, k)
        vs = vertices(params)
        images = [j_to_jk_isomorphism(v) for v in vs]
        if len({(im.subset.mask, im.side) for im in images}) != len(vs):
            failures.append(f"k={k}: the doubled-graph map is not injective")
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                if adjacent(vs[i], vs[j]) != jk_adjacent(images[i], images[j]):
                    failures.append(f"k={k}: adjacency broken at pair ({i},{j})")
                    break
    rng = random.Random(900)
    for trial in range(50):
        instance = _random_cover_instance(rng)
        outcome = exact_set_cover(instance)
        want = _oracle_set_cover(instance)
        if outcome.status is not SolveStatus.OPTIMAL or outcome.best_value != want:
            failures.append(f"oracle mismatch on trial {trial}: {outcome.best_value} != {want}")
    for trial in range(25):
        n = rng.randint(5, 12)
        k = rng.randint(2, n - 2)
        params = GraphParams(n, k)
        pool = list(k_subsets_sample(rng, params, 40))
        words: list[KSubset] = []
        for w in pool:
            if all((w.mask & u.mask).bit_count() <= k - 2 for u in words):
                words.append(w)
        if not words:
            continue
        code = Code(params, tuple(words))
        j = rng.randint(1, n)
        seen: set[int] = set()
        for c in cliques_from_code(code, j):
            masks = clique_vertex_masks(c)
            if seen.intersection(masks):
                failures.append(f"overlapping cliques from a code on ({n},{k})")
                break
            seen.update(masks)
    _record(9, "solver, isomorphism, and disjointness agree with brute-force oracles",
            failures, time.monotonic() - start, 120.0)


def k_subsets_sample(rng: random.Random, params: GraphParams, count: int):
    seen = set()
    count = min(count, comb(params.n, params.k))
    while len(seen) < count:
        mask = 0
        for e in rng.sample(range(1, params.n + 1), params.k):
            mask |= 1 << (e - 1)
        if mask not in seen:
            seen.add(mask)
            yield KSubset(params, mask)


def _oracle_covering_number(v: int, s: int, t: int) -> int:
    t_sets = list(combinations(range(1, v + 1), t))
    block_masks = []
    for block in combinations(range(1, v + 1), s):
        m = 0
        for i, ts in enumerate(t_sets):
            if set(ts) <= set(block):
                m |= 1 << i
        block_masks.append(m)
    full = (1 << len(t_sets)) - 1
    for size in range(1, len(block_masks) + 1):
        for combo in combinations(block_masks, size):
            got = 0
            for m in combo:
                got |= m
            if got == full:
                return size
    raise AssertionError


def test_criterion_10_design_ingestion_and_small_coverings():
    start = time.monotonic()
    failures = []
    text = resources.files("jcover.fixtures").joinpath("designs/steiner_12_6_5.txt")
    v, s, blocks = load_blocks(str(text))
    if (v, s, len(blocks)) != (12, 6, 132):
        failures.append(f"design file reads as {(v, s, len(blocks))}, wanted (12, 6, 132)")
    cover = cover_from_blocks(GraphParams(12, 5), blocks, BlockRole.COVERING_DESIGN)
    if len(cover) != 132:
        failures.append(f"design cover has {len(cover)} cliques, wanted 132")
    if not all(c.kind is CliqueKind.B for c in cover.cliques):
        failures.append("design cover is not all subset cliques")
    if not verify_cover(cover).covered:
        failures.append("design cover does not cover J(12,5)")
    for v, s, t, want in [(4, 3, 2, 3), (7, 3, 2, 7)]:
        got = covering_number_small(v, s, t)
        if got.status is not SolveStatus.OPTIMAL or got.best_value != want:
            failures.append(f"covering({v},{s},{t}) = {got.best_value} != {want}")
        oracle = _oracle_covering_number(v, s, t)
        if got.best_value != oracle:
            failures.append(f"covering({v},{s},{t}) disagrees with brute force {oracle}")
    sym = symmetric_cover_search(3)
    if sym.status is not SolveStatus.OPTIMAL or sym.best_value != 6:
        failures.append(f"self-complementary cover of J(6,3) sized {sym.best_value} != 6")
    _record(10, "block designs ingest as covers; small covering numbers are exact",
            failures, time.monotonic() - start, 120.0)


@pytest.mark.heavy
def test_criterion_10_heavy_symmetric_k5():
    start = time.monotonic()
    failures = []
    out = symmetric_cover_search(5, budget=Budget(2_000_000_000, 10800.0))
    if out.best_value != 48:
        failures.append(f"self-complementary cover of J(10,5) sized {out.best_value} != 48")
    _record("10 (heavy)", "minimum self-complementary cover of J(10,5) has 48 cliques",
            failures, time.monotonic() - start, 10800.0)
