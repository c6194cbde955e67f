"""Exact solvers, the annealer, and derived searches."""

import random
from itertools import combinations
from math import comb

import pytest

from jcover.bounds import simple_lower_bound
from jcover.errors import PreconditionError
from jcover.graph import (
    GraphParams,
    enumerate_maximal_cliques,
    verify_cover,
)
from jcover.solver import (
    AnnealSchedule,
    Budget,
    MISOutcome,
    SetCoverInstance,
    SolveOutcome,
    SolveStatus,
    anneal_cover,
    covering_number_small,
    exact_max_independent_set,
    exact_set_cover,
    exact_theta,
    greedy_cover,
    johnson_neighbor_masks,
    jk_neighbor_masks,
    outcome_cover,
    symmetric_cover_search,
    theta_instance,
)


def brute_force_set_cover(instance: SetCoverInstance) -> int:
    """Smallest covering subfamily by subset enumeration (oracle scale)."""
    full = (1 << instance.universe_size) - 1
    masks = []
    for s in instance.sets:
        m = 0
        for e in s:
            m |= 1 << e
        masks.append(m)
    for size in range(0, len(masks) + 1):
        for combo in combinations(range(len(masks)), size):
            got = 0
            for i in combo:
                got |= masks[i]
            if got == full:
                return size
    raise AssertionError("unreachable for feasible instances")


def random_instance(rng: random.Random) -> SetCoverInstance:
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


def test_instance_validation():
    SetCoverInstance(3, ((0, 1), (2,)))
    with pytest.raises(PreconditionError):
        SetCoverInstance(3, ((0, 1), (3,)))
    with pytest.raises(PreconditionError):
        SetCoverInstance(3, ((0, 1),))  # element 2 uncoverable


def test_instance_pairing_validation():
    good = SetCoverInstance(2, ((0,), (1,)), ((0, 1),))
    assert good.pairing == ((0, 1),)
    with pytest.raises(PreconditionError):
        SetCoverInstance(2, ((0,), (1,)), ((0, 0),))
    with pytest.raises(PreconditionError):
        SetCoverInstance(3, ((0,), (1,), (2,)), ((0, 1),))  # set 2 unpaired


def test_outcome_invariants():
    with pytest.raises(PreconditionError):
        SolveOutcome(SolveStatus.OPTIMAL, 3, 4, (), 0, 0)
    with pytest.raises(PreconditionError):
        SolveOutcome(SolveStatus.TIMEOUT, 3, 3, (), 0, 0)
    ok = SolveOutcome(SolveStatus.OPTIMAL, 3, 3, (0, 1, 2), 5, 0)
    assert ok.best_value == 3


def test_exact_set_cover_against_oracle():
    rng = random.Random(2024)
    for trial in range(50):
        instance = random_instance(rng)
        outcome = exact_set_cover(instance)
        assert outcome.status is SolveStatus.OPTIMAL
        assert outcome.best_value == brute_force_set_cover(instance), (
            trial,
            instance,
        )
        got = set()
        for i in outcome.selection:
            got.update(instance.sets[i])
        assert got == set(range(instance.universe_size))
        assert len(outcome.selection) == outcome.best_value


def test_exact_set_cover_deterministic():
    rng = random.Random(5)
    instance = random_instance(rng)
    a = exact_set_cover(instance)
    b = exact_set_cover(instance)
    assert a.selection == b.selection
    assert a.nodes_explored == b.nodes_explored


def test_exact_set_cover_events_monotone():
    instance, _ = theta_instance(GraphParams(7, 3))
    outcome = exact_set_cover(instance)
    events = outcome.events
    assert events
    assert all(e[1] >= events[-1][1] for e in events)  # values never worsen
    assert all(e[2] <= events[-1][2] for e in events)  # bounds never weaken
    assert events[-1][1] == outcome.best_value


def test_exact_set_cover_budget_timeout():
    instance, _ = theta_instance(GraphParams(9, 4))
    outcome = exact_set_cover(instance, Budget(max_nodes=500))
    assert outcome.status is SolveStatus.TIMEOUT
    assert outcome.lower_bound <= outcome.best_value
    got = set()
    for i in outcome.selection:
        got.update(instance.sets[i])
    assert got == set(range(instance.universe_size))


def test_exact_set_cover_warm_start_and_hint():
    instance, _ = theta_instance(GraphParams(6, 3))
    optimal = exact_set_cover(instance)
    warm = exact_set_cover(
        instance, initial_selection=optimal.selection, lower_bound_hint=5
    )
    assert warm.status is SolveStatus.OPTIMAL
    assert warm.best_value == optimal.best_value == 6
    with pytest.raises(PreconditionError):
        exact_set_cover(instance, initial_selection=(0,))
    with pytest.raises(PreconditionError):
        exact_set_cover(instance, initial_selection=(10**6,))


THETA_SMALL = {
    (4, 2): 2,
    (5, 2): 3,
    (6, 2): 4,
    (6, 3): 6,
    (7, 3): 9,
    (7, 4): 9,
    (8, 3): 12,
    (8, 4): 14,
}


@pytest.mark.parametrize("n,k", sorted(THETA_SMALL))
def test_exact_theta_small(n, k):
    outcome = exact_theta(GraphParams(n, k))
    assert outcome.status is SolveStatus.OPTIMAL
    assert outcome.best_value == THETA_SMALL[(n, k)]
    cover = outcome_cover(GraphParams(n, k), outcome)
    assert len(cover) == outcome.best_value
    assert verify_cover(cover).covered


def test_exact_theta_complement_side_selection_valid():
    # k > n/2 is solved through the complement map; the reported selection
    # must still index the original graph's canonical clique order.
    params = GraphParams(7, 5)
    outcome = exact_theta(params)
    assert outcome.best_value == 5
    cover = outcome_cover(params, outcome)
    assert cover.params == params
    assert verify_cover(cover).covered


def test_exact_theta_warm_start_path():
    params = GraphParams(7, 3)
    outcome = exact_theta(params, warm_start=True)
    assert outcome.status is SolveStatus.OPTIMAL
    assert outcome.best_value == 9


def test_exact_theta_rejects_unknown_tier():
    with pytest.raises(PreconditionError):
        exact_theta(GraphParams(6, 3), tier="leisurely")


def test_greedy_cover_verifies():
    for n, k in [(6, 3), (8, 4), (9, 3)]:
        cover = greedy_cover(GraphParams(n, k))
        assert verify_cover(cover).covered
        assert len(cover) >= simple_lower_bound(GraphParams(n, k))


def test_outcome_cover_roundtrip():
    params = GraphParams(6, 2)
    outcome = exact_theta(params)
    cover = outcome_cover(params, outcome)
    cliques = enumerate_maximal_cliques(params)
    assert tuple(cliques.index(c) for c in cover.cliques) == outcome.selection


def test_anneal_reaches_known_optimum_small():
    for n, k, want in [(6, 3, 6), (7, 3, 9), (8, 4, 14)]:
        out = anneal_cover(GraphParams(n, k), seed=0)
        assert verify_cover(out.cover).covered
        assert out.size == want


def test_anneal_deterministic_per_seed():
    params = GraphParams(7, 3)
    a = anneal_cover(params, seed=3)
    b = anneal_cover(params, seed=3)
    assert [
        (c.kind, c.generator) for c in a.cover.cliques
    ] == [(c.kind, c.generator) for c in b.cover.cliques]


def test_anneal_thread_count_does_not_change_result():
    params = GraphParams(8, 4)
    schedule = AnnealSchedule(steps=20_000, restarts=4)
    base = anneal_cover(params, schedule, seed=1, threads=1)
    for threads in (2, 3, 4, 7):
        same = anneal_cover(params, schedule, seed=1, threads=threads)
        assert same.size == base.size
        assert [
            (c.kind, c.generator) for c in same.cover.cliques
        ] == [(c.kind, c.generator) for c in base.cover.cliques]


def test_anneal_validates_arguments():
    with pytest.raises(PreconditionError):
        anneal_cover(GraphParams(6, 3), threads=0)
    with pytest.raises(PreconditionError):
        anneal_cover(GraphParams(6, 3), AnnealSchedule(cooling=1.5))
    with pytest.raises(PreconditionError):
        anneal_cover(GraphParams(6, 3), AnnealSchedule(t0=0.1, t_min=0.5))


def brute_force_mis(neighbor_masks) -> int:
    m = len(neighbor_masks)
    best = 0
    for size in range(m, 0, -1):
        if size <= best:
            break
        for combo in combinations(range(m), size):
            ok = True
            for i, v in enumerate(combo):
                for u in combo[i + 1 :]:
                    if neighbor_masks[v] >> u & 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return size
    return best


def test_mis_against_brute_force_random():
    rng = random.Random(99)
    for _ in range(40):
        m = rng.randint(1, 12)
        masks = [0] * m
        for i in range(m):
            for j in range(i + 1, m):
                if rng.random() < 0.4:
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        out = exact_max_independent_set(masks)
        assert out.status is SolveStatus.OPTIMAL
        assert out.size == brute_force_mis(masks)
        for i, v in enumerate(out.witness):
            for u in out.witness[i + 1 :]:
                assert not masks[v] >> u & 1


def test_mis_known_johnson_values():
    out = exact_max_independent_set(johnson_neighbor_masks(GraphParams(6, 2)))
    assert out.size == 3
    out = exact_max_independent_set(johnson_neighbor_masks(GraphParams(8, 4)))
    assert out.size == 14


def test_mis_empty_and_size_gate():
    empty = exact_max_independent_set([])
    assert isinstance(empty, MISOutcome)
    assert empty.size == 0
    with pytest.raises(PreconditionError):
        exact_max_independent_set([0] * 401)
    with pytest.raises(PreconditionError):
        johnson_neighbor_masks(GraphParams(12, 6))


def test_jk_neighbor_masks_structure():
    params = GraphParams(4, 2)
    masks = list(jk_neighbor_masks(params))
    m = comb(4, 2)
    assert len(masks) == 2 * m
    # Complement pairs are the only disjoint pairs for n=2k, so each vertex
    # gains exactly one cross edge.
    for i in range(m):
        cross = masks[i] >> m
        assert cross.bit_count() == 1


def test_symmetric_cover_small():
    out = symmetric_cover_search(2)
    assert out.status is SolveStatus.OPTIMAL
    assert out.best_value == 2
    out = symmetric_cover_search(3)
    assert out.status is SolveStatus.OPTIMAL
    assert out.best_value == 6
    with pytest.raises(PreconditionError):
        symmetric_cover_search(1)


def test_symmetric_selection_is_closed_under_complement():
    out = symmetric_cover_search(3)
    params = GraphParams(6, 3)
    cliques = enumerate_maximal_cliques(params)
    chosen = {(cliques[i].kind.value, cliques[i].generator) for i in out.selection}
    full = params.full_mask
    for kind, gen in chosen:
        partner = ("B" if kind == "A" else "A", full & ~gen)
        assert partner in chosen
    cover = outcome_cover(params, out)
    assert verify_cover(cover).covered


def test_covering_number_small_known():
    assert covering_number_small(4, 3, 2).best_value == 3
    assert covering_number_small(7, 3, 2).best_value == 7
    assert covering_number_small(5, 4, 3).best_value == 4
    with pytest.raises(PreconditionError):
        covering_number_small(3, 4, 2)
    with pytest.raises(PreconditionError):
        covering_number_small(40, 10, 5)


def brute_force_covering_number(v, s, t):
    t_sets = list(combinations(range(1, v + 1), t))
    blocks = list(combinations(range(1, v + 1), s))
    block_masks = []
    for b in blocks:
        m = 0
        for i, ts in enumerate(t_sets):
            if set(ts) <= set(b):
                m |= 1 << i
        block_masks.append(m)
    full = (1 << len(t_sets)) - 1
    for size in range(1, len(blocks) + 1):
        for combo in combinations(block_masks, size):
            got = 0
            for m in combo:
                got |= m
            if got == full:
                return size
    raise AssertionError


def test_covering_number_matches_brute_force():
    for v, s, t in [(4, 3, 2), (5, 3, 2), (5, 4, 2), (6, 3, 2)]:
        assert covering_number_small(v, s, t).best_value == brute_force_covering_number(
            v, s, t
        )
