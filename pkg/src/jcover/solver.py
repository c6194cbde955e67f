"""Exact and heuristic search for minimum clique covers.

The exact solver is a set-cover branch-and-bound: it branches on an
uncovered element with the fewest remaining covering sets, excludes each
tried set from the branches after it, propagates forced choices, and prunes
with the larger of a greedy disjoint-element packing bound and a counting
bound.  Minimality proofs come from an iterative target search (is there a
cover of size at most t?), so interrupted runs still return valid
intervals.

The heuristic side is simulated annealing over subsets of maximal cliques
with an uncovered-vertex penalty, biased move proposals, and geometric
cooling across a fixed low-temperature band.  A small exact
maximum-independent-set solver (branch-and-bound with a greedy coloring
bound) supplies independence numbers for cross-checks, and thin wrappers
cover the self-complementary cover search and small covering numbers.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from itertools import combinations
from math import comb
from typing import Sequence

from . import _backend
from .bounds import clique_number, simple_lower_bound
from .errors import PreconditionError
from .graph import (
    Clique,
    CliqueKind,
    Cover,
    GraphParams,
    clique_vertex_masks,
    enumerate_maximal_cliques,
)
from .rng import XorShift64
from .subsets import k_subset_masks

# ---------------------------------------------------------------------------
# instances, budgets, outcomes


@dataclass(frozen=True)
class Budget:
    """Node and wall-clock limits for an exact search."""

    max_nodes: int | None = None
    max_seconds: float | None = None


FAST_BUDGET = Budget(max_nodes=30_000_000, max_seconds=480.0)
EXTENDED_BUDGET = Budget(max_nodes=300_000_000, max_seconds=2400.0)
HEAVY_BUDGET = Budget()

TIER_BUDGETS = {
    "fast": FAST_BUDGET,
    "extended": EXTENDED_BUDGET,
    "heavy": HEAVY_BUDGET,
}


@dataclass(frozen=True)
class SetCoverInstance:
    """A set-cover problem over universe elements 0..universe_size-1.

    The optional pairing forces sets to be chosen in tandem; it must pair
    every set exactly once (which is what the self-complementary search
    produces), so the paired problem stays an unweighted cover problem over
    merged sets.
    """

    universe_size: int
    sets: tuple[tuple[int, ...], ...]
    pairing: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(tuple(s) for s in self.sets))
        object.__setattr__(
            self, "pairing", tuple((int(i), int(j)) for i, j in self.pairing)
        )
        seen = 0
        for i, s in enumerate(self.sets):
            for e in s:
                if not 0 <= e < self.universe_size:
                    raise PreconditionError(
                        f"set {i} holds element {e} outside the universe"
                    )
                seen |= 1 << e
        if self.universe_size and seen != (1 << self.universe_size) - 1:
            missing = [e for e in range(self.universe_size) if not seen >> e & 1]
            raise PreconditionError(
                f"infeasible: elements {missing[:5]} appear in no set"
            )
        if self.pairing:
            touched = set()
            for i, j in self.pairing:
                if i == j or not (0 <= i < len(self.sets) and 0 <= j < len(self.sets)):
                    raise PreconditionError(f"bad pair ({i}, {j})")
                touched.update((i, j))
            if len(touched) != 2 * len(self.pairing) or len(touched) != len(self.sets):
                raise PreconditionError("pairing must pair every set exactly once")


class SolveStatus(Enum):
    OPTIMAL = "optimal"
    BOUNDS_ONLY = "bounds_only"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class SolveOutcome:
    """Result of an exact search: bounds, witness selection, bookkeeping."""

    status: SolveStatus
    best_value: int
    lower_bound: int
    selection: tuple[int, ...]
    nodes_explored: int
    seed: int
    events: tuple[tuple[float, int, int], ...] = ()

    def __post_init__(self):
        if self.lower_bound > self.best_value:
            raise PreconditionError("lower bound exceeds best value")
        if (self.status is SolveStatus.OPTIMAL) != (
            self.lower_bound == self.best_value
        ):
            raise PreconditionError("optimal status must match closed bounds")


# ---------------------------------------------------------------------------
# the branch-and-bound core


class _BudgetOut(Exception):
    pass


class _Searcher:
    """Depth-first target search over one set-cover instance in bitmask form."""

    def __init__(self, set_masks: list[int], universe_size: int, budget: Budget):
        self.set_masks = set_masks
        self.n_sets = len(set_masks)
        self.universe_size = universe_size
        self.full = (1 << universe_size) - 1
        covers = [0] * universe_size
        for i, mask in enumerate(set_masks):
            rest = mask
            while rest:
                low = rest & -rest
                covers[low.bit_length() - 1] |= 1 << i
                rest ^= low
        self.covers = covers
        self.max_set_size = max((m.bit_count() for m in set_masks), default=1)
        self.budget = budget
        self.deadline = (
            time.monotonic() + budget.max_seconds if budget.max_seconds else None
        )
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.budget.max_nodes is not None and self.nodes > self.budget.max_nodes:
            raise _BudgetOut
        if self.deadline is not None and self.nodes % 4096 == 0:
            if time.monotonic() > self.deadline:
                raise _BudgetOut

    def _scan(self, uncovered: int, banned: int) -> tuple[int, int, int]:
        """One pass over uncovered elements.

        Returns (packing bound, branch element, its available-set mask); the
        branch element has the fewest available covering sets.  A bound of
        universe_size+1 flags an uncoverable element.
        """
        covers = self.covers
        packed_union = 0
        packing = 0
        best_count = 1 << 30
        best_elem = -1
        best_avail = 0
        rest = uncovered
        while rest:
            low = rest & -rest
            rest ^= low
            avail = covers[low.bit_length() - 1] & ~banned
            if avail == 0:
                return self.universe_size + 1, -1, 0
            if avail & packed_union == 0:
                packing += 1
                packed_union |= avail
            count = avail.bit_count()
            if count < best_count:
                best_count = count
                best_elem = low.bit_length() - 1
                best_avail = avail
        return packing, best_elem, best_avail

    def root_lower_bound(self) -> int:
        if self.full == 0:
            return 0
        packing, _, _ = self._scan(self.full, 0)
        counting = -(-self.universe_size // self.max_set_size)
        return max(packing, counting)

    def find(self, target: int) -> list[int] | None:
        """A cover of size <= target, or None when provably none exists."""
        if self.full == 0:
            return []
        chosen: list[int] = []
        result = self._dfs(self.full, 0, target, chosen)
        return result

    def _dfs(self, uncovered: int, banned: int, remaining: int, chosen: list[int]):
        self._tick()
        while True:
            if uncovered == 0:
                return list(chosen)
            if remaining == 0:
                return None
            packing, elem, avail = self._scan(uncovered, banned)
            if packing > remaining:
                return None
            if -(-uncovered.bit_count() // self.max_set_size) > remaining:
                return None
            if avail & (avail - 1) == 0:
                # forced: a single set can still cover the branch element
                idx = avail.bit_length() - 1
                chosen.append(idx)
                uncovered &= ~self.set_masks[idx]
                remaining -= 1
                continue
            break
        candidates = []
        rest = avail
        while rest:
            low = rest & -rest
            rest ^= low
            idx = low.bit_length() - 1
            candidates.append(((self.set_masks[idx] & uncovered).bit_count(), -idx))
        candidates.sort(reverse=True)
        mark = len(chosen)
        for gain, neg_idx in candidates:
            idx = -neg_idx
            chosen.append(idx)
            result = self._dfs(
                uncovered & ~self.set_masks[idx], banned, remaining - 1, chosen
            )
            if result is not None:
                return result
            del chosen[mark:]
            banned |= 1 << idx
        return None


def _greedy_on_masks(set_masks: list[int], universe_size: int) -> list[int]:
    uncovered = (1 << universe_size) - 1
    picked: list[int] = []
    while uncovered:
        best_gain = 0
        best_idx = -1
        for i, mask in enumerate(set_masks):
            gain = (mask & uncovered).bit_count()
            if gain > best_gain:
                best_gain = gain
                best_idx = i
        if best_idx < 0:
            raise PreconditionError("infeasible: greedy ran out of useful sets")
        picked.append(best_idx)
        uncovered &= ~set_masks[best_idx]
    return picked


def _elements_to_mask(elements: Sequence[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def exact_set_cover(
    instance: SetCoverInstance,
    budget: Budget = FAST_BUDGET,
    seed: int = 0,
    initial_selection: Sequence[int] | None = None,
    lower_bound_hint: int = 0,
) -> SolveOutcome:
    """Minimum set cover by iterative target search.

    Deterministic for a fixed instance; the seed is carried through to the
    outcome for provenance only.  With a pairing, the search runs over
    merged pair-sets and reports values and selections in original indices.
    The hint is a trusted external lower bound in original (unmerged) units.
    """
    weight = 1
    if instance.pairing:
        weight = 2
        pair_sets = [
            tuple(sorted(set(instance.sets[i]) | set(instance.sets[j])))
            for i, j in instance.pairing
        ]
        expand = {p: pair for p, pair in enumerate(instance.pairing)}
        masks = [_elements_to_mask(s) for s in pair_sets]
    else:
        expand = {i: (i,) for i in range(len(instance.sets))}
        masks = [_elements_to_mask(s) for s in instance.sets]

    start = time.monotonic()
    searcher = _Searcher(masks, instance.universe_size, budget)
    incumbent = _greedy_on_masks(masks, instance.universe_size)

    if initial_selection is not None:
        mapped = _map_initial_selection(instance, initial_selection)
        if mapped is not None and len(mapped) < len(incumbent):
            incumbent = mapped

    lb = max(searcher.root_lower_bound(), -(-lower_bound_hint // weight))
    events: list[tuple[float, int, int]] = [
        (0.0, weight * len(incumbent), weight * lb)
    ]
    status = SolveStatus.OPTIMAL
    target = lb
    try:
        while target < len(incumbent):
            found = searcher.find(target)
            if found is not None:
                incumbent = found
                events.append(
                    (time.monotonic() - start, weight * len(incumbent), weight * target)
                )
                break
            target += 1
            events.append(
                (time.monotonic() - start, weight * len(incumbent), weight * target)
            )
        lb = len(incumbent) if target >= len(incumbent) else target
    except _BudgetOut:
        status = SolveStatus.TIMEOUT
        lb = target
    selection = tuple(sorted(i for p in incumbent for i in expand[p]))
    return SolveOutcome(
        status=status,
        best_value=weight * len(incumbent),
        lower_bound=weight * lb,
        selection=selection,
        nodes_explored=searcher.nodes,
        seed=seed,
        events=tuple(events),
    )


def _map_initial_selection(
    instance: SetCoverInstance, selection: Sequence[int]
) -> list[int] | None:
    """Translate an original-index warm start into internal (merged) indices."""
    chosen = set(selection)
    for i in chosen:
        if not 0 <= i < len(instance.sets):
            raise PreconditionError(f"warm-start index {i} out of range")
    covered = 0
    for i in chosen:
        covered |= _elements_to_mask(instance.sets[i])
    if covered != (1 << instance.universe_size) - 1:
        raise PreconditionError("warm-start selection does not cover the universe")
    if not instance.pairing:
        return sorted(chosen)
    merged = []
    for p, (i, j) in enumerate(instance.pairing):
        if i in chosen or j in chosen:
            if not (i in chosen and j in chosen):
                return None  # not symmetric; unusable as a merged warm start
            merged.append(p)
    return merged


# ---------------------------------------------------------------------------
# clique-cover instances


def theta_instance(params: GraphParams) -> tuple[SetCoverInstance, list[Clique]]:
    """The set-cover instance whose optimum is the clique covering number."""
    vertex_index = {
        mask: i for i, mask in enumerate(k_subset_masks(params.n, params.k))
    }
    cliques = enumerate_maximal_cliques(params)
    sets = tuple(
        tuple(sorted(vertex_index[m] for m in clique_vertex_masks(c)))
        for c in cliques
    )
    return SetCoverInstance(len(vertex_index), sets), cliques


def selection_to_cover(
    params: GraphParams, cliques: Sequence[Clique], selection: Sequence[int]
) -> Cover:
    return Cover(params, tuple(cliques[i] for i in selection))


def greedy_cover(params: GraphParams) -> Cover:
    """Pick the clique covering the most uncovered vertices until done."""
    instance, cliques = theta_instance(params)
    masks = [_elements_to_mask(s) for s in instance.sets]
    picked = _greedy_on_masks(masks, instance.universe_size)
    return selection_to_cover(params, cliques, picked)


def outcome_cover(params: GraphParams, outcome: "SolveOutcome") -> Cover | None:
    """The outcome's selection as a cover, in the canonical clique order."""
    if outcome.selection is None:
        return None
    cliques = enumerate_maximal_cliques(params)
    return selection_to_cover(params, cliques, outcome.selection)


def exact_theta(
    params: GraphParams,
    budget: Budget | None = None,
    tier: str = "fast",
    seed: int = 0,
    warm_start: bool | None = None,
    threads: int = 1,
) -> SolveOutcome:
    """Exact (or interval) clique covering number via branch-and-bound.

    Solves with k normalized to min(k, n-k) through the complement map and
    reports the selection in the original parameters' canonical clique
    order.  Outside the fast tier the incumbent is warm-started from the
    annealer, so budget exhaustion still yields the heuristic upper bound;
    threads only affect the warm start's restart chains.
    """
    if budget is None:
        if tier not in TIER_BUDGETS:
            raise PreconditionError(f"unknown tier {tier!r}")
        budget = TIER_BUDGETS[tier]
    kk = min(params.k, params.n - params.k)
    solve_params = GraphParams(params.n, kk)
    instance, cliques = theta_instance(solve_params)

    initial = None
    if warm_start is None:
        warm_start = tier != "fast"
    if warm_start:
        annealed = anneal_cover(solve_params, seed=seed, threads=threads)
        index = {(c.kind, c.generator): i for i, c in enumerate(cliques)}
        initial = [index[(c.kind, c.generator)] for c in annealed.cover.cliques]

    outcome = exact_set_cover(
        instance, budget, seed, initial, lower_bound_hint=simple_lower_bound(solve_params)
    )
    if kk == params.k:
        return outcome
    original = enumerate_maximal_cliques(params)
    flip = {
        CliqueKind.A: CliqueKind.B,
        CliqueKind.B: CliqueKind.A,
    }
    full = solve_params.full_mask
    index = {(c.kind, c.generator): i for i, c in enumerate(original)}
    mapped = tuple(
        sorted(
            index[(flip[cliques[i].kind], full & ~cliques[i].generator)]
            for i in outcome.selection
        )
    )
    return replace(outcome, selection=mapped)


# ---------------------------------------------------------------------------
# simulated annealing


@dataclass(frozen=True)
class AnnealSchedule:
    """Annealing parameters; the defaults reach the tabulated sizes for n <= 10.

    steps=None scales the chain length with the instance (40 * universe^2,
    clamped to [100_000, 2_000_000]); the cooling factor is applied every
    cool-interval steps, with the interval derived so the temperature decays
    from t0 to t_min across the whole chain.  The t0/t_min band is where
    measured improvements happen for this move set: below it the chain
    freezes, above it feasible covers are rarely visited.
    """

    steps: int | None = None
    restarts: int = 6
    cooling: float = 0.999
    t0: float = 0.8
    t_min: float = 0.3
    feasible_add: float = 0.3
    removal_probes: int = 4


DEFAULT_SCHEDULE = AnnealSchedule()


def _resolved_steps(schedule: AnnealSchedule, universe_size: int) -> int:
    if schedule.steps is not None:
        return schedule.steps
    return max(100_000, min(2_000_000, 40 * universe_size * universe_size))


@dataclass(frozen=True)
class AnnealOutcome:
    cover: Cover
    size: int
    seed: int
    schedule: AnnealSchedule


class _AnnealState:
    """Selected-clique subset with incremental coverage counts."""

    __slots__ = ("vertex_lists", "counts", "selected", "selected_list", "uncovered")

    def __init__(self, vertex_lists: list[list[int]], universe_size: int):
        self.vertex_lists = vertex_lists
        self.counts = [0] * universe_size
        self.selected = [False] * len(vertex_lists)
        self.selected_list: list[int] = []
        self.uncovered = universe_size

    def add(self, idx: int):
        self.selected[idx] = True
        self.selected_list.append(idx)
        counts = self.counts
        for v in self.vertex_lists[idx]:
            if counts[v] == 0:
                self.uncovered -= 1
            counts[v] += 1

    def remove_at(self, pos: int):
        idx = self.selected_list[pos]
        last = self.selected_list[-1]
        self.selected_list[pos] = last
        self.selected_list.pop()
        self.selected[idx] = False
        counts = self.counts
        for v in self.vertex_lists[idx]:
            counts[v] -= 1
            if counts[v] == 0:
                self.uncovered += 1
        return idx

    def remove_idx(self, idx: int):
        pos = self.selected_list.index(idx)
        return self.remove_at(pos)

    def energy(self, penalty: int) -> int:
        return len(self.selected_list) + penalty * self.uncovered


def _prune_redundant(state: _AnnealState):
    """Drop cliques whose vertices are all covered at least twice."""
    changed = True
    while changed:
        changed = False
        for pos in range(len(state.selected_list) - 1, -1, -1):
            idx = state.selected_list[pos]
            if all(state.counts[v] >= 2 for v in state.vertex_lists[idx]):
                state.remove_at(pos)
                changed = True


def anneal_cover(
    params: GraphParams,
    schedule: AnnealSchedule = DEFAULT_SCHEDULE,
    seed: int = 0,
    threads: int = 1,
) -> AnnealOutcome:
    """Search for a small cover by simulated annealing over maximal cliques.

    The state is a clique subset and the energy is size plus (omega+1) per
    uncovered vertex.  Moves add, remove, or swap one clique: additions are
    biased toward cliques covering the most currently uncovered vertices,
    removals toward cliques with the fewest exclusively covered ones.  The
    temperature decays geometrically across the chain, each restart runs a
    fresh chain from the greedy cover, and the search stops early when the
    counting lower bound is met.  Restart chains are independent, so with
    threads > 1 they run concurrently and are reduced in restart order;
    the result for a fixed seed is identical at any thread count on a
    given backend.
    """
    instance, cliques = theta_instance(params)
    vertex_lists = [list(s) for s in instance.sets]
    covers_by_vertex: list[list[int]] = [[] for _ in range(instance.universe_size)]
    for i, vs in enumerate(vertex_lists):
        for v in vs:
            covers_by_vertex[v].append(i)
    masks = [_elements_to_mask(s) for s in instance.sets]
    greedy_pick = _greedy_on_masks(masks, instance.universe_size)
    steps = _resolved_steps(schedule, instance.universe_size)
    stop_at = simple_lower_bound(params)
    if not 0 < schedule.cooling < 1 or not 0 < schedule.t_min <= schedule.t0:
        raise PreconditionError("need 0 < cooling < 1 and 0 < t_min <= t0")
    if threads < 1:
        raise PreconditionError(f"need threads >= 1, got {threads}")

    backend_run = _backend.get("anneal_run")

    def run_slice(first: int, count: int) -> list[int]:
        if backend_run is not None:
            picked = backend_run(
                vertex_lists,
                covers_by_vertex,
                instance.universe_size,
                greedy_pick,
                clique_number(params) + 1,
                steps,
                count,
                schedule.cooling,
                schedule.t0,
                schedule.t_min,
                schedule.feasible_add,
                schedule.removal_probes,
                stop_at,
                seed,
                first,
            )
            return sorted(int(i) for i in picked)
        return _anneal_py(
            vertex_lists,
            covers_by_vertex,
            instance.universe_size,
            greedy_pick,
            clique_number(params) + 1,
            steps,
            replace(schedule, restarts=count),
            stop_at,
            seed,
            first,
        )

    workers = min(threads, max(schedule.restarts, 1))
    if workers <= 1:
        best_selection = run_slice(0, schedule.restarts)
    else:
        bounds = [schedule.restarts * w // workers for w in range(workers + 1)]
        slices = [
            (bounds[w], bounds[w + 1] - bounds[w])
            for w in range(workers)
            if bounds[w + 1] > bounds[w]
        ]
        with ThreadPoolExecutor(max_workers=len(slices)) as pool:
            results = list(pool.map(lambda s: run_slice(*s), slices))
        best_selection = results[0]
        for candidate in results[1:]:
            if len(best_selection) <= stop_at:
                break
            if len(candidate) < len(best_selection):
                best_selection = candidate
    cover = selection_to_cover(params, cliques, best_selection)
    return AnnealOutcome(cover=cover, size=len(best_selection), seed=seed, schedule=schedule)


def _cool_interval(steps: int, schedule: AnnealSchedule) -> int:
    """Steps between cooling applications so the decay spans the whole chain."""
    if schedule.t0 <= schedule.t_min:
        return steps
    span = math.log(schedule.t0 / schedule.t_min)
    return max(1, round(steps * (1.0 - schedule.cooling) / span))


def _anneal_py(
    vertex_lists: list[list[int]],
    covers_by_vertex: list[list[int]],
    universe_size: int,
    greedy_pick: list[int],
    penalty: int,
    steps: int,
    schedule: AnnealSchedule,
    stop_at: int,
    seed: int,
    restart0: int = 0,
) -> list[int]:
    n_sets = len(vertex_lists)
    cool_every = _cool_interval(steps, schedule)
    feasible_add = schedule.feasible_add
    probes = schedule.removal_probes

    tight = _AnnealState(vertex_lists, universe_size)
    for idx in greedy_pick:
        tight.add(idx)
    _prune_redundant(tight)
    best = sorted(tight.selected_list)

    for restart in range(schedule.restarts):
        if len(best) <= stop_at:
            break
        rng = XorShift64((seed << 8) + restart0 + restart)
        state = _AnnealState(vertex_lists, universe_size)
        for idx in greedy_pick:
            state.add(idx)
        t = schedule.t0
        energy = state.energy(penalty)
        for step in range(steps):
            r = rng.uniform()
            sel = len(state.selected_list)
            if state.uncovered > 0:
                kind = 0 if (r < 0.6 or sel == 0) else (1 if r < 0.8 else 2)
            else:
                kind = 0 if r < feasible_add else (1 if r < feasible_add + 0.4 else 2)
            if kind == 0:
                idx = _pick_addition(state, rng, n_sets, covers_by_vertex)
                if not state.selected[idx]:
                    state.add(idx)
                    delta = state.energy(penalty) - energy
                    if delta <= 0 or rng.uniform() < math.exp(-delta / t):
                        energy += delta
                    else:
                        state.remove_idx(idx)
            elif kind == 1:
                pos = _pick_removal(state, rng, probes)
                idx = state.remove_at(pos)
                delta = state.energy(penalty) - energy
                if delta <= 0 or rng.uniform() < math.exp(-delta / t):
                    energy += delta
                else:
                    state.add(idx)
            else:
                pos = _pick_removal(state, rng, probes)
                out_idx = state.remove_at(pos)
                in_idx = _pick_addition(state, rng, n_sets, covers_by_vertex)
                if state.selected[in_idx] or in_idx == out_idx:
                    state.add(out_idx)
                else:
                    state.add(in_idx)
                    delta = state.energy(penalty) - energy
                    if delta <= 0 or rng.uniform() < math.exp(-delta / t):
                        energy += delta
                    else:
                        state.remove_idx(in_idx)
                        state.add(out_idx)
            if state.uncovered == 0 and len(state.selected_list) < len(best):
                best = sorted(state.selected_list)
                if len(best) <= stop_at:
                    break
            if step % cool_every == 0:
                t = max(t * schedule.cooling, schedule.t_min)
    return best


def _pick_addition(state: _AnnealState, rng: XorShift64, n_sets: int, covers_by_vertex):
    """A clique to add: most new coverage among candidates, ties at random.

    With few uncovered vertices every covering clique competes; otherwise
    candidates come from one uncovered vertex sampled at random.
    """
    counts = state.counts
    if state.uncovered > 0:
        misses = [v for v, c in enumerate(counts) if c == 0]
        if len(misses) <= 10:
            options = sorted({i for v in misses for i in covers_by_vertex[v]})
        else:
            v = misses[rng.randrange(len(misses))]
            options = covers_by_vertex[v]
        best_gain = -1
        best: list[int] = []
        for idx in options:
            gain = 0
            for u in state.vertex_lists[idx]:
                if counts[u] == 0:
                    gain += 1
            if gain > best_gain:
                best_gain = gain
                best = [idx]
            elif gain == best_gain:
                best.append(idx)
        return best[rng.randrange(len(best))]
    return rng.randrange(n_sets)


def _pick_removal(state: _AnnealState, rng: XorShift64, probes: int) -> int:
    """Sampled position whose clique covers the fewest vertices exclusively."""
    sel = len(state.selected_list)
    counts = state.counts
    best_pos = rng.randrange(sel)
    best_excl = 1 << 30
    pos = best_pos
    for probe in range(probes):
        if probe:
            pos = rng.randrange(sel)
        excl = 0
        for v in state.vertex_lists[state.selected_list[pos]]:
            if counts[v] == 1:
                excl += 1
        if excl < best_excl:
            best_excl = excl
            best_pos = pos
    return best_pos


# ---------------------------------------------------------------------------
# exact maximum independent set


@dataclass(frozen=True)
class MISOutcome:
    status: SolveStatus
    size: int
    upper_bound: int
    witness: tuple[int, ...]
    nodes_explored: int


MAX_MIS_VERTICES = 400


def exact_max_independent_set(
    neighbor_masks: Sequence[int], budget: Budget = FAST_BUDGET
) -> MISOutcome:
    """Exact independence number via clique search on the complement.

    Branch-and-bound with a greedy coloring upper bound; vertices are given
    by their adjacency bitmasks.  The witness is returned as vertex indices
    and is checked to be independent before returning.
    """
    m = len(neighbor_masks)
    if m > MAX_MIS_VERTICES:
        raise PreconditionError(f"graph too large for the exact solver ({m} vertices)")
    if m == 0:
        return MISOutcome(SolveStatus.OPTIMAL, 0, 0, (), 0)
    full = (1 << m) - 1
    comp = [full & ~(neighbor_masks[v] | (1 << v)) for v in range(m)]
    deadline = time.monotonic() + budget.max_seconds if budget.max_seconds else None

    best: list[int] = []
    best_mask = 0
    nodes = 0
    out_of_budget = False

    def coloring(p_mask: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        bounds: list[int] = []
        color = 0
        rest = p_mask
        while rest:
            color += 1
            available = rest
            while available:
                low = available & -available
                v = low.bit_length() - 1
                available ^= low
                order.append(v)
                bounds.append(color)
                available &= ~comp[v]
                rest ^= low
        return order, bounds

    def expand(r_list: list[int], p_mask: int):
        nonlocal best, best_mask, nodes, out_of_budget
        nodes += 1
        if out_of_budget:
            return
        if budget.max_nodes is not None and nodes > budget.max_nodes:
            out_of_budget = True
            return
        if deadline is not None and nodes % 2048 == 0 and time.monotonic() > deadline:
            out_of_budget = True
            return
        order, bounds = coloring(p_mask)
        for i in range(len(order) - 1, -1, -1):
            if len(r_list) + bounds[i] <= len(best):
                return
            v = order[i]
            r_list.append(v)
            new_p = p_mask & comp[v]
            if new_p == 0:
                if len(r_list) > len(best):
                    best = list(r_list)
            else:
                expand(r_list, new_p)
            r_list.pop()
            p_mask &= ~(1 << v)

    expand([], full)

    witness = tuple(sorted(best))
    for i, v in enumerate(witness):
        for u in witness[i + 1 :]:
            if neighbor_masks[v] >> u & 1:
                raise PreconditionError("internal error: witness not independent")
    if out_of_budget:
        return MISOutcome(SolveStatus.TIMEOUT, len(best), m, witness, nodes)
    return MISOutcome(SolveStatus.OPTIMAL, len(best), len(best), witness, nodes)


def johnson_neighbor_masks(params: GraphParams) -> list[int]:
    """Adjacency bitmasks of J(n,k) in canonical vertex order."""
    masks = list(k_subset_masks(params.n, params.k))
    m = len(masks)
    if m > MAX_MIS_VERTICES:
        raise PreconditionError(f"J({params.n},{params.k}) has {m} vertices")
    out = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if (masks[i] ^ masks[j]).bit_count() == 2:
                out[i] |= 1 << j
                out[j] |= 1 << i
    return out


def jk_neighbor_masks(params: GraphParams) -> list[int]:
    """Adjacency bitmasks of JK(n,k): two copies plus disjointness cross edges."""
    masks = list(k_subset_masks(params.n, params.k))
    m = len(masks)
    if 2 * m > MAX_MIS_VERTICES:
        raise PreconditionError(f"JK({params.n},{params.k}) has {2 * m} vertices")
    out = [0] * (2 * m)
    for i in range(m):
        for j in range(i + 1, m):
            if (masks[i] ^ masks[j]).bit_count() == 2:
                out[i] |= 1 << j
                out[j] |= 1 << i
                out[m + i] |= 1 << (m + j)
                out[m + j] |= 1 << (m + i)
    for i in range(m):
        for j in range(m):
            if i != j and masks[i] & masks[j] == 0:
                out[i] |= 1 << (m + j)
                out[m + j] |= 1 << i
    return out


# ---------------------------------------------------------------------------
# derived searches


def symmetric_cover_search(k: int, budget: Budget = FAST_BUDGET, seed: int = 0) -> SolveOutcome:
    """Minimum self-complementary cover of J(2k,k).

    Every extension clique is paired with the subset clique on the
    complement of its generator, and the pair is chosen or dropped as one.
    """
    if k < 2:
        raise PreconditionError(f"need k >= 2 so both clique kinds exist, got {k}")
    params = GraphParams(2 * k, k)
    instance, cliques = theta_instance(params)
    pair_of = {(c.kind, c.generator): i for i, c in enumerate(cliques)}
    full = params.full_mask
    pairing = []
    for i, c in enumerate(cliques):
        if c.kind is CliqueKind.A:
            j = pair_of[(CliqueKind.B, full & ~c.generator)]
            pairing.append((i, j))
    paired_instance = SetCoverInstance(instance.universe_size, instance.sets, tuple(pairing))
    return exact_set_cover(paired_instance, budget, seed)


def covering_number_small(v: int, s: int, t: int, budget: Budget = FAST_BUDGET) -> SolveOutcome:
    """Exact minimum number of s-subsets of [v] covering every t-subset."""
    if not v >= s >= t >= 1:
        raise PreconditionError(f"need v >= s >= t >= 1, got {(v, s, t)}")
    if comb(v, t) > 100_000:
        raise PreconditionError(f"universe of {comb(v, t)} {t}-subsets is too large")
    t_index = {mask: i for i, mask in enumerate(k_subset_masks(v, t))}
    sets = []
    elements = list(range(1, v + 1))
    for block in combinations(elements, s):
        covered = []
        for sub in combinations(block, t):
            mask = 0
            for e in sub:
                mask |= 1 << (e - 1)
            covered.append(t_index[mask])
        sets.append(tuple(sorted(covered)))
    instance = SetCoverInstance(len(t_index), tuple(sets))
    return exact_set_cover(instance, budget)
