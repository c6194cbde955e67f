# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: lexicode scanning, lifted-cover counting, annealing.

Each function mirrors its pure-Python fallback exactly (same candidate
orders, same random stream), so the two backends are interchangeable; the
compiled side just makes the billion-candidate scans and multi-million-step
annealing runs practical.
"""

from libc.stdlib cimport calloc, free, malloc, realloc
from libc.math cimport exp, log

import array

from cpython cimport array

from .errors import PreconditionError, VerificationError

ctypedef unsigned long long u64
ctypedef unsigned int u32


# ---------------------------------------------------------------------------
# random stream (matches rng.XorShift64)

cdef inline u64 _seed_state(u64 seed) nogil:
    cdef u64 x = seed + 0x9E3779B97F4A7C15ULL
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL
    x = x ^ (x >> 31)
    if x == 0:
        x = 0x9E3779B97F4A7C15ULL
    return x


cdef inline u64 _next_u64(u64* state) nogil:
    cdef u64 x = state[0]
    x ^= x >> 12
    x ^= x << 25
    x ^= x >> 27
    state[0] = x
    return x * 0x2545F4914F6CDD1DULL


cdef inline long _randrange(u64* state, long n) nogil:
    return <long>(_next_u64(state) % <u64>n)


cdef inline double _uniform(u64* state) nogil:
    return <double>(_next_u64(state) >> 11) * (1.0 / 9007199254740992.0)


# ---------------------------------------------------------------------------
# binomial table and colex ranks for n <= 32

cdef u64 _BINOM[33][33]
cdef bint _binom_ready = False


cdef void _fill_binom():
    global _binom_ready
    cdef int i, j
    for i in range(33):
        _BINOM[i][0] = 1
        for j in range(1, 33):
            _BINOM[i][j] = 0
    for i in range(1, 33):
        for j in range(1, i + 1):
            _BINOM[i][j] = _BINOM[i - 1][j - 1] + _BINOM[i - 1][j]
    _binom_ready = True


cdef inline u64 _colex_rank(u32 mask) nogil:
    cdef u64 rank = 0
    cdef int position = 0
    cdef u32 rest = mask
    cdef int element
    while rest:
        element = __builtin_ctz(rest)
        rest &= rest - 1
        position += 1
        rank += _BINOM[element][position]
    return rank


cdef extern from *:
    int __builtin_ctz(unsigned int) nogil
    int __builtin_popcount(unsigned int) nogil


# ---------------------------------------------------------------------------
# greedy distance-4 scan (lexicode)


def lexicode_scan(int n, int w, str order):
    """Accepted word masks of the greedy distance-4 scan, matching the pure scan."""
    if not _binom_ready:
        _fill_binom()
    if n > 32 or w < 1 or w > n:
        raise PreconditionError(f"scan needs n <= 32 and 0 < w <= n, got ({n}, {w})")
    colex = order == "colex"

    cdef u64 index_bits = _BINOM[n][w - 1]
    cdef unsigned char* conflict = <unsigned char*>calloc(<size_t>((index_bits + 7) // 8), 1)
    if conflict == NULL:
        raise MemoryError
    cdef size_t capacity = 1 << 16
    cdef u32* accepted = <u32*>malloc(capacity * sizeof(u32))
    if accepted == NULL:
        free(conflict)
        raise MemoryError
    cdef size_t count = 0

    # per-candidate element list and prefix/suffix rank sums
    cdef int elements[32]
    cdef u64 prefix[33]
    cdef u64 suffix[34]
    cdef u64 drop_ranks[32]

    cdef u32 mask, rest, u, v, low
    cdef u64 total = _BINOM[n][w]
    cdef u64 step
    cdef int i, p, hit
    cdef u64 rank
    cdef int positions[32]

    if colex:
        mask = <u32>((1 << w) - 1)
    else:
        for i in range(w):
            positions[i] = i
        mask = 0
        for i in range(w):
            mask |= <u32>1 << positions[i]

    for step in range(total):
        if not colex:
            mask = 0
            for i in range(w):
                mask |= <u32>1 << positions[i]
        # element list in ascending order
        rest = mask
        i = 0
        while rest:
            elements[i] = __builtin_ctz(rest)
            rest &= rest - 1
            i += 1
        # prefix[p] = sum_{j<=p} C(e_j - 1 + 1 ... ) with 1-based positions:
        # rank contribution of element e at 1-based position q is C(e, q)
        # using 0-based element values directly (e = value - 1 already).
        prefix[0] = 0
        for i in range(w):
            prefix[i + 1] = prefix[i] + _BINOM[elements[i]][i + 1]
        suffix[w] = 0
        for i in range(w - 1, -1, -1):
            suffix[i] = suffix[i + 1] + _BINOM[elements[i]][i]
        hit = 0
        for p in range(w):
            rank = prefix[p] + suffix[p + 1]
            drop_ranks[p] = rank
            if conflict[rank >> 3] & (1 << (rank & 7)):
                hit = 1
                break
        if not hit:
            if count == capacity:
                capacity *= 2
                accepted = <u32*>realloc(accepted, capacity * sizeof(u32))
                if accepted == NULL:
                    free(conflict)
                    raise MemoryError
            accepted[count] = mask
            count += 1
            for p in range(w):
                rank = drop_ranks[p]
                conflict[rank >> 3] |= <unsigned char>(1 << (rank & 7))
        # advance
        if colex:
            u = mask & (~mask + 1)
            v = mask + u
            if step + 1 < total:
                mask = v | (((mask ^ v) >> 2) // u)
        else:
            # next combination in lexicographic tuple order
            i = w - 1
            while i >= 0 and positions[i] == n - w + i:
                i -= 1
            if i >= 0:
                positions[i] += 1
                for p in range(i + 1, w):
                    positions[p] = positions[p - 1] + 1

    free(conflict)
    cdef array.array template = array.array("I")
    cdef array.array out = array.clone(template, count, zero=False)
    cdef size_t idx
    for idx in range(count):
        out.data.as_uints[idx] = accepted[idx]
    free(accepted)
    return out


# ---------------------------------------------------------------------------
# counting verification of the lifted disjoint-clique cover


def cover_count_check(int n, int k, masks):
    """Distinct-vertex count of all lifted cliques; raises on any overlap."""
    if not _binom_ready:
        _fill_binom()
    if n > 32:
        raise PreconditionError(f"counting check needs n <= 32, got {n}")

    cdef array.array buf
    if isinstance(masks, array.array) and masks.typecode == "I":
        buf = masks
    else:
        buf = array.array("I", [int(m) for m in masks])
    cdef u32* words = buf.data.as_uints
    cdef size_t n_words = len(buf)

    cdef u64 space = _BINOM[n][k]
    cdef unsigned char* seen = <unsigned char*>calloc(<size_t>((space + 7) // 8), 1)
    if seen == NULL:
        raise MemoryError

    cdef u64 covered = 0
    cdef u32 full = <u32>((<u64>1 << n) - 1)
    cdef u32 mask, comp, rest, low, vm
    cdef u64 rank
    cdef size_t wi
    for wi in range(n_words):
        mask = words[wi]
        comp = full & ~mask
        rest = comp
        while rest:
            low = rest & (~rest + 1)
            rest ^= low
            vm = mask | low
            rank = _colex_rank(vm)
            if seen[rank >> 3] & (1 << (rank & 7)):
                free(seen)
                raise VerificationError("lifted cliques overlap")
            seen[rank >> 3] |= <unsigned char>(1 << (rank & 7))
            covered += 1
        rest = comp
        while rest:
            low = rest & (~rest + 1)
            rest ^= low
            vm = comp ^ low
            rank = _colex_rank(vm)
            if seen[rank >> 3] & (1 << (rank & 7)):
                free(seen)
                raise VerificationError("lifted cliques overlap")
            seen[rank >> 3] |= <unsigned char>(1 << (rank & 7))
            covered += 1
    free(seen)
    return covered


# ---------------------------------------------------------------------------
# annealing inner loop (mirrors solver._anneal_py)


cdef struct AnnealArrays:
    int n_sets
    int universe
    int* offsets        # n_sets+1 into vertex values
    int* vertices       # flattened vertex lists
    int* cov_offsets    # universe+1 into covering-set values
    int* cov_sets       # flattened covers-by-vertex
    int* counts
    unsigned char* selected
    int* selected_list
    int* where          # position of set in selected_list, -1 if absent
    int n_selected
    int uncovered


cdef inline void _state_add(AnnealArrays* a, int idx) nogil:
    a.selected[idx] = 1
    a.selected_list[a.n_selected] = idx
    a.where[idx] = a.n_selected
    a.n_selected += 1
    cdef int j, v
    for j in range(a.offsets[idx], a.offsets[idx + 1]):
        v = a.vertices[j]
        if a.counts[v] == 0:
            a.uncovered -= 1
        a.counts[v] += 1


cdef inline int _state_remove_at(AnnealArrays* a, int pos) nogil:
    cdef int idx = a.selected_list[pos]
    cdef int last = a.selected_list[a.n_selected - 1]
    a.selected_list[pos] = last
    a.where[last] = pos
    a.n_selected -= 1
    a.selected[idx] = 0
    a.where[idx] = -1
    cdef int j, v
    for j in range(a.offsets[idx], a.offsets[idx + 1]):
        v = a.vertices[j]
        a.counts[v] -= 1
        if a.counts[v] == 0:
            a.uncovered += 1
    return idx


cdef inline void _state_remove_idx(AnnealArrays* a, int idx) nogil:
    _state_remove_at(a, a.where[idx])


cdef int _pick_add(AnnealArrays* a, u64* rng, int* scratch, int* options) nogil:
    """Clique to add; mirrors the pure picker including its random draws."""
    cdef int n_miss = 0, v, i, j, idx, gain, n_opt, n_best, best_gain
    if a.uncovered > 0:
        for v in range(a.universe):
            if a.counts[v] == 0:
                scratch[n_miss] = v
                n_miss += 1
        if n_miss <= 10:
            # union of covering sets over all misses, ascending and distinct
            n_opt = 0
            for i in range(n_miss):
                v = scratch[i]
                for j in range(a.cov_offsets[v], a.cov_offsets[v + 1]):
                    options[n_opt] = a.cov_sets[j]
                    n_opt += 1
            _sort_dedupe(options, &n_opt)
        else:
            v = scratch[_randrange(rng, n_miss)]
            n_opt = 0
            for j in range(a.cov_offsets[v], a.cov_offsets[v + 1]):
                options[n_opt] = a.cov_sets[j]
                n_opt += 1
        best_gain = -1
        n_best = 0
        for i in range(n_opt):
            idx = options[i]
            gain = 0
            for j in range(a.offsets[idx], a.offsets[idx + 1]):
                if a.counts[a.vertices[j]] == 0:
                    gain += 1
            if gain > best_gain:
                best_gain = gain
                scratch[0] = idx
                n_best = 1
            elif gain == best_gain:
                scratch[n_best] = idx
                n_best += 1
        return scratch[_randrange(rng, n_best)]
    return _randrange(rng, a.n_sets)


cdef void _sort_dedupe(int* values, int* n) nogil:
    # insertion sort; option lists stay small (tens of entries)
    cdef int i, j, x, m
    for i in range(1, n[0]):
        x = values[i]
        j = i - 1
        while j >= 0 and values[j] > x:
            values[j + 1] = values[j]
            j -= 1
        values[j + 1] = x
    m = 0
    for i in range(n[0]):
        if m == 0 or values[m - 1] != values[i]:
            values[m] = values[i]
            m += 1
    n[0] = m


cdef int _pick_removal_pos(AnnealArrays* a, u64* rng, int probes) nogil:
    cdef int best_pos = _randrange(rng, a.n_selected)
    cdef int best_excl = 1 << 30
    cdef int pos = best_pos
    cdef int probe, excl, j, idx
    for probe in range(probes):
        if probe:
            pos = _randrange(rng, a.n_selected)
        idx = a.selected_list[pos]
        excl = 0
        for j in range(a.offsets[idx], a.offsets[idx + 1]):
            if a.counts[a.vertices[j]] == 1:
                excl += 1
        if excl < best_excl:
            best_excl = excl
            best_pos = pos
    return best_pos


def anneal_run(
    vertex_lists,
    covers_by_vertex,
    int universe_size,
    greedy_pick,
    int penalty,
    long steps,
    int restarts,
    double cooling,
    double t0,
    double t_min,
    double feasible_add,
    int removal_probes,
    int stop_at,
    u64 seed,
    int restart0=0,
):
    """Best selection found by the annealing chain; same contract as the pure loop."""
    cdef int n_sets = len(vertex_lists)
    cdef int total_v = 0, total_c = 0
    cdef int i, j

    cdef AnnealArrays a
    a.n_sets = n_sets
    a.universe = universe_size
    for i in range(n_sets):
        total_v += len(vertex_lists[i])
    for i in range(universe_size):
        total_c += len(covers_by_vertex[i])

    a.offsets = <int*>malloc((n_sets + 1) * sizeof(int))
    a.vertices = <int*>malloc(total_v * sizeof(int))
    a.cov_offsets = <int*>malloc((universe_size + 1) * sizeof(int))
    a.cov_sets = <int*>malloc(total_c * sizeof(int))
    a.counts = <int*>calloc(universe_size, sizeof(int))
    a.selected = <unsigned char*>calloc(n_sets, 1)
    a.selected_list = <int*>malloc(n_sets * sizeof(int))
    a.where = <int*>malloc(n_sets * sizeof(int))
    cdef int* scratch = <int*>malloc((universe_size + total_c + 4) * sizeof(int))
    cdef int* options = <int*>malloc((total_c + 4) * sizeof(int))
    cdef int* best = <int*>malloc(n_sets * sizeof(int))
    if (a.offsets == NULL or a.vertices == NULL or a.cov_offsets == NULL
            or a.cov_sets == NULL or a.counts == NULL or a.selected == NULL
            or a.selected_list == NULL or a.where == NULL or scratch == NULL
            or options == NULL or best == NULL):
        raise MemoryError

    a.offsets[0] = 0
    for i in range(n_sets):
        row = vertex_lists[i]
        for j in range(len(row)):
            a.vertices[a.offsets[i] + j] = row[j]
        a.offsets[i + 1] = a.offsets[i] + len(row)
    a.cov_offsets[0] = 0
    for i in range(universe_size):
        row = covers_by_vertex[i]
        for j in range(len(row)):
            a.cov_sets[a.cov_offsets[i] + j] = row[j]
        a.cov_offsets[i + 1] = a.cov_offsets[i] + len(row)

    cdef int n_greedy = len(greedy_pick)
    cdef int* greedy = <int*>malloc(n_greedy * sizeof(int))
    if greedy == NULL:
        raise MemoryError
    for i in range(n_greedy):
        greedy[i] = greedy_pick[i]

    cdef int n_best
    cdef long step
    cdef int restart, sel, kind, idx, pos, out_idx, in_idx, v
    cdef long cool_every
    cdef double t, r, d, energy
    cdef u64 rng

    with nogil:
        cool_every = <long>(steps * (1.0 - cooling) / log(t0 / t_min) + 0.5)
        if cool_every < 1:
            cool_every = 1

        # tight greedy baseline
        a.n_selected = 0
        a.uncovered = universe_size
        for i in range(n_greedy):
            _state_add(&a, greedy[i])
        _prune(&a)
        n_best = a.n_selected
        for i in range(n_best):
            best[i] = a.selected_list[i]
        _sort_ints(best, n_best)

        for restart in range(restarts):
            if n_best <= stop_at:
                break
            rng = _seed_state((seed << 8) + <u64>(restart0 + restart))
            _state_clear(&a)
            for i in range(n_greedy):
                _state_add(&a, greedy[i])
            t = t0
            energy = a.n_selected + penalty * a.uncovered
            for step in range(steps):
                r = _uniform(&rng)
                sel = a.n_selected
                if a.uncovered > 0:
                    kind = 0 if (r < 0.6 or sel == 0) else (1 if r < 0.8 else 2)
                else:
                    kind = 0 if r < feasible_add else (1 if r < feasible_add + 0.4 else 2)
                if kind == 0:
                    idx = _pick_add(&a, &rng, scratch, options)
                    if not a.selected[idx]:
                        _state_add(&a, idx)
                        d = (a.n_selected + penalty * a.uncovered) - energy
                        if d <= 0 or _uniform(&rng) < exp(-d / t):
                            energy += d
                        else:
                            _state_remove_idx(&a, idx)
                elif kind == 1:
                    pos = _pick_removal_pos(&a, &rng, removal_probes)
                    idx = _state_remove_at(&a, pos)
                    d = (a.n_selected + penalty * a.uncovered) - energy
                    if d <= 0 or _uniform(&rng) < exp(-d / t):
                        energy += d
                    else:
                        _state_add(&a, idx)
                else:
                    pos = _pick_removal_pos(&a, &rng, removal_probes)
                    out_idx = _state_remove_at(&a, pos)
                    in_idx = _pick_add(&a, &rng, scratch, options)
                    if a.selected[in_idx] or in_idx == out_idx:
                        _state_add(&a, out_idx)
                    else:
                        _state_add(&a, in_idx)
                        d = (a.n_selected + penalty * a.uncovered) - energy
                        if d <= 0 or _uniform(&rng) < exp(-d / t):
                            energy += d
                        else:
                            _state_remove_idx(&a, in_idx)
                            _state_add(&a, out_idx)
                if a.uncovered == 0 and a.n_selected < n_best:
                    n_best = a.n_selected
                    for i in range(n_best):
                        best[i] = a.selected_list[i]
                    _sort_ints(best, n_best)
                    if n_best <= stop_at:
                        break
                if step % cool_every == 0:
                    t = t * cooling
                    if t < t_min:
                        t = t_min

    result = [best[i] for i in range(n_best)]

    free(a.offsets); free(a.vertices); free(a.cov_offsets); free(a.cov_sets)
    free(a.counts); free(a.selected); free(a.selected_list); free(a.where)
    free(scratch); free(options); free(best); free(greedy)
    return result


cdef void _state_clear(AnnealArrays* a) nogil:
    cdef int i
    for i in range(a.universe):
        a.counts[i] = 0
    for i in range(a.n_sets):
        a.selected[i] = 0
        a.where[i] = -1
    a.n_selected = 0
    a.uncovered = a.universe


cdef void _prune(AnnealArrays* a) nogil:
    """Drop cliques whose vertices are all covered at least twice."""
    cdef bint changed = True
    cdef int pos, idx, j
    cdef bint redundant
    while changed:
        changed = False
        pos = a.n_selected - 1
        while pos >= 0:
            idx = a.selected_list[pos]
            redundant = True
            for j in range(a.offsets[idx], a.offsets[idx + 1]):
                if a.counts[a.vertices[j]] < 2:
                    redundant = False
                    break
            if redundant:
                _state_remove_at(a, pos)
                changed = True
            pos -= 1


cdef void _sort_ints(int* values, int n) nogil:
    cdef int i, j, x
    for i in range(1, n):
        x = values[i]
        j = i - 1
        while j >= 0 and values[j] > x:
            values[j + 1] = values[j]
            j -= 1
        values[j + 1] = x
