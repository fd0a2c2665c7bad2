"""Compiled bitset kernels for exhaustive subset sweeps (graphs of <= 62 vertices).

Subsets of a fixed size are visited in lexicographic order of their sorted
member tuples, addressed by rank.  A sweep is split into fixed rank ranges
("chunks"); each kernel call processes one chunk and releases the GIL, so
chunks can run on worker threads while the merge stays in chunk order.
"""
from __future__ import annotations

import numpy as np
from numba import njit

SHAPE_SINGLETON = 0
SHAPE_EDGE = 1
SHAPE_PATH2 = 2
SHAPE_CYCLE3 = 3
SHAPE_PATH3 = 4
SHAPE_CYCLE4 = 5
SHAPE_OTHER = 6

P_CONNECTED = 1
P_L33 = 2
P_L34 = 4
P_T37_1 = 8
P_T37_2 = 16
P_T37_3 = 32
P_T37_4 = 64
PATTERN_BITS = (P_CONNECTED, P_L33, P_L34, P_T37_1, P_T37_2, P_T37_3, P_T37_4)
N_PATTERNS = len(PATTERN_BITS)  # slot N_PATTERNS in the counters holds violations

MAX_COMPONENTS = 64


def binomial_table(size: int) -> np.ndarray:
    t = np.zeros((size + 1, size + 1), dtype=np.int64)
    for a in range(size + 1):
        t[a, 0] = 1
        for b in range(1, a + 1):
            t[a, b] = t[a - 1, b - 1] + t[a - 1, b]
    return t


@njit(cache=True, nogil=True)
def popcount(x):
    x = x - ((x >> 1) & 0x5555555555555555)
    x = (x & 0x3333333333333333) + ((x >> 2) & 0x3333333333333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0F
    return ((x * 0x0101010101010101) >> 56) & 0xFF


@njit(cache=True, nogil=True)
def lowest_index(x):
    # x must be non-zero; linear scan is fine for <= 62 bits
    i = 0
    while (x >> i) & 1 == 0:
        i += 1
    return i


@njit(cache=True, nogil=True)
def flood(adj, seed, allowed):
    comp = seed
    frontier = seed
    while frontier != 0:
        grown = 0
        f = frontier
        while f != 0:
            low = f & -f
            grown |= adj[lowest_index(low)]
            f ^= low
        frontier = grown & allowed & ~comp
        comp |= frontier
    return comp


@njit(cache=True, nogil=True)
def unrank(rank, size, s, binom, combo):
    x = 0
    for i in range(s):
        while binom[size - x - 1, s - i - 1] <= rank:
            rank -= binom[size - x - 1, s - i - 1]
            x += 1
        combo[i] = x
        x += 1


@njit(cache=True, nogil=True)
def advance(combo, size, s):
    i = s - 1
    while i >= 0 and combo[i] == size - s + i:
        i -= 1
    if i < 0:
        return False
    combo[i] += 1
    for j in range(i + 1, s):
        combo[j] = combo[j - 1] + 1
    return True


@njit(cache=True, nogil=True)
def combo_mask(combo, s):
    m = 0
    for i in range(s):
        m |= 1 << combo[i]
    return m


@njit(cache=True, nogil=True)
def is_extra(adj, full, removed, h):
    rest = full & ~removed
    count = 0
    while rest != 0:
        comp = flood(adj, rest & -rest, rest)
        if popcount(comp) <= h:
            return False
        count += 1
        rest &= ~comp
    return count >= 2


@njit(cache=True, nogil=True)
def first_extra_cut(adj, size, s, start, count, h, binom):
    """Offset (within the chunk) of the first ``h``-extra cut, or -1."""
    full = (1 << size) - 1
    combo = np.empty(max(s, 1), dtype=np.int64)
    unrank(start, size, s, binom, combo)
    for off in range(count):
        if off:
            advance(combo, size, s)
        if is_extra(adj, full, combo_mask(combo, s), h):
            return off
    return -1


@njit(cache=True, nogil=True)
def all_cuts_of_size(adj, size, s, start, count, binom, out):
    """Write masks of all disconnecting sets in the chunk to ``out``; return how many."""
    full = (1 << size) - 1
    combo = np.empty(max(s, 1), dtype=np.int64)
    unrank(start, size, s, binom, combo)
    found = 0
    for off in range(count):
        if off:
            advance(combo, size, s)
        removed = combo_mask(combo, s)
        rest = full & ~removed
        if rest == 0:
            continue
        if flood(adj, rest & -rest, rest) != rest:
            if found < out.shape[0]:
                out[found] = removed
            found += 1
    return found


@njit(cache=True, nogil=True)
def shape_code(adj, comp):
    order = popcount(comp)
    if order == 1:
        return SHAPE_SINGLETON
    if order == 2:
        return SHAPE_EDGE
    deg_sum = 0
    deg_max = 0
    deg_min = 99
    c = comp
    while c != 0:
        low = c & -c
        d = popcount(adj[lowest_index(low)] & comp)
        deg_sum += d
        if d > deg_max:
            deg_max = d
        if d < deg_min:
            deg_min = d
        c ^= low
    edges = deg_sum // 2
    if order == 3:
        return SHAPE_CYCLE3 if edges == 3 else SHAPE_PATH2
    if order == 4:
        if edges == 3 and deg_max == 2:
            return SHAPE_PATH3
        if edges == 4 and deg_max == 2 and deg_min == 2:
            return SHAPE_CYCLE4
    return SHAPE_OTHER


@njit(cache=True, nogil=True)
def pattern_bits(ncomp, shapes, nsmall):
    """Bitmask of every named pattern satisfied by the small-component shapes."""
    if ncomp <= 1:
        return P_CONNECTED
    singles = 0
    edges = 0
    for i in range(nsmall):
        if shapes[i] == SHAPE_SINGLETON:
            singles += 1
        elif shapes[i] == SHAPE_EDGE:
            edges += 1
    bits = 0
    if ncomp == 2:
        s0 = shapes[0]
        if s0 == SHAPE_SINGLETON:
            bits |= P_L33
        if s0 == SHAPE_SINGLETON or s0 == SHAPE_EDGE:
            bits |= P_L34
        if s0 <= SHAPE_CYCLE3:
            bits |= P_T37_1
    elif ncomp == 3:
        if singles == 2:
            bits |= P_L34 | P_T37_2
        elif singles == 1 and edges == 1:
            bits |= P_T37_3
    elif ncomp == 4:
        if singles == 3:
            bits |= P_T37_4
    return bits


@njit(cache=True, nogil=True)
def sweep_patterns(adj, size, s, start, count, binom, allowed, counters, violations):
    """Classify ``G - F`` for every ``F`` in the chunk.

    ``counters[p]`` counts sets whose first satisfied allowed pattern is ``p``
    (index into PATTERN_BITS); ``counters[N_PATTERNS]`` counts violations.
    Violating masks are written to ``violations`` until it is full.
    Returns the number of disconnecting sets seen.
    """
    full = (1 << size) - 1
    combo = np.empty(max(s, 1), dtype=np.int64)
    comps = np.empty(MAX_COMPONENTS, dtype=np.int64)
    shapes = np.empty(MAX_COMPONENTS, dtype=np.int64)
    unrank(start, size, s, binom, combo)
    disconnected = 0
    nviol = 0
    for off in range(count):
        if off:
            advance(combo, size, s)
        removed = combo_mask(combo, s)
        rest = full & ~removed
        ncomp = 0
        if rest != 0:
            first = flood(adj, rest & -rest, rest)
            comps[0] = first
            ncomp = 1
            rest &= ~first
            while rest != 0:
                comp = flood(adj, rest & -rest, rest)
                comps[ncomp] = comp
                ncomp += 1
                rest &= ~comp
        if ncomp <= 1:
            counters[0] += 1
            continue
        disconnected += 1
        # largest component: max order, ties to the smallest member (discovery order)
        big = 0
        best = popcount(comps[0])
        for i in range(1, ncomp):
            p = popcount(comps[i])
            if p > best:
                best = p
                big = i
        nsmall = 0
        for i in range(ncomp):
            if i != big:
                shapes[nsmall] = shape_code(adj, comps[i])
                nsmall += 1
        bits = pattern_bits(ncomp, shapes, nsmall) & allowed
        if bits == 0:
            counters[N_PATTERNS] += 1
            if nviol < violations.shape[0]:
                violations[nviol] = removed
            nviol += 1
        else:
            p = 0
            while (bits >> p) & 1 == 0:
                p += 1
            counters[p] += 1
    return disconnected
