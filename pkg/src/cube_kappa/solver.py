"""Exact vertex connectivity and h-extra connectivity.

Two engines compute h-extra connectivity:

* :func:`exact_extra_connectivity` walks all vertex subsets by increasing
  size (lexicographic within a size) and stops at the first h-extra cut.
* :func:`fragment_search_bounds` enumerates connected vertex sets ``A`` (the
  would-be smallest component) and bounds the answer by ``|N(A)|``.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from math import comb

from . import kernels
from .cube import CubeMeta, build_kary_cube
from .graph import (
    Graph,
    VertexSet,
    component_masks,
    components,
    is_connected_mask,
    is_h_extra_mask,
    iter_bits,
)
from .isoperimetry import has_profile, open_profile
from .sweep import chunks, default_workers, run_ordered, waves

log = logging.getLogger(__name__)

KERNEL_LIMIT = 62


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class Budget:
    """Search limits.

    ``max_cut_size`` caps the subset size tried by exhaustive search,
    ``max_work`` caps subsets examined (exhaustive) or search nodes
    (fragment search), ``max_fragment`` caps ``|A|`` in fragment search.
    """

    max_cut_size: int | None = None
    max_work: int | None = None
    max_fragment: int | None = None


class EvidenceKind(str, Enum):
    EXHAUSTIVE = "Exhaustive"
    FRAGMENT_EXACT = "FragmentExact"
    BOUNDS_ONLY = "BoundsOnly"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Evidence:
    kind: EvidenceKind
    lower: int | None = None
    upper: int | None = None
    searched_up_to: int | None = None
    work: int = 0


@dataclass(frozen=True)
class Certificate:
    cut: VertexSet
    components: tuple[VertexSet, ...]


@dataclass(frozen=True)
class ExtraConnectivityResult:
    """Outcome of an h-extra connectivity computation.

    ``value`` is exact for ``Exhaustive`` and ``FragmentExact`` evidence.
    Under ``BoundsOnly`` it is the best certified upper bound (the size of
    ``certificate.cut``), and ``None`` when no cut was found.
    """

    h: int
    value: int | None
    certificate: Certificate | None
    evidence: Evidence


def _certificate(g: Graph, cut_mask: int) -> Certificate:
    cut = VertexSet(g.vertex_count, cut_mask)
    return Certificate(cut, tuple(components(g, cut)))


def _require_connected(g: Graph) -> None:
    if g.vertex_count == 0 or not is_connected_mask(g, g.full_mask):
        raise ValueError("graph must be connected")


# ---------------------------------------------------------------- connectivity


def local_connectivity(g: Graph, s: int, t: int, limit: int | None = None) -> int:
    """Maximum number of internally vertex-disjoint s-t paths (s, t nonadjacent).

    Augmenting paths in the split graph where each vertex ``v`` becomes
    ``v_in -> v_out`` with capacity one.  Stops early once ``limit`` is reached.
    """
    if s == t or g.has_edge(s, t):
        raise ValueError("endpoints must be distinct and nonadjacent")
    adj = [list(iter_bits(m)) for m in g.masks]
    used = [False] * g.vertex_count
    into = [-1] * g.vertex_count  # predecessor of an internal vertex on its path
    flow = 0
    limit = g.vertex_count if limit is None else limit
    while flow < limit:
        # states: 2*v is v_in, 2*v + 1 is v_out
        start, goal = 2 * s + 1, 2 * t
        parent = {start: -1}
        queue = deque([start])
        while queue and goal not in parent:
            x = queue.popleft()
            v, out = divmod(x, 2)
            steps = []
            if out:
                steps.extend(2 * w for w in adj[v])
                if used[v]:
                    steps.append(2 * v)
            else:
                if not used[v] and v != t:
                    steps.append(2 * v + 1)
                if into[v] >= 0:
                    steps.append(2 * into[v] + 1)
            for y in steps:
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        if goal not in parent:
            break
        path = [goal]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        path.reverse()
        for x, y in zip(path, path[1:]):
            v, vo = divmod(x, 2)
            w, wo = divmod(y, 2)
            if v == w:
                used[v] = bool(wo)  # in->out uses v, out->in releases it
            elif vo:  # forward arc v_out -> w_in
                into[w] = v
            elif into[v] == w:  # reverse of w_out -> v_in
                into[v] = -1
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity by Menger's theorem.

    Uses the Esfahanian-Hakimi pair selection: a minimum-degree vertex ``v``
    against every non-neighbour, plus every nonadjacent pair of neighbours of
    ``v``.  Complete graphs follow the convention kappa(K_m) = m - 1.
    """
    size = g.vertex_count
    if size < 2:
        raise ValueError("vertex connectivity needs at least two vertices")
    if not is_connected_mask(g, g.full_mask):
        return 0
    v = min(range(size), key=g.degree)
    best = g.degree(v)
    if best == size - 1 and g.edge_count == size * (size - 1) // 2:
        return size - 1
    for w in range(size):
        if w != v and not g.has_edge(v, w):
            best = min(best, local_connectivity(g, v, w, best))
    nbrs = list(iter_bits(g.masks[v]))
    for x, y in itertools.combinations(nbrs, 2):
        if not g.has_edge(x, y):
            best = min(best, local_connectivity(g, x, y, best))
    return best


def common_neighbor_count(g: Graph, u: int, v: int) -> int:
    if u == v:
        raise ValueError("vertices must be distinct")
    return (g.masks[u] & g.masks[v]).bit_count()


def _subsets_of_size(g: Graph, s: int, workers: int) -> list[int]:
    """Every disconnecting vertex set of order ``s``, in lexicographic order."""
    size = g.vertex_count
    if size <= KERNEL_LIMIT:
        import numpy as np

        adj = g.adjacency_array()
        binom = kernels.binomial_table(size)

        def run(chunk):
            start, count = chunk
            out = np.empty(count, dtype=np.int64)
            found = kernels.all_cuts_of_size(adj, size, s, start, count, binom, out)
            return out[:found].tolist()

        return [m for part in run_ordered(run, chunks(size, s), workers) for m in part]
    found = []
    for combo in itertools.combinations(range(size), s):
        removed = sum(1 << v for v in combo)
        if len(component_masks(g, removed)) >= 2:
            found.append(removed)
    return found


def minimum_vertex_cuts(g: Graph, workers: int | None = None) -> list[VertexSet]:
    """All vertex cuts of order kappa(g), in lexicographic order."""
    kappa = vertex_connectivity(g)
    return [
        VertexSet(g.vertex_count, m)
        for m in _subsets_of_size(g, kappa, workers or default_workers())
    ]


def is_super_connected(g: Graph, workers: int | None = None) -> bool:
    """Every minimum vertex cut leaves exactly two components, one a singleton."""
    if g.vertex_count < 3:
        raise ValueError("super-connectedness needs at least three vertices")
    if not is_connected_mask(g, g.full_mask):
        raise ValueError("graph must be connected")
    for cut in minimum_vertex_cuts(g, workers):
        comps = component_masks(g, cut.bits)
        if len(comps) != 2 or comps[-1].bit_count() != 1:
            return False
    return True


# ------------------------------------------------------- exhaustive extra cuts


def _first_cut_rank(g: Graph, s: int, h: int, workers: int) -> int | None:
    size = g.vertex_count
    if size <= KERNEL_LIMIT:
        adj = g.adjacency_array()
        binom = kernels.binomial_table(size)

        def run(chunk):
            return kernels.first_extra_cut(adj, size, s, chunk[0], chunk[1], h, binom)

        for wave in waves(chunks(size, s), max(1, workers) * 4):
            for (start, _), off in zip(wave, run_ordered(run, wave, workers)):
                if off >= 0:
                    return start + off
        return None
    for rank, combo in enumerate(itertools.combinations(range(size), s)):
        if is_h_extra_mask(g, sum(1 << v for v in combo), h):
            return rank
    return None


def exact_extra_connectivity(
    g: Graph, h: int, budget: Budget | None = None, workers: int | None = None
) -> ExtraConnectivityResult:
    """Minimum h-extra cut by exhaustive enumeration in increasing size.

    The certificate is the lexicographically smallest cut of minimum order.
    """
    from .sweep import unrank_lex

    if h < 0:
        raise ValueError("h must be non-negative")
    _require_connected(g)
    budget = budget or Budget()
    workers = workers or default_workers()
    size = g.vertex_count
    top = size if budget.max_cut_size is None else min(size, budget.max_cut_size)
    work = 0
    for s in range(top + 1):
        level = comb(size, s)
        if budget.max_work is not None and work + level > budget.max_work:
            log.info("exhaustive search stopped before size %d (work %d)", s, work)
            return ExtraConnectivityResult(
                h, None, None,
                Evidence(EvidenceKind.INCONCLUSIVE, lower=s, searched_up_to=s - 1, work=work),
            )
        rank = _first_cut_rank(g, s, h, workers)
        if rank is not None:
            cut = sum(1 << v for v in unrank_lex(rank, size, s))
            return ExtraConnectivityResult(
                h,
                s,
                _certificate(g, cut),
                Evidence(EvidenceKind.EXHAUSTIVE, lower=s, upper=s, searched_up_to=s,
                         work=work + rank + 1),
            )
        work += level
    return ExtraConnectivityResult(
        h, None, None, Evidence(EvidenceKind.EXHAUSTIVE, searched_up_to=top, work=work)
    )


# ------------------------------------------------------------ fragment search


def _check_cube(g: Graph, meta: CubeMeta) -> None:
    if build_kary_cube(meta.k, meta.n)[0] != g:
        raise ValueError(f"graph is not the {meta.k}-ary {meta.n}-cube described by meta")


def fragment_search_bounds(
    g: Graph,
    h: int,
    meta: CubeMeta | None = None,
    budget: Budget | None = None,
    symmetry: bool = False,
    isoperimetric: bool = True,
) -> ExtraConnectivityResult:
    """Bound kappa_h by enumerating connected fragments ``A``.

    Let ``A`` be the smallest component left by an h-extra cut ``S``.  Then
    ``A`` is connected, ``h + 1 <= |A|`` and ``N(A)`` lies in ``S``.  Every
    component of ``G - N[A]`` with at most ``h`` vertices is walled off by
    ``N(A)``, so it lies in ``S`` too; call their union ``small(A)``.  The
    rest, ``V - N[A] - small(A)``, holds the other components of ``G - S``
    and so has at least ``max(|A|, h + 1)`` vertices.  Conversely, for every
    such ``A`` the set ``N(A) | small(A)`` is an h-extra cut.  Hence kappa_h is
    the minimum of ``|N(A)| + |small(A)|`` over the admissible ``A`` and a
    completed search is exact.  Pruning uses lower bounds on ``|N(A)|`` alone.
    A search stopped by its budget reports ``BoundsOnly`` (or ``Inconclusive``
    when no cut was found yet).

    ``symmetry`` fixes vertex 0 inside ``A`` and needs ``meta`` (the cube is
    vertex transitive).  With ``meta`` for k <= 3 (and ``isoperimetric``) the
    exact isoperimetric profile prunes fragments whose order forces a large
    neighbourhood.
    """
    if h < 0:
        raise ValueError("h must be non-negative")
    if symmetry and meta is None:
        raise ValueError("symmetry reduction requires cube metadata (vertex transitivity)")
    if meta is not None:
        _check_cube(g, meta)
    _require_connected(g)
    budget = budget or Budget()
    size = g.vertex_count
    full = g.full_mask
    masks = g.masks
    need = h + 1
    max_frag = min(size, budget.max_fragment or size)
    profile = None
    if isoperimetric and meta is not None and has_profile(meta.k, meta.n):
        profile = open_profile(meta.k, meta.n)

    def floor_at(m: int) -> int:
        return profile[m] if profile is not None else 0

    def room(m: int) -> int:
        # largest |N(A)| that still leaves a remainder of max(m, h + 1) vertices
        return size - m - max(m, need)

    state = {"U": None, "cut": 0, "nodes": 0}
    # viable[m]: some A of order m could still have |N(A)| below the current U
    viable_prefix: list[int] = []

    def refresh() -> None:
        limit = size + 1 if state["U"] is None else state["U"]
        acc = 0
        viable_prefix.clear()
        for m in range(size + 2):
            viable_prefix.append(acc)
            if m <= size and floor_at(m) < limit and floor_at(m) <= room(m):
                acc += 1

    def extendable(m_min: int, locked: int) -> bool:
        limit = size + 1 if state["U"] is None else state["U"]
        if locked >= limit:
            return False
        # room() decreases in m, so the admissible orders form a prefix of [m_min, max_frag]
        hi = max_frag
        while hi >= m_min and locked > room(hi):
            hi -= 1
        return hi >= m_min and viable_prefix[hi + 1] - viable_prefix[m_min] > 0

    refresh()

    def visit(a: int, nb: int, excluded: int) -> None:
        state["nodes"] += 1
        if budget.max_work is not None and state["nodes"] > budget.max_work:
            raise BudgetExceeded
        m = a.bit_count()
        if m >= need:
            rest = full & ~(a | nb)
            if rest.bit_count() >= max(m, need):
                # components of G - N[A] with at most h vertices must lie in any
                # h-extra cut that contains N(A)
                small = 0
                for c in component_masks(g, a | nb):
                    if c.bit_count() <= h:
                        small |= c
                cost = nb.bit_count() + small.bit_count()
                if (rest & ~small).bit_count() >= max(m, need) and (
                    state["U"] is None or cost < state["U"]
                ):
                    state["U"] = cost
                    state["cut"] = nb | small
                    refresh()
        if m >= max_frag:
            return
        locked = (nb & excluded).bit_count()
        blocked = excluded
        for c in iter_bits(nb & ~excluded):
            if not extendable(max(m + 1, need), locked):
                break
            grown = a | (1 << c)
            visit(grown, (nb | masks[c]) & ~grown, blocked)
            blocked |= 1 << c
            locked += 1

    bases = [0] if symmetry else range(size)
    exhausted = False
    try:
        for b in bases:
            below = (1 << b) - 1 if not symmetry else 0
            visit(1 << b, masks[b] & ~(1 << b), below)
    except BudgetExceeded:
        exhausted = True

    U = state["U"]
    cert = _certificate(g, state["cut"]) if U is not None else None
    work = state["nodes"]
    if exhausted:
        lower = _fallback_lower_bound(g, h, profile, room)
        log.info("fragment search hit its budget after %d nodes", work)
        if U is None:
            return ExtraConnectivityResult(
                h, None, None, Evidence(EvidenceKind.INCONCLUSIVE, lower=lower, work=work)
            )
        return ExtraConnectivityResult(
            h, U, cert, Evidence(EvidenceKind.BOUNDS_ONLY, lower=min(lower, U), upper=U, work=work)
        )
    if U is None:
        # no admissible fragment at all: no h-extra cut exists
        return ExtraConnectivityResult(
            h, None, None, Evidence(EvidenceKind.FRAGMENT_EXACT, work=work)
        )
    return ExtraConnectivityResult(
        h, U, cert, Evidence(EvidenceKind.FRAGMENT_EXACT, lower=U, upper=U, work=work)
    )


def _fallback_lower_bound(g: Graph, h: int, profile, room) -> int:
    """A lower bound on kappa_h that needs no fragment enumeration."""
    lower = vertex_connectivity(g)
    if profile is not None:
        feasible = [profile[m] for m in range(h + 1, g.vertex_count + 1) if profile[m] <= room(m)]
        if feasible:
            lower = max(lower, min(feasible))
    return lower
