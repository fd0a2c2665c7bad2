"""Executable checks of the structural claims about Q_n^3.

Exhaustive sweeps run through the compiled subset kernels; sampled checks
draw fault sets from a generator seeded per sample, so any batching of the
samples reproduces the same outcome.
"""
from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable

import numpy as np

from . import kernels
from .constructions import extremal_cut
from .cube import (
    CubeMeta,
    automorphism_generators,
    build_kary_cube,
    edge_orbits,
    is_automorphism,
    orbits,
    outer_neighbors,
    partition_over_dimension,
    vertex_permutation,
)
from .graph import Graph, VertexSet, component_mask, component_masks, iter_bits
from .graph import open_neighborhood_mask
from .patterns import PRIORITY, CutReport, Pattern, allowed_bits, cut_report
from .sweep import chunks, default_workers, run_ordered

log = logging.getLogger(__name__)

DEFAULT_SWEEP_BUDGET = 200_000_000
MAX_VIOLATIONS = 100


@dataclass
class VerificationOutcome:
    claim: str
    scope: dict
    checked_count: int
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_common_neighbors(meta: CubeMeta) -> VerificationOutcome:
    """Adjacent pairs share one neighbour; nonadjacent pairs share none or two."""
    if meta.k != 3 or meta.n < 2:
        raise ValueError("the common-neighbour law is stated for k = 3, n >= 2")
    g, _ = build_kary_cube(meta.k, meta.n)
    bad = []
    checked = 0
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            checked += 1
            c = (g.masks[u] & g.masks[v]).bit_count()
            if (c != 1) if g.has_edge(u, v) else (c not in (0, 2)):
                bad.append({"u": meta.word_str(u), "v": meta.word_str(v), "common": c})
    return VerificationOutcome(
        "lemma31", {"k": meta.k, "n": meta.n, "mode": "exhaustive"}, checked, bad
    )


# ----------------------------------------------------------- cut structure


def exhaustive_count(size: int, bound: int) -> int:
    return sum(comb(size, s) for s in range(bound + 1))


def verify_bounded_cut_structure(
    g: Graph,
    size_bound: int,
    allowed: Iterable[Pattern],
    mode: str = "exhaustive",
    seed: int = 0,
    count: int = 0,
    budget: int = DEFAULT_SWEEP_BUDGET,
    workers: int | None = None,
    max_violations: int = MAX_VIOLATIONS,
    claim: str = "cut-structure",
    meta: CubeMeta | None = None,
) -> VerificationOutcome:
    """Check that every ``F`` with ``|F| <= size_bound`` leaves an allowed pattern.

    ``mode="exhaustive"`` visits all subsets up to the bound;
    ``mode="sample"`` draws ``count`` seeded fault sets (see :func:`sample_fault_set`).
    """
    allowed = frozenset(allowed)
    if mode == "exhaustive":
        return _exhaustive_sweep(g, size_bound, allowed, budget, workers, max_violations, claim)
    if mode == "sample":
        return _sampled_sweep(g, size_bound, allowed, seed, count, max_violations, claim, meta)
    raise ValueError(f"unknown mode {mode!r}")


def _exhaustive_sweep(g, bound, allowed, budget, workers, max_violations, claim):
    size = g.vertex_count
    total = exhaustive_count(size, bound)
    if total > budget:
        raise ValueError(f"exhaustive sweep of {total} subsets exceeds the budget of {budget}")
    if size > kernels_limit():
        raise ValueError("exhaustive sweeps need a graph of at most 62 vertices")
    workers = workers or default_workers()
    adj = g.adjacency_array()
    binom = kernels.binomial_table(size)
    mask_bits = allowed_bits(allowed)
    counts = np.zeros(kernels.N_PATTERNS + 1, dtype=np.int64)
    disconnected_by_size = {}
    violating: list[int] = []

    def run(job):
        s, start, n = job
        counters = np.zeros(kernels.N_PATTERNS + 1, dtype=np.int64)
        viol = np.zeros(max_violations, dtype=np.int64)
        disc = kernels.sweep_patterns(adj, size, s, start, n, binom, mask_bits, counters, viol)
        nv = int(counters[kernels.N_PATTERNS])
        return s, disc, counters, viol[: min(nv, max_violations)].tolist()

    checked = 0
    for s in range(bound + 1):
        jobs = [(s, start, n) for start, n in chunks(size, s)]
        for s_, disc, counters, viol in run_ordered(run, jobs, workers):
            counts += counters
            disconnected_by_size[s_] = disconnected_by_size.get(s_, 0) + disc
            room = max_violations - len(violating)
            violating.extend(viol[:room])
        checked += comb(size, s)
    reports = [cut_report(g, VertexSet(size, m), allowed) for m in violating]
    first = next((s for s in sorted(disconnected_by_size) if disconnected_by_size[s]), None)
    details = {
        "pattern_counts": {
            p.value: int(counts[i]) for i, p in enumerate(PRIORITY) if counts[i]
        },
        "violation_count": int(counts[kernels.N_PATTERNS]),
        "disconnecting_sets": int(sum(disconnected_by_size.values())),
        "smallest_disconnecting_size": first,
    }
    scope = {
        "mode": "exhaustive",
        "bound": bound,
        "allowed": sorted(p.value for p in allowed),
        "vertex_count": size,
    }
    return VerificationOutcome(claim, scope, checked, reports, details)


def kernels_limit() -> int:
    from .solver import KERNEL_LIMIT

    return KERNEL_LIMIT


# ----------------------------------------------------------------- sampling


def _random_fragment(g: Graph, rng: random.Random, order: int) -> int:
    """A connected vertex set grown from a random vertex by random neighbours."""
    a = 1 << rng.randrange(g.vertex_count)
    nb = g.masks[(a.bit_length() - 1)]
    while a.bit_count() < order:
        frontier = list(iter_bits(nb & ~a))
        if not frontier:
            break
        c = rng.choice(frontier)
        a |= 1 << c
        nb |= g.masks[c]
    return a


def _trim_or_pad(g: Graph, rng: random.Random, faults: int, target: int, keep: int = 0) -> int:
    members = list(iter_bits(faults))
    if len(members) > target:
        rng.shuffle(members)
        faults = sum(1 << v for v in members[:target])
    else:
        free = [v for v in range(g.vertex_count) if not (faults | keep) >> v & 1]
        for v in rng.sample(free, min(len(free), target - len(members))):
            faults |= 1 << v
    return faults


FAMILIES = ("uniform", "fragment", "multi-fragment", "extremal")


def sample_fault_set(
    g: Graph, bound: int, seed: int, index: int, meta: CubeMeta | None = None
) -> tuple[str, int]:
    """The ``index``-th fault set of the sample stream for ``seed``.

    Families rotate with the index: uniform random sets of order ``bound``;
    neighbourhoods of one random fragment (1-4 vertices) padded with random
    vertices; neighbourhoods of two or three small fragments; and (with cube
    metadata, k = 3, n >= 3) the h = 3 extremal cut moved by a random
    translation and padded.  Oversized neighbourhoods are trimmed at random.
    """
    rng = random.Random(f"{seed}:{index}")
    families = FAMILIES if meta is not None and meta.k == 3 and meta.n >= 3 else FAMILIES[:3]
    family = families[index % len(families)]
    size = g.vertex_count
    if family == "uniform":
        return family, sum(1 << v for v in rng.sample(range(size), bound))
    target = rng.randint(max(1, bound - 6), bound)
    if family == "fragment":
        a = _random_fragment(g, rng, rng.randint(1, 4))
        return family, _trim_or_pad(g, rng, open_neighborhood_mask(g, a), target, keep=a)
    if family == "multi-fragment":
        a = 0
        for _ in range(rng.randint(2, 3)):
            a |= _random_fragment(g, rng, rng.randint(1, 2))
        return family, _trim_or_pad(g, rng, open_neighborhood_mask(g, a), target, keep=a)
    report = _extremal(g, meta)
    shift = rng.randrange(size)
    moved = 0
    frag = 0
    for v in report.cut:
        moved |= 1 << _translate(meta, v, shift)
    for v in report.fragment.vertices:
        frag |= 1 << _translate(meta, v, shift)
    return family, _trim_or_pad(g, rng, moved, target, keep=frag)


_EXTREMAL: dict[tuple[int, int], object] = {}


def _extremal(g: Graph, meta: CubeMeta):
    key = (meta.k, meta.n)
    if key not in _EXTREMAL:
        _EXTREMAL[key] = extremal_cut(g, meta, 3)
    return _EXTREMAL[key]


def _translate(meta: CubeMeta, u: int, by: int) -> int:
    out = 0
    p = 1
    for _ in range(meta.n):
        out += ((u // p + by // p) % meta.k) * p
        p *= meta.k
    return out


def _sampled_sweep(g, bound, allowed, seed, count, max_violations, claim, meta):
    reports: list[CutReport] = []
    counts: Counter = Counter()
    families: Counter = Counter()
    violation_count = 0
    for i in range(count):
        family, faults = sample_fault_set(g, bound, seed, i, meta)
        families[family] += 1
        report = cut_report(g, VertexSet(g.vertex_count, faults), allowed)
        counts[report.matched_pattern.value] += 1
        if report.matched_pattern is Pattern.VIOLATION:
            violation_count += 1
            if len(reports) < max_violations:
                reports.append(report)
    details = {
        "pattern_counts": dict(sorted(counts.items())),
        "violation_count": violation_count,
        "families": dict(sorted(families.items())),
    }
    scope = {
        "mode": "sample",
        "bound": bound,
        "seed": seed,
        "samples": count,
        "allowed": sorted(p.value for p in allowed),
        "vertex_count": g.vertex_count,
    }
    return VerificationOutcome(claim, scope, count, reports, details)


# ------------------------------------------------------- subcube union check


def verify_subcube_union_connected(
    g: Graph,
    meta: CubeMeta,
    j: int,
    seed: int,
    count: int,
    extra_faults: Iterable[VertexSet] = (),
    max_violations: int = MAX_VIOLATIONS,
) -> VerificationOutcome:
    """For sampled ``F`` with ``|F| <= 8n - 13`` and ``|I| <= 2``, ``Q[J] - F_J`` is connected.

    Also checks that a component ``H`` of ``G - F`` missing ``Q[J] - F_J``
    has ``N(H)`` inside ``F`` on both the ``Q[I]`` and the ``Q[J]`` side.
    ``extra_faults`` are checked in addition to the ``count`` samples.
    """
    if meta.k != 3 or meta.n < 4:
        raise ValueError("the subcube-union claim needs k = 3 and n >= 4")
    if not 0 <= j < meta.n:
        raise ValueError(f"dimension {j} outside 0..{meta.n - 1}")
    bound = 8 * meta.n - 13
    size = g.vertex_count
    full = g.full_mask
    classes = [0] * meta.k
    for u in range(size):
        classes[meta.digit(u, j)] |= 1 << u

    def check(faults: int) -> tuple[str, dict | None]:
        disconnected = set()
        for i, c in enumerate(classes):
            alive = c & ~faults
            if not alive or component_mask(g, (alive & -alive).bit_length() - 1, alive) != alive:
                disconnected.add(i)
        if len(disconnected) == 3:
            return "skipped", None
        q_j = 0
        for i, c in enumerate(classes):
            if i not in disconnected:
                q_j |= c & ~faults
        if q_j and component_mask(g, (q_j & -q_j).bit_length() - 1, q_j) != q_j:
            return "checked", {"faults": faults, "I": sorted(disconnected), "reason": "Q[J]-F_J disconnected"}
        q_i = full & ~q_j & ~faults
        for h in component_masks(g, faults):
            if h & q_j:
                continue
            nb = open_neighborhood_mask(g, h)
            if nb & q_i & ~faults or nb & q_j & ~faults:
                return "checked", {"faults": faults, "I": sorted(disconnected), "reason": "N(H) escapes F"}
        return "checked", None

    stats: Counter = Counter()
    bad = []
    sets = [sample_fault_set(g, rng_bound, seed, i, meta)[1] for i, rng_bound in
            ((i, random.Random(f"{seed}:{i}:size").randint(1, bound)) for i in range(count))]
    sets.extend(f.bits for f in extra_faults)
    for faults in sets:
        if faults.bit_count() > bound:
            raise ValueError(f"fault set of order {faults.bit_count()} exceeds 8n-13 = {bound}")
        status, problem = check(faults)
        stats[status] += 1
        if problem and len(bad) < max_violations:
            problem["faults"] = [meta.word_str(v) for v in iter_bits(problem["faults"])]
            bad.append(problem)
    scope = {"mode": "sample", "k": meta.k, "n": meta.n, "dimension": j, "seed": seed,
             "samples": count, "extra": len(sets) - count, "bound": bound}
    return VerificationOutcome(
        "lemma36", scope, len(sets), bad,
        {"checked": stats["checked"], "skipped_all_disconnected": stats["skipped"]},
    )


# ------------------------------------------------- regularity and symmetry


def verify_regularity_partition_transitivity(meta: CubeMeta, max_vertices: int = 81) -> VerificationOutcome:
    """Degree and edge counts, transitivity under the generators, outer neighbours."""
    if meta.vertex_count > max_vertices:
        raise ValueError(f"orbit computation limited to {max_vertices} vertices")
    g, _ = build_kary_cube(meta.k, meta.n)
    k, n = meta.k, meta.n
    problems = []
    degree = 2 * n if k >= 3 else n
    edges = n * k**n if k >= 3 else n * k ** (n - 1)
    degrees = {g.degree(u) for u in range(g.vertex_count)}
    if degrees != {degree}:
        problems.append({"check": "regularity", "degrees": sorted(degrees), "expected": degree})
    if g.edge_count != edges:
        problems.append({"check": "edge_count", "found": g.edge_count, "expected": edges})
    perms = [vertex_permutation(meta, a) for a in automorphism_generators(meta)]
    for a, p in zip(automorphism_generators(meta), perms):
        if not is_automorphism(g, p):
            problems.append({"check": "automorphism", "generator": repr(a)})
    v_orbits = orbits(g.vertex_count, perms)
    e_orbits = edge_orbits(g, perms)
    if len(v_orbits) != 1:
        problems.append({"check": "vertex_transitive", "orbits": len(v_orbits)})
    if len(e_orbits) != 1:
        problems.append({"check": "edge_transitive", "orbits": len(e_orbits)})
    for j in range(n):
        try:
            part = partition_over_dimension(g, meta, j)
        except AssertionError:
            problems.append({"check": "partition", "dimension": j})
            continue
        if any(len(c) != k ** (n - 1) for c in part.classes):
            problems.append({"check": "partition_sizes", "dimension": j})
    if k >= 3:
        for u in range(g.vertex_count):
            for j in range(n):
                left, right = outer_neighbors(meta, u, j)
                d = meta.digit(u, j)
                ok = (
                    left != right
                    and meta.digit(left, j) == (d - 1) % k
                    and meta.digit(right, j) == (d + 1) % k
                    and g.has_edge(u, left)
                    and g.has_edge(u, right)
                )
                if not ok:
                    problems.append({"check": "outer_neighbors", "u": meta.word_str(u), "j": j})
    details = {
        "edges": g.edge_count,
        "degree": sorted(degrees),
        "vertex_orbits": [len(o) for o in v_orbits],
        "edge_orbits": [len(o) for o in e_orbits],
    }
    return VerificationOutcome(
        "structure", {"k": k, "n": n, "mode": "exhaustive"}, g.vertex_count, problems, details
    )
