"""k-ary n-cubes: construction, digit-word codec, subcube partitions, symmetries.

Vertex index ``sum(u_i * k**i)`` with ``u_0`` the least significant digit.
Words are written most significant digit first, ``u_{n-1} ... u_0``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, VertexSet, component_masks, iter_bits

MAX_VERTICES = 1 << 16


@dataclass(frozen=True)
class CubeMeta:
    k: int
    n: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"radix k must be >= 2, got {self.k}")
        if self.n < 1:
            raise ValueError(f"dimension n must be >= 1, got {self.n}")
        if self.k**self.n > MAX_VERTICES:
            raise ValueError(f"{self.k}**{self.n} vertices exceeds the limit of {MAX_VERTICES}")

    @property
    def vertex_count(self) -> int:
        return self.k**self.n

    def digit(self, u: int, j: int) -> int:
        return u // self.k**j % self.k

    def with_digit(self, u: int, j: int, value: int) -> int:
        p = self.k**j
        return u + (value % self.k - u // p % self.k) * p

    def to_word(self, index: int) -> tuple[int, ...]:
        """Digits ``(u_{n-1}, ..., u_0)`` of a vertex index."""
        if not 0 <= index < self.vertex_count:
            raise ValueError(f"index {index} outside 0..{self.vertex_count - 1}")
        return tuple(self.digit(index, j) for j in reversed(range(self.n)))

    def to_index(self, word: Sequence[int]) -> int:
        if len(word) != self.n:
            raise ValueError(f"word must have {self.n} digits, got {len(word)}")
        index = 0
        for d in word:
            if not 0 <= d < self.k:
                raise ValueError(f"digit {d} outside 0..{self.k - 1}")
            index = index * self.k + d
        return index

    def word_str(self, index: int) -> str:
        sep = "" if self.k <= 10 else "."
        return sep.join(str(d) for d in self.to_word(index))

    def parse_word(self, text: str) -> int:
        parts = text.split(".") if "." in text else list(text)
        return self.to_index([int(p) for p in parts])


def vertex_codec(meta: CubeMeta, value):
    """Map an index to its digit word, or a digit word (or string) to its index."""
    if isinstance(value, int):
        return meta.to_word(value)
    if isinstance(value, str):
        return meta.parse_word(value)
    return meta.to_index(tuple(value))


def build_kary_cube(k: int, n: int) -> tuple[Graph, CubeMeta]:
    meta = CubeMeta(k, n)
    masks = []
    for u in range(meta.vertex_count):
        m = 0
        for j in range(n):
            d = meta.digit(u, j)
            m |= 1 << meta.with_digit(u, j, d + 1)
            m |= 1 << meta.with_digit(u, j, d - 1)
        masks.append(m)
    return Graph(meta.vertex_count, masks), meta


@dataclass(frozen=True)
class SubcubePartition:
    dimension: int
    classes: tuple[VertexSet, ...]
    cross_edges: tuple[int, ...]
    fault_slices: tuple[VertexSet, ...] | None = None
    disconnected: frozenset[int] | None = None  # the index set I
    connected: frozenset[int] | None = None  # the index set J

    def class_of(self, u: int) -> int:
        for i, c in enumerate(self.classes):
            if u in c:
                return i
        raise ValueError(f"vertex {u} not in any class")


def partition_over_dimension(
    g: Graph, meta: CubeMeta, j: int, faults: VertexSet | None = None
) -> SubcubePartition:
    if not 0 <= j < meta.n:
        raise ValueError(f"dimension {j} outside 0..{meta.n - 1}")
    size = meta.vertex_count
    class_masks = [0] * meta.k
    for u in range(size):
        class_masks[meta.digit(u, j)] |= 1 << u
    cross = []
    for i in range(meta.k):
        nxt = class_masks[(i + 1) % meta.k]
        count = sum((g.masks[u] & nxt).bit_count() for u in iter_bits(class_masks[i]))
        cross.append(count)
    # for k == 2 the "pairs" (0,1) and (1,0) are the same set of edges
    expected = meta.k ** (meta.n - 1)
    if any(c != expected for c in cross):
        raise AssertionError(f"cross-edge counts {cross} differ from {expected}")
    classes = tuple(VertexSet(size, m) for m in class_masks)
    if faults is None:
        return SubcubePartition(j, classes, tuple(cross))
    slices = tuple(faults & c for c in classes)
    bad = set()
    for i, c in enumerate(class_masks):
        # Q[i] - F_i is disconnected iff removing everything outside Q[i] plus F_i splits it
        comps = component_masks(g, (g.full_mask & ~c) | slices[i].bits)
        if len(comps) != 1:
            bad.add(i)
    return SubcubePartition(
        j,
        classes,
        tuple(cross),
        slices,
        frozenset(bad),
        frozenset(range(meta.k)) - frozenset(bad),
    )


def outer_neighbors(meta: CubeMeta, u: int, j: int) -> tuple[int, int]:
    """``(left, right)`` neighbours of ``u`` across dimension ``j``."""
    if not 0 <= j < meta.n:
        raise ValueError(f"dimension {j} outside 0..{meta.n - 1}")
    d = meta.digit(u, j)
    return meta.with_digit(u, j, d - 1), meta.with_digit(u, j, d + 1)


@dataclass(frozen=True)
class CubeAutomorphism:
    """``u -> reflect(u[perm]) + shift`` applied digit-wise.

    ``perm[i]`` is the source digit position for target position ``i``.
    """

    shift: tuple[int, ...]
    perm: tuple[int, ...] = field(default=())
    reflect: tuple[bool, ...] = field(default=())

    def check(self, meta: CubeMeta) -> None:
        n = meta.n
        perm = self.perm or tuple(range(n))
        reflect = self.reflect or (False,) * n
        if len(self.shift) != n or len(perm) != n or len(reflect) != n:
            raise ValueError("automorphism arity does not match the cube dimension")
        if sorted(perm) != list(range(n)):
            raise ValueError(f"{perm} is not a permutation of digit positions")


def apply_automorphism(meta: CubeMeta, a: CubeAutomorphism, u: int) -> int:
    a.check(meta)
    n, k = meta.n, meta.k
    perm = a.perm or tuple(range(n))
    reflect = a.reflect or (False,) * n
    out = 0
    for i in reversed(range(n)):
        d = meta.digit(u, perm[i])
        if reflect[i]:
            d = -d
        out = out * k + (d + a.shift[i]) % k
    return out


def automorphism_generators(meta: CubeMeta) -> list[CubeAutomorphism]:
    """Unit translations, adjacent transpositions of positions, and single reflections."""
    n = meta.n
    zero = (0,) * n
    gens = []
    for i in range(n):
        gens.append(CubeAutomorphism(tuple(1 if p == i else 0 for p in range(n))))
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(CubeAutomorphism(zero, tuple(perm)))
    for i in range(n):
        gens.append(CubeAutomorphism(zero, tuple(range(n)), tuple(p == i for p in range(n))))
    return gens


def vertex_permutation(meta: CubeMeta, a: CubeAutomorphism) -> list[int]:
    return [apply_automorphism(meta, a, u) for u in range(meta.vertex_count)]


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(g.vertex_count)):
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges())


def orbits(size: int, perms: Iterable[Sequence[int]]) -> list[list[int]]:
    """Orbits of the group generated by ``perms`` acting on ``range(size)``."""
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x in range(size):
            a, b = find(x), find(p[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(size):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def edge_orbits(g: Graph, perms: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    edges = list(g.edges())
    index = {e: i for i, e in enumerate(edges)}
    edge_perms = []
    for p in perms:
        edge_perms.append(
            [index[(min(p[u], p[v]), max(p[u], p[v]))] for u, v in edges]
        )
    return [[edges[i] for i in orb] for orb in orbits(len(edges), edge_perms)]


def translation_orbit(meta: CubeMeta, u: int) -> set[int]:
    n = meta.n
    return {
        apply_automorphism(meta, CubeAutomorphism(tuple(t)), u)
        for t in itertools.product(range(meta.k), repeat=n)
    }
