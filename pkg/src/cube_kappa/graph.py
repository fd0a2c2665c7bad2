"""Dense immutable graphs with bitset vertex sets.

Vertex sets are Python integers used as bitsets (bit ``i`` set means vertex
``i`` is a member).  :class:`VertexSet` wraps such a mask together with the
universe size so that sets from different graphs are never mixed silently.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class VertexSet:
    universe: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.universe:
            raise ValueError("vertex set has members outside the universe")

    @classmethod
    def of(cls, universe: int, members: Iterable[int]) -> VertexSet:
        members = list(members)
        for v in members:
            if not 0 <= v < universe:
                raise ValueError(f"vertex {v} outside universe of size {universe}")
        return cls(universe, mask_of(members))

    @classmethod
    def full(cls, universe: int) -> VertexSet:
        return cls(universe, (1 << universe) - 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.universe and bool(self.bits >> v & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: VertexSet) -> None:
        if self.universe != other.universe:
            raise ValueError("vertex sets come from different universes")

    def __or__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.universe, self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.universe, self.bits & other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.universe, self.bits & ~other.bits)

    def __le__(self, other: VertexSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def min(self) -> int:
        if not self.bits:
            raise ValueError("empty vertex set has no minimum")
        return (self.bits & -self.bits).bit_length() - 1

    def sorted(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"VertexSet({self.sorted()})"


class Graph:
    """Undirected simple graph on vertices ``0 .. vertex_count - 1``.

    Adjacency is stored as one bitmask per vertex.  Instances are immutable
    after construction.
    """

    __slots__ = ("vertex_count", "masks", "_edge_count", "_np")

    def __init__(self, vertex_count: int, masks: Sequence[int]):
        if vertex_count < 0 or len(masks) != vertex_count:
            raise ValueError("one adjacency mask per vertex is required")
        full = (1 << vertex_count) - 1
        for u, m in enumerate(masks):
            if m & ~full:
                raise ValueError(f"vertex {u} has a neighbour outside the graph")
            if m >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
            for v in iter_bits(m):
                if not masks[v] >> u & 1:
                    raise ValueError(f"adjacency is not symmetric at ({u}, {v})")
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "masks", tuple(masks))
        object.__setattr__(self, "_edge_count", sum(m.bit_count() for m in masks) // 2)
        object.__setattr__(self, "_np", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        masks = [0] * vertex_count
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(vertex_count, masks)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def full_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    def vertices(self) -> VertexSet:
        return VertexSet.full(self.vertex_count)

    def vset(self, members: Iterable[int]) -> VertexSet:
        return VertexSet.of(self.vertex_count, members)

    def neighbors(self, u: int) -> VertexSet:
        return VertexSet(self.vertex_count, self.masks[u])

    def degree(self, u: int) -> int:
        return self.masks[u].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in ascending order."""
        for u, m in enumerate(self.masks):
            yield from ((u, v) for v in iter_bits(m >> (u + 1) << (u + 1)))

    def min_degree(self) -> int:
        return min(m.bit_count() for m in self.masks)

    def adjacency_array(self):
        """Adjacency masks as an ``int64`` numpy array (graphs up to 62 vertices)."""
        if self._np is None:
            import numpy as np

            if self.vertex_count > 62:
                raise ValueError("bitset kernels support at most 62 vertices")
            object.__setattr__(self, "_np", np.array(self.masks, dtype=np.int64))
        return self._np

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.masks == other.masks

    def __hash__(self) -> int:
        return hash(self.masks)

    def __repr__(self) -> str:
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count})"


def open_neighborhood_mask(g: Graph, mask: int) -> int:
    out = 0
    for u in iter_bits(mask):
        out |= g.masks[u]
    return out & ~mask


def component_mask(g: Graph, start: int, allowed: int) -> int:
    """Vertices reachable from ``start`` inside ``allowed`` (``start`` must be allowed)."""
    masks = g.masks
    comp = frontier = 1 << start
    while frontier:
        grown = 0
        for v in iter_bits(frontier):
            grown |= masks[v]
        frontier = grown & allowed & ~comp
        comp |= frontier
    return comp


def component_masks(g: Graph, removed: int) -> list[int]:
    """Component bitmasks of ``g - removed``, largest first, ties by smallest member."""
    rest = g.full_mask & ~removed
    comps = []
    while rest:
        c = component_mask(g, (rest & -rest).bit_length() - 1, rest)
        comps.append(c)
        rest &= ~c
    comps.sort(key=lambda c: (-c.bit_count(), (c & -c).bit_length()))
    return comps


def components(g: Graph, removed: VertexSet) -> list[VertexSet]:
    """Connected components of ``g`` with ``removed`` deleted.

    Sorted by size descending, then by smallest member ascending.
    """
    _same_universe(g, removed)
    return [VertexSet(g.vertex_count, c) for c in component_masks(g, removed.bits)]


def neighborhood_of_set(g: Graph, s: VertexSet, closed: bool = False) -> VertexSet:
    _same_universe(g, s)
    nb = open_neighborhood_mask(g, s.bits)
    return VertexSet(g.vertex_count, nb | s.bits if closed else nb)


def is_connected_mask(g: Graph, mask: int) -> bool:
    if not mask:
        return False
    return component_mask(g, (mask & -mask).bit_length() - 1, mask) == mask


def is_h_extra_cut(g: Graph, s: VertexSet, h: int) -> bool:
    """True iff ``g - s`` has at least two components, each of order >= h + 1."""
    _same_universe(g, s)
    return is_h_extra_mask(g, s.bits, h)


def is_h_extra_mask(g: Graph, removed: int, h: int) -> bool:
    rest = g.full_mask & ~removed
    count = 0
    while rest:
        c = component_mask(g, (rest & -rest).bit_length() - 1, rest)
        if c.bit_count() <= h:
            return False
        count += 1
        rest &= ~c
    return count >= 2


class Shape(Enum):
    SINGLETON = "Singleton"
    EDGE = "Edge"
    PATH2 = "Path2"
    CYCLE3 = "Cycle3"
    PATH3 = "Path3"
    CYCLE4 = "Cycle4"
    OTHER = "Other"


@dataclass(frozen=True)
class ComponentShape:
    tag: Shape
    order: int

    def __str__(self) -> str:
        if self.tag is Shape.OTHER:
            return f"Other({self.order})"
        return self.tag.value


def shape_of_mask(g: Graph, mask: int) -> ComponentShape:
    order = mask.bit_count()
    degrees = sorted((g.masks[v] & mask).bit_count() for v in iter_bits(mask))
    edges = sum(degrees) // 2
    tag = Shape.OTHER
    if order == 1:
        tag = Shape.SINGLETON
    elif order == 2:
        tag = Shape.EDGE
    elif order == 3:
        tag = Shape.CYCLE3 if edges == 3 else Shape.PATH2
    elif order == 4:
        # the star K_{1,3} also has three edges; only degrees (1,1,2,2) is a path
        if degrees == [1, 1, 2, 2]:
            tag = Shape.PATH3
        elif degrees == [2, 2, 2, 2]:
            tag = Shape.CYCLE4
    return ComponentShape(tag, order)


def classify_small_component(g: Graph, c: VertexSet) -> ComponentShape:
    _same_universe(g, c)
    if not c or not is_connected_mask(g, c.bits):
        raise ValueError("component must be a non-empty connected vertex set")
    return shape_of_mask(g, c.bits)


def _same_universe(g: Graph, s: VertexSet) -> None:
    if s.universe != g.vertex_count:
        raise ValueError(
            f"vertex set universe {s.universe} does not match graph order {g.vertex_count}"
        )


def cycle_graph(m: int) -> Graph:
    return Graph.from_edges(m, ((i, (i + 1) % m) for i in range(m)))


def complete_graph(m: int) -> Graph:
    return Graph.from_edges(m, ((i, j) for i in range(m) for j in range(i + 1, m)))
