"""Classification of ``G - F`` by the orders and shapes of its small components."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from . import kernels
from .graph import ComponentShape, Graph, Shape, VertexSet, component_masks, shape_of_mask


class Pattern(str, Enum):
    CONNECTED = "Connected"
    L33 = "L33"  # two components, one a singleton
    L34 = "L34"  # two components with a singleton/edge side, or three with two singletons
    T37_1 = "T37-1"  # two components, small side singleton|edge|Path2|Cycle3
    T37_2 = "T37-2"  # three components, two singletons
    T37_3 = "T37-3"  # three components, a singleton and an edge
    T37_4 = "T37-4"  # four components, three singletons
    VIOLATION = "Violation"


# order in which a report picks its matched pattern; mirrors kernels.PATTERN_BITS
PRIORITY = (
    Pattern.CONNECTED,
    Pattern.L33,
    Pattern.L34,
    Pattern.T37_1,
    Pattern.T37_2,
    Pattern.T37_3,
    Pattern.T37_4,
)
BIT = dict(zip(PRIORITY, kernels.PATTERN_BITS))

ONE_SINGLETON = frozenset({Pattern.L33})
EDGE_OR_TWO_SINGLETONS = frozenset({Pattern.L34})
SMALL_SIDES = frozenset({Pattern.T37_1, Pattern.T37_2, Pattern.T37_3, Pattern.T37_4})


def satisfied_patterns(small: Iterable[ComponentShape], ncomp: int) -> set[Pattern]:
    """Every named pattern met by a graph with ``ncomp`` components.

    ``small`` holds the shapes of all components except the largest.
    """
    if ncomp <= 1:
        return {Pattern.CONNECTED}
    tags = sorted((s.tag for s in small), key=lambda t: list(Shape).index(t))
    out: set[Pattern] = set()
    if ncomp == 2:
        (t,) = tags
        if t is Shape.SINGLETON:
            out.add(Pattern.L33)
        if t in (Shape.SINGLETON, Shape.EDGE):
            out.add(Pattern.L34)
        if t in (Shape.SINGLETON, Shape.EDGE, Shape.PATH2, Shape.CYCLE3):
            out.add(Pattern.T37_1)
    elif ncomp == 3:
        if tags == [Shape.SINGLETON, Shape.SINGLETON]:
            out |= {Pattern.L34, Pattern.T37_2}
        elif tags == [Shape.SINGLETON, Shape.EDGE]:
            out.add(Pattern.T37_3)
    elif ncomp == 4 and tags == [Shape.SINGLETON] * 3:
        out.add(Pattern.T37_4)
    return out


def allowed_bits(allowed: Iterable[Pattern]) -> int:
    bits = BIT[Pattern.CONNECTED]
    for p in allowed:
        bits |= BIT[p]
    return bits


@dataclass(frozen=True)
class CutReport:
    fault_set: VertexSet
    components: tuple[VertexSet, ...]
    shapes: tuple[ComponentShape, ...]  # for components[1:], the non-largest ones
    matched_pattern: Pattern

    @property
    def disconnected(self) -> bool:
        return len(self.components) >= 2


def cut_report(g: Graph, faults: VertexSet, allowed: Iterable[Pattern] | None = None) -> CutReport:
    """Components of ``g - faults`` and the first allowed pattern they satisfy.

    Without ``allowed`` every named pattern counts.  A disconnected graph
    matching none of the allowed patterns is reported as ``Violation``.
    """
    comps = component_masks(g, faults.bits)
    shapes = tuple(shape_of_mask(g, c) for c in comps[1:])
    met = satisfied_patterns(shapes, len(comps))
    permitted = set(PRIORITY) if allowed is None else set(allowed) | {Pattern.CONNECTED}
    matched = next((p for p in PRIORITY if p in met and p in permitted), Pattern.VIOLATION)
    size = g.vertex_count
    return CutReport(faults, tuple(VertexSet(size, c) for c in comps), shapes, matched)
