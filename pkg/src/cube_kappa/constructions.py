"""Extremal fault sets in Q_n^3: neighbourhoods of an edge, a 2-path and a 4-cycle.

The fragments sit on the all-zero vertex and use two digit positions: the
second and third from the top (``n-2`` and ``n-3``) when ``n >= 3``, and
positions 1 and 0 for ``n = 2``.  For ``t = 4`` and ``n >= 3`` this gives the
four vertices ``(0,0,0,..)``, ``(0,1,0,..)``, ``(0,1,1,..)``, ``(0,0,1,..)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cube import CubeMeta
from .graph import ComponentShape, Graph, VertexSet, component_masks, is_h_extra_mask, shape_of_mask
from .graph import mask_of, open_neighborhood_mask
from .patterns import CutReport, cut_report


@dataclass(frozen=True)
class Fragment:
    vertices: tuple[int, ...]
    meta: CubeMeta
    induced_shape: ComponentShape

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def words(self) -> list[str]:
        return [self.meta.word_str(v) for v in self.vertices]


@dataclass(frozen=True)
class ConstructionReport:
    fragment: Fragment
    cut: VertexSet
    cut_size: int
    layer_sizes: tuple[int, ...]
    residual: CutReport


def _positions(meta: CubeMeta) -> tuple[int, int]:
    return (meta.n - 2, meta.n - 3) if meta.n >= 3 else (1, 0)


def path_fragment(meta: CubeMeta, t: int, g: Graph | None = None) -> Fragment:
    """The canonical connected fragment on ``t`` vertices (u, v, w, t order)."""
    if meta.k != 3:
        raise ValueError("fragments are defined for 3-ary cubes")
    if t not in (2, 3, 4):
        raise ValueError(f"fragment order must be 2, 3 or 4, got {t}")
    if meta.n < 2:
        raise ValueError("fragments need n >= 2")
    p, q = _positions(meta)
    u = 0
    v = meta.with_digit(u, p, 1)
    w = meta.with_digit(v, q, 1)
    x = meta.with_digit(u, q, 1)
    vertices = (u, v, w, x)[:t]
    if g is None:
        from .cube import build_kary_cube

        g, _ = build_kary_cube(meta.k, meta.n)
    return Fragment(vertices, meta, shape_of_mask(g, mask_of(vertices)))


MIN_N = {1: 2, 2: 2, 3: 3}


def extremal_cut(g: Graph, meta: CubeMeta, h: int) -> ConstructionReport:
    """``N(fragment)`` for the fragment of order ``h + 1``, with per-vertex layers.

    Each cut vertex is attributed to the first fragment vertex (u, v, w, t
    order) adjacent to it; ``layer_sizes`` counts the attributions.
    """
    if h not in MIN_N:
        raise ValueError(f"extremal cuts are built for h in 1..3, got {h}")
    if meta.n < MIN_N[h]:
        raise ValueError(f"h={h} needs n >= {MIN_N[h]}, got n={meta.n}")
    if g.vertex_count != meta.vertex_count:
        raise ValueError("graph does not match cube metadata")
    frag = path_fragment(meta, h + 1, g)
    cut = open_neighborhood_mask(g, frag.mask)
    layers = []
    claimed = 0
    for v in frag.vertices:
        layer = g.masks[v] & cut & ~claimed
        layers.append(layer.bit_count())
        claimed |= layer
    cut_set = VertexSet(g.vertex_count, cut)
    return ConstructionReport(frag, cut_set, len(cut_set), tuple(layers), cut_report(g, cut_set))


def expected_cut_size(n: int, h: int) -> int:
    return {1: 4 * n - 3, 2: 6 * n - 7, 3: 8 * n - 12}[h]


def verify_extremal_cut(g: Graph, report: ConstructionReport, h: int) -> bool:
    """Removing the cut leaves exactly the fragment and one other component."""
    frag = report.fragment
    if report.cut.universe != g.vertex_count or frag.meta.vertex_count != g.vertex_count:
        raise ValueError("report was built for a different graph")
    if open_neighborhood_mask(g, frag.mask) != report.cut.bits:
        raise ValueError("report cut is not the neighbourhood of its fragment in this graph")
    comps = component_masks(g, report.cut.bits)
    # components are sorted largest first; on a tie the fragment may come first
    return (
        len(comps) == 2
        and frag.mask in comps
        and frag.mask.bit_count() == comps[1].bit_count()
        and is_h_extra_mask(g, report.cut.bits, h)
    )
