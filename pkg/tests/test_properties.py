import json

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import to_nx
from cube_kappa.cube import (
    CubeAutomorphism,
    CubeMeta,
    build_kary_cube,
    is_automorphism,
    vertex_codec,
    vertex_permutation,
)
from cube_kappa.graph import (
    Graph,
    VertexSet,
    components,
    is_h_extra_cut,
    neighborhood_of_set,
)
from cube_kappa.solver import vertex_connectivity
from cube_kappa.store import TaskRecord


@st.composite
def graphs(draw, max_vertices=10):
    size = draw(st.integers(1, max_vertices))
    pairs = [(u, v) for u in range(size) for v in range(u + 1, size)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(size, chosen)


@st.composite
def graph_and_set(draw):
    g = draw(graphs())
    bits = draw(st.integers(0, g.full_mask))
    return g, VertexSet(g.vertex_count, bits)


@given(graph_and_set())
def test_components_partition_remainder(gs):
    g, removed = gs
    comps = components(g, removed)
    union = 0
    for c in comps:
        assert union & c.bits == 0
        union |= c.bits
        assert neighborhood_of_set(g, c) <= removed
    assert union == g.full_mask & ~removed.bits
    keys = [(-len(c), c.min()) for c in comps]
    assert keys == sorted(keys)


@given(graph_and_set())
def test_neighbourhood_degree_bound(gs):
    g, s = gs
    nb = neighborhood_of_set(g, s)
    assert len(nb) <= sum(g.degree(u) for u in s)
    assert nb & s == VertexSet(g.vertex_count, 0)
    closed = neighborhood_of_set(g, s, closed=True)
    assert closed == nb | s


@given(graph_and_set(), st.integers(0, 4))
def test_extra_cut_monotone_in_h(gs, h):
    g, s = gs
    if is_h_extra_cut(g, s, h):
        assert all(is_h_extra_cut(g, s, x) for x in range(h))


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=9))
def test_connectivity_matches_networkx(g):
    if g.vertex_count < 2:
        return
    assert vertex_connectivity(g) == nx.node_connectivity(to_nx(g))


@given(st.integers(2, 5), st.integers(1, 4), st.data())
def test_codec_bijection(k, n, data):
    meta = CubeMeta(k, n)
    u = data.draw(st.integers(0, meta.vertex_count - 1))
    assert vertex_codec(meta, vertex_codec(meta, u)) == u
    assert sum(d * k**i for i, d in enumerate(reversed(meta.to_word(u)))) == u


@settings(deadline=None)
@given(st.integers(2, 4), st.integers(1, 3), st.data())
def test_random_automorphism_preserves_adjacency(k, n, data):
    g, meta = build_kary_cube(k, n)
    shift = tuple(data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n)))
    perm = tuple(data.draw(st.permutations(range(n))))
    reflect = tuple(data.draw(st.lists(st.booleans(), min_size=n, max_size=n)))
    a = CubeAutomorphism(shift, perm, reflect)
    assert is_automorphism(g, vertex_permutation(meta, a))


json_values = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=5),
    lambda inner: st.lists(inner, max_size=3) | st.dictionaries(st.text(max_size=4), inner, max_size=3),
    max_leaves=10,
)


@given(st.sampled_from(["build", "kappa", "extra"]), st.dictionaries(st.text(max_size=4), json_values),
       st.dictionaries(st.text(max_size=4), json_values))
def test_record_json_roundtrip(task, params, result):
    rec = TaskRecord(task, params, result, "0.1.0", 0.5)
    assert TaskRecord.from_json(rec.to_json()) == rec
    assert json.loads(rec.to_json())["result"] == result
