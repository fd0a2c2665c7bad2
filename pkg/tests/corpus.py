"""Small graphs used as oracle-comparison inputs."""
import itertools
import random

import networkx as nx

from cube_kappa.cube import build_kary_cube
from cube_kappa.graph import Graph, complete_graph, cycle_graph


def from_nx(h):
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


def random_connected(size, p, seed):
    rng = random.Random(seed)
    while True:
        h = nx.gnp_random_graph(size, p, seed=rng.randrange(1 << 30))
        if nx.is_connected(h):
            return from_nx(h)


def cube_graphs(max_vertices=12):
    out = []
    for k in range(2, max_vertices + 1):
        for n in range(1, 5):
            if k**n <= max_vertices:
                g, meta = build_kary_cube(k, n)
                out.append((f"Q{n}^{k}", g, meta))
    return out


def small_graphs():
    """Named connected graphs with at most 12 vertices."""
    out = [(name, g) for name, g, _ in cube_graphs()]
    out += [(f"C{m}", cycle_graph(m)) for m in (4, 5, 6, 7, 8, 10, 12)]
    out += [(f"K{m}", complete_graph(m)) for m in (2, 3, 4, 5)]
    out += [
        ("petersen", from_nx(nx.petersen_graph())),
        ("path7", from_nx(nx.path_graph(7))),
        ("star6", from_nx(nx.star_graph(6))),
        ("ladder5", from_nx(nx.ladder_graph(5))),
        ("grid3x4", from_nx(nx.grid_2d_graph(3, 4))),
        ("k33", from_nx(nx.complete_bipartite_graph(3, 3))),
        ("barbell", from_nx(nx.barbell_graph(4, 2))),
        ("wheel7", from_nx(nx.wheel_graph(7))),
        ("cube", from_nx(nx.hypercube_graph(3))),
        ("icosahedron", from_nx(nx.icosahedral_graph())),
    ]
    for i, (size, p) in enumerate(itertools.product((8, 10, 12), (0.3, 0.5))):
        out.append((f"gnp{size}_{p}", random_connected(size, p, seed=i)))
    return out


def brute_extra_connectivity(g, h):
    """Smallest h-extra cut by plain enumeration (None if there is none)."""
    h_nx = to_nx(g)
    for s in range(g.vertex_count + 1):
        for cut in itertools.combinations(range(g.vertex_count), s):
            rest = h_nx.subgraph(set(range(g.vertex_count)) - set(cut))
            comps = list(nx.connected_components(rest))
            if len(comps) >= 2 and all(len(c) >= h + 1 for c in comps):
                return s
    return None
