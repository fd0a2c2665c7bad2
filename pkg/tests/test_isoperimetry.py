import itertools

import pytest

from cube_kappa.cube import build_kary_cube
from cube_kappa.isoperimetry import closed_profile, has_profile, open_profile


def brute_closed_profile(g):
    best = [g.vertex_count] * (g.vertex_count + 1)
    best[0] = 0
    for bits in range(1, 1 << g.vertex_count):
        closed = bits
        for v in range(g.vertex_count):
            if bits >> v & 1:
                closed |= g.masks[v]
        m = bits.bit_count()
        best[m] = min(best[m], closed.bit_count())
    return tuple(best)


@pytest.mark.parametrize("k,n", [(3, 1), (3, 2), (2, 3), (2, 4), (2, 2)])
def test_profile_matches_bruteforce(k, n):
    g, _ = build_kary_cube(k, n)
    assert closed_profile(k, n) == brute_closed_profile(g)


def test_profile_q3_small_orders_by_connected_search(q3):
    # for small m, the minimum is attained on some set; check against all m-subsets
    g, _ = q3
    prof = open_profile(3, 3)
    for m in range(1, 5):
        best = min(
            (sum(1 << v for v in c) | _nb(g, c)).bit_count() - m
            for c in itertools.combinations(range(27), m)
        )
        assert prof[m] == best


def _nb(g, members):
    out = 0
    for v in members:
        out |= g.masks[v]
    return out


def test_profile_known_values():
    prof = open_profile(3, 3)
    assert prof[:5] == (0, 6, 9, 11, 12)
    # a vertex of Q_4^3 has 8 neighbours; an edge 13
    assert open_profile(3, 4)[1:3] == (8, 13)


def test_profile_limits():
    assert has_profile(3, 4) and not has_profile(3, 5) and not has_profile(4, 2)
    with pytest.raises(ValueError):
        closed_profile(4, 2)
    with pytest.raises(ValueError):
        closed_profile(3, 5)
