"""Vertex-isoperimetric profile of small Hamming graphs.

For ``k <= 3`` the cube Q_n^k is the Cartesian power of the complete graph
K_k.  Replacing every line fibre of a set by an initial segment of the same
size never enlarges the closed neighbourhood, and repeating this in every
coordinate ends at a down-set of the product order ``[k]^n``.  The minimum
of ``|N[A]|`` over ``|A| = m`` is therefore attained by a down-set, and
enumerating down-sets gives the exact profile.

The profile yields the lower bound ``|N(A)| >= closed_profile[m] - m`` for
every vertex set of order ``m``; fragment search uses it for pruning.
"""
from __future__ import annotations

from functools import lru_cache

MAX_FIBRE_VERTICES = 27


def _down_sets(k: int, n: int) -> list[tuple[int, int]]:
    """All down-sets of ``[k]^n`` as ``(mask, closed_neighbourhood_mask)`` pairs.

    Vertex indices follow the cube codec with the last coordinate being the
    most significant digit, so fibre ``i`` occupies bits ``i*k**(n-1) ...``.
    """
    if n == 0:
        return [(0, 0), (1, 1)]
    lower = _down_sets(k, n - 1)
    block = k ** (n - 1)
    out = []

    def extend(chain: list[tuple[int, int]]) -> None:
        if len(chain) == k:
            mask = 0
            closed = 0
            top = chain[0][0]
            for i, (m, nb) in enumerate(chain):
                mask |= m << (i * block)
                # fibre i also sees the members of every other fibre, whose union is
                # fibre 0 for i > 0 and lies inside N[fibre 0] for i == 0
                closed |= (nb | (top if i else 0)) << (i * block)
            out.append((mask, closed))
            return
        prev = chain[-1][0]
        for m, nb in lower:
            if m & ~prev == 0:
                extend(chain + [(m, nb)])

    for m, nb in lower:
        extend([(m, nb)])
    return out


@lru_cache(maxsize=None)
def closed_profile(k: int, n: int) -> tuple[int, ...]:
    """``profile[m] = min |N[A]|`` over vertex sets ``A`` of order ``m`` in Q_n^k.

    Splits along the top coordinate: fibre 0 is a down-set ``D0`` of
    ``[k]^(n-1)`` and each other fibre is any down-set inside ``D0``.  Every
    such fibre choice is a genuine vertex set whose closed neighbourhood is
    ``|N[D0]| + sum_i |N[D_i] | D0|``, and the nested (fully compressed)
    choices are among them, so minimising over independent fibres is exact.
    """
    if k > 3:
        raise ValueError("the compression argument needs k <= 3 (Hamming graphs)")
    if k ** (n - 1) > MAX_FIBRE_VERTICES:
        raise ValueError(f"profile enumeration limited to fibres of {MAX_FIBRE_VERTICES} vertices")
    lower = _down_sets(k, n - 1)
    block = k ** (n - 1)
    size = k**n
    best = [size] * (size + 1)
    best[0] = 0
    for d0, nb0 in lower:
        if not d0:
            continue
        # cheapest fibre of each order inside d0
        fibre: dict[int, int] = {}
        for d, nb in lower:
            if d & ~d0 == 0:
                s, c = d.bit_count(), (nb | d0).bit_count()
                if c < fibre.get(s, block + 1):
                    fibre[s] = c
        totals = {0: 0}
        for _ in range(k - 1):
            grown: dict[int, int] = {}
            for a, ca in totals.items():
                for s, c in fibre.items():
                    if ca + c < grown.get(a + s, size + 1):
                        grown[a + s] = ca + c
            totals = grown
        base, m0 = nb0.bit_count(), d0.bit_count()
        for a, ca in totals.items():
            if base + ca < best[m0 + a]:
                best[m0 + a] = base + ca
    return tuple(best)


def open_profile(k: int, n: int) -> tuple[int, ...]:
    """``profile[m] = min |N(A)|`` over vertex sets ``A`` of order ``m``."""
    return tuple(c - m for m, c in enumerate(closed_profile(k, n)))


def has_profile(k: int, n: int) -> bool:
    return k <= 3 and k ** (n - 1) <= MAX_FIBRE_VERTICES
