"""Exhaustive generation of small graphs up to isomorphism.

Graphs are grown one vertex at a time: every graph on k vertices is
extended by a new vertex attached to every nonempty subset of the old
ones, and duplicates are removed with an invariant bucket plus an exact
isomorphism test.  Vertices are integers 0..n-1.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .graph import Graph, is_isomorphic_small, wl_certificate
from .blocks import is_biconnected


@lru_cache(maxsize=None)
def graphs_of_order(n: int) -> tuple:
    """All graphs on n vertices up to isomorphism (connected or not)."""
    if n < 1:
        return ()
    if n == 1:
        return (Graph([0]),)
    out = []
    buckets: dict = {}
    new = n - 1
    for parent in graphs_of_order(n - 1):
        old = list(parent.vertices)
        for size in range(0, n):
            for subset in combinations(old, size):
                g = Graph(
                    list(old) + [new],
                    list(parent.edges) + [(v, new) for v in subset],
                )
                key = wl_certificate(g)
                bucket = buckets.setdefault(key, [])
                if any(is_isomorphic_small(g, h, cap=max(n, 12)) for h in bucket):
                    continue
                bucket.append(g)
                out.append(g)
    return tuple(out)


@lru_cache(maxsize=None)
def connected_graphs_of_order(n: int) -> tuple:
    from .graph import is_connected

    return tuple(g for g in graphs_of_order(n) if is_connected(g))


@lru_cache(maxsize=None)
def biconnected_graphs_of_order(n: int) -> tuple:
    return tuple(g for g in connected_graphs_of_order(n) if is_biconnected(g))
