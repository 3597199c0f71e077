"""Simple undirected graphs, graph squares, vertex-merge connections, and
hamiltonian cycle values with per-edge provenance.

Vertex labels are opaque hashable values.  Labels of the same type must be
mutually comparable (ints, strings, or tuples); mixed-type label sets are
ordered by type name first, so merge helpers may introduce auxiliary tuple
labels next to string or integer ones.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from itertools import combinations


class HamSquareError(Exception):
    """Base class for all errors raised by this package."""


class VertexNotFound(HamSquareError):
    pass


class NonDisjointVertexSets(HamSquareError):
    pass


class FreshLabelCollision(HamSquareError):
    pass


class SizeCapExceeded(HamSquareError):
    pass


# Edge provenance flags for cycles living in a square.
IN_G = "G"
SQUARE_ONLY = "SQ"

_DEFAULT_CAP = 12


def default_cap() -> int:
    """Search size cap; overridable through the HAMSQ_CAP environment variable."""
    raw = os.environ.get("HAMSQ_CAP")
    if raw is None:
        return _DEFAULT_CAP
    return int(raw)


def vkey(v):
    """Sort key giving a total order over mixed-type vertex labels."""
    return (type(v).__name__, v)


def edge_key(u, v):
    """Normalized representation of an undirected edge."""
    if u == v:
        raise ValueError(f"loop edge at {u!r}")
    return (u, v) if vkey(u) < vkey(v) else (v, u)


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("_vertices", "_edges", "_adj")

    def __init__(self, vertices=(), edges=()):
        vs = sorted(set(vertices), key=vkey)
        adj = {v: set() for v in vs}
        es = set()
        for u, v in edges:
            if u not in adj:
                raise VertexNotFound(f"edge endpoint {u!r} not a vertex")
            if v not in adj:
                raise VertexNotFound(f"edge endpoint {v!r} not a vertex")
            es.add(edge_key(u, v))
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = tuple(vs)
        self._edges = frozenset(es)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def has_vertex(self, v) -> bool:
        return v in self._adj

    def has_edge(self, u, v) -> bool:
        return u in self._adj and v in self._adj[u]

    def neighbors(self, v) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise VertexNotFound(f"vertex {v!r} not in graph") from None

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def square(g: Graph) -> Graph:
    """Graph on the same vertices joining pairs at distance one or two in g."""
    edges = set(g.edges)
    for v in g.vertices:
        nbrs = g.neighbors(v)
        for a, b in combinations(sorted(nbrs, key=vkey), 2):
            if a not in g.neighbors(b):
                edges.add(edge_key(a, b))
    return Graph(g.vertices, edges)


def connect(g1: Graph, x1, g2: Graph, x2, x) -> Graph:
    """Merge g1 and g2 by identifying x1 with x2 into the fresh vertex x.

    The merged vertex inherits the union of both neighborhoods; everything
    else is preserved.  Vertex sets must be disjoint and x unused.
    """
    if not g1.has_vertex(x1):
        raise VertexNotFound(f"{x1!r} not in first graph")
    if not g2.has_vertex(x2):
        raise VertexNotFound(f"{x2!r} not in second graph")
    overlap = set(g1.vertices) & set(g2.vertices)
    if overlap:
        raise NonDisjointVertexSets(f"shared vertices: {sorted(overlap, key=vkey)!r}")
    if g1.has_vertex(x) or g2.has_vertex(x):
        raise FreshLabelCollision(f"merge label {x!r} already present")
    vertices = [v for v in g1.vertices if v != x1]
    vertices += [v for v in g2.vertices if v != x2]
    vertices.append(x)
    edges = [e for e in g1.edges if x1 not in e]
    edges += [e for e in g2.edges if x2 not in e]
    edges += [(u, x) for u in g1.neighbors(x1)]
    edges += [(v, x) for v in g2.neighbors(x2)]
    return Graph(vertices, edges)


def distance(g: Graph, u, v):
    """BFS distance between u and v; None when unreachable."""
    if not g.has_vertex(u):
        raise VertexNotFound(f"vertex {u!r} not in graph")
    if not g.has_vertex(v):
        raise VertexNotFound(f"vertex {v!r} not in graph")
    if u == v:
        return 0
    seen = {u: 0}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        d = seen[w]
        for nb in g.neighbors(w):
            if nb not in seen:
                if nb == v:
                    return d + 1
                seen[nb] = d + 1
                queue.append(nb)
    return None


def induced(g: Graph, subset) -> Graph:
    """Subgraph induced by the given vertex subset."""
    sub = set(subset)
    for v in sub:
        if not g.has_vertex(v):
            raise VertexNotFound(f"vertex {v!r} not in graph")
    edges = [e for e in g.edges if e[0] in sub and e[1] in sub]
    return Graph(sub, edges)


def relabel(g: Graph, mapping: dict) -> Graph:
    """Rename vertices through a partial injective mapping."""
    def m(v):
        return mapping.get(v, v)

    new_vs = [m(v) for v in g.vertices]
    if len(set(new_vs)) != g.n:
        raise ValueError("relabeling is not injective on this graph")
    return Graph(new_vs, [(m(u), m(v)) for u, v in g.edges])


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    start = g.vertices[0]
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for nb in g.neighbors(w):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return len(seen) == g.n


def fresh_aux_label(*graphs):
    """An ("aux", i) label not present in any of the given graphs."""
    taken = set()
    for g in graphs:
        taken.update(g.vertices)
    i = 0
    while ("aux", i) in taken:
        i += 1
    return ("aux", i)


@dataclass(frozen=True)
class HamCycle:
    """Hamiltonian cycle of a graph square, in canonical form.

    order is the cyclic vertex sequence starting at the minimum vertex and
    running toward the smaller of its two cycle neighbors.  provenance[i]
    flags the edge (order[i], order[i+1]) cyclically: IN_G when it is a real
    edge of the host graph, SQUARE_ONLY when it is a distance-2 shortcut.
    """

    order: tuple
    provenance: tuple

    @staticmethod
    def canonical_order(order) -> tuple:
        seq = tuple(order)
        if len(seq) < 3:
            raise ValueError("a cycle needs at least three vertices")
        if len(set(seq)) != len(seq):
            raise ValueError("repeated vertex in cycle order")
        i = seq.index(min(seq, key=vkey))
        rot = seq[i:] + seq[:i]
        if vkey(rot[-1]) < vkey(rot[1]):
            rot = (rot[0],) + tuple(reversed(rot[1:]))
        return rot

    @classmethod
    def in_square(cls, g: Graph, order) -> "HamCycle":
        """Build and validate a cycle of square(g) from a raw vertex order."""
        seq = cls.canonical_order(order)
        if set(seq) != set(g.vertices):
            raise ValueError("cycle does not visit every vertex exactly once")
        prov = []
        n = len(seq)
        for i in range(n):
            u, v = seq[i], seq[(i + 1) % n]
            if g.has_edge(u, v):
                prov.append(IN_G)
            elif g.neighbors(u) & g.neighbors(v):
                prov.append(SQUARE_ONLY)
            else:
                raise ValueError(f"consecutive pair {u!r},{v!r} is farther than distance 2")
        return cls(seq, tuple(prov))

    def __len__(self):
        return len(self.order)

    def edges(self):
        n = len(self.order)
        return [edge_key(self.order[i], self.order[(i + 1) % n]) for i in range(n)]

    def edges_with_provenance(self):
        n = len(self.order)
        return [
            (edge_key(self.order[i], self.order[(i + 1) % n]), self.provenance[i])
            for i in range(n)
        ]

    def contains_edge(self, u, v) -> bool:
        return edge_key(u, v) in set(self.edges())

    def cycle_neighbors(self, v):
        i = self.order.index(v)
        n = len(self.order)
        return (self.order[i - 1], self.order[(i + 1) % n])

    def in_g_count(self, v) -> int:
        """Number of host-graph edges of the cycle incident with v."""
        i = self.order.index(v)
        n = len(self.order)
        return (self.provenance[i - 1] == IN_G) + (self.provenance[i] == IN_G)

    def in_g_neighbors(self, v):
        i = self.order.index(v)
        n = len(self.order)
        out = []
        if self.provenance[i - 1] == IN_G:
            out.append(self.order[i - 1])
        if self.provenance[i] == IN_G:
            out.append(self.order[(i + 1) % n])
        return out

    def relabeled(self, g_new: Graph, mapping: dict) -> "HamCycle":
        return HamCycle.in_square(g_new, [mapping.get(v, v) for v in self.order])


def is_isomorphic_small(g1: Graph, g2: Graph, cap: int | None = None) -> bool:
    """Exact isomorphism test for small graphs.

    Uses degree partition refinement to prune a backtracking search over
    edge-preserving bijections.
    """
    if cap is None:
        cap = default_cap()
    if g1.n > cap or g2.n > cap:
        raise SizeCapExceeded(f"isomorphism test capped at {cap} vertices")
    if g1.n != g2.n or g1.m != g2.m:
        return False
    c1 = _refined_colors(g1)
    c2 = _refined_colors(g2)
    if sorted(c1.values()) != sorted(c2.values()):
        return False
    vs1 = sorted(g1.vertices, key=lambda v: (c1[v], vkey(v)))
    by_color2: dict[int, list] = {}
    for v in g2.vertices:
        by_color2.setdefault(c2[v], []).append(v)

    mapping: dict = {}
    used: set = set()

    def extend(i: int) -> bool:
        if i == len(vs1):
            return True
        u = vs1[i]
        for v in sorted(by_color2.get(c1[u], ()), key=vkey):
            if v in used:
                continue
            ok = True
            for w, mw in mapping.items():
                if g1.has_edge(u, w) != g2.has_edge(v, mw):
                    ok = False
                    break
            if ok:
                mapping[u] = v
                used.add(v)
                if extend(i + 1):
                    return True
                del mapping[u]
                used.remove(v)
        return False

    return extend(0)


def _refined_colors(g: Graph) -> dict:
    """Iterated neighborhood color refinement (1-dimensional)."""
    colors = {v: g.degree(v) for v in g.vertices}
    for _ in range(g.n):
        signatures = {
            v: (colors[v], tuple(sorted(colors[w] for w in g.neighbors(v))))
            for v in g.vertices
        }
        ranks = {sig: i for i, sig in enumerate(sorted(set(signatures.values())))}
        new = {v: ranks[signatures[v]] for v in g.vertices}
        if new == colors:
            break
        colors = new
    return colors


def wl_certificate(g: Graph) -> tuple:
    """Isomorphism-invariant fingerprint used to bucket candidate graphs."""
    colors = _refined_colors(g)
    edge_sig = sorted(tuple(sorted((colors[u], colors[v]))) for u, v in g.edges)
    return (g.n, g.m, tuple(sorted(colors.values())), tuple(edge_sig))
