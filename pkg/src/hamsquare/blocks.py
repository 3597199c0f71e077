"""Block and cut-vertex decomposition, the block graph, and the structural
precondition checks used by the hamiltonicity engine.

The block graph Bl(G) is the bipartite tree whose nodes are the blocks and
the cut vertices of G, with adjacency "this cut vertex belongs to that
block".  Nodes are represented as tagged pairs ("block", index) and
("cut", label).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, HamSquareError, is_connected, vkey


class DisconnectedInput(HamSquareError):
    pass


class TrivialGraph(HamSquareError):
    pass


class TooSmall(HamSquareError):
    pass


CYCLIC = "cyclic"
ACYCLIC = "acyclic"
ENDBLOCK = "endblock"
NON_END = "non-end"


@dataclass(frozen=True)
class BlockInfo:
    degree: int
    kind: str        # CYCLIC or ACYCLIC
    end_status: str  # ENDBLOCK or NON_END


class BlockDecomposition:
    """Blocks, cut vertices, and the block graph of a connected graph."""

    def __init__(self, g: Graph, blocks, cut_vertices):
        self.graph = g
        self.blocks = tuple(tuple(sorted(b, key=vkey)) for b in blocks)
        self.cut_vertices = frozenset(cut_vertices)
        self._blocks_at = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                self._blocks_at.setdefault(v, []).append(i)
        adj = {}
        for i, b in enumerate(self.blocks):
            adj[("block", i)] = tuple(
                ("cut", v) for v in b if v in self.cut_vertices
            )
        for v in sorted(self.cut_vertices, key=vkey):
            adj[("cut", v)] = tuple(
                ("block", i) for i in self._blocks_at[v]
            )
        self._bl_adj = adj

    def blocks_at(self, v) -> tuple:
        """Indices of the blocks containing v."""
        return tuple(self._blocks_at.get(v, ()))

    def is_cut(self, v) -> bool:
        return v in self.cut_vertices

    def block_info(self, i: int) -> BlockInfo:
        b = self.blocks[i]
        degree = sum(1 for v in b if v in self.cut_vertices)
        kind = ACYCLIC if len(b) == 2 else CYCLIC
        end = ENDBLOCK if degree == 1 else NON_END
        return BlockInfo(degree, kind, end)

    # Block graph accessors

    def bl_nodes(self) -> tuple:
        return tuple(self._bl_adj)

    def bl_neighbors(self, node) -> tuple:
        return self._bl_adj[node]

    def bl_degree(self, node) -> int:
        return len(self._bl_adj[node])

    def bl_distance(self, a, b) -> int:
        if a == b:
            return 0
        seen = {a: 0}
        queue = deque([a])
        while queue:
            w = queue.popleft()
            for nb in self._bl_adj[w]:
                if nb not in seen:
                    if nb == b:
                        return seen[w] + 1
                    seen[nb] = seen[w] + 1
                    queue.append(nb)
        raise HamSquareError("block graph of a connected graph must be connected")

    def high_degree_nodes(self) -> tuple:
        """Block-graph nodes of degree at least three."""
        return tuple(n for n in self._bl_adj if self.bl_degree(n) >= 3)

    def high_degree_cuts(self) -> tuple:
        """Cut vertices whose block-graph node has degree at least three."""
        return tuple(
            sorted(
                (n[1] for n in self.high_degree_nodes() if n[0] == "cut"),
                key=vkey,
            )
        )


@lru_cache(maxsize=8192)
def decompose(g: Graph) -> BlockDecomposition:
    """Block and cut-vertex decomposition of a connected graph.

    Blocks are listed in a deterministic order, sorted by their sorted
    vertex tuples.  Iterative lowpoint DFS, so long paths are fine.
    The result is cached per graph and must be treated as read-only.
    """
    if g.n < 2:
        raise TrivialGraph("decomposition needs at least two vertices")
    if not is_connected(g):
        raise DisconnectedInput("decomposition requires a connected graph")

    disc = {}
    low = {}
    cuts = set()
    blocks = []
    edge_stack = []
    timer = 0

    root = g.vertices[0]
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    stack = [(root, None, iter(sorted(g.neighbors(root), key=vkey)))]

    while stack:
        v, par, it = stack[-1]
        advanced = False
        for w in it:
            if w == par:
                # Simple graph: the single edge back to the DFS parent is the
                # tree edge, never a back edge.
                continue
            if w not in disc:
                edge_stack.append((v, w))
                disc[w] = low[w] = timer
                timer += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, iter(sorted(g.neighbors(w), key=vkey))))
                advanced = True
                break
            if disc[w] < disc[v]:
                edge_stack.append((v, w))
                if disc[w] < low[v]:
                    low[v] = disc[w]
        if advanced:
            continue
        stack.pop()
        if par is not None:
            if low[v] < low[par]:
                low[par] = low[v]
            if low[v] >= disc[par]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.add(a)
                    comp.add(b)
                    if (a, b) == (par, v):
                        break
                blocks.append(comp)
                if par != root or root_children > 1:
                    cuts.add(par)

    blocks.sort(key=lambda b: tuple(sorted(vkey(v) for v in b)))
    return BlockDecomposition(g, blocks, cuts)


def t_count(g: Graph, a) -> int:
    """Number of acyclic non-end blocks of g containing vertex a."""
    bd = decompose(g)
    return t_of(bd, a)


def t_of(bd: BlockDecomposition, a) -> int:
    if not bd.graph.has_vertex(a):
        from .graph import VertexNotFound

        raise VertexNotFound(f"vertex {a!r} not in graph")
    total = 0
    for i in bd.blocks_at(a):
        info = bd.block_info(i)
        if info.kind == ACYCLIC and info.end_status == NON_END:
            total += 1
    return total


@dataclass(frozen=True)
class ClassCheck:
    """Outcome of the structural precondition check."""

    in_class: bool
    violations: tuple = ()


def check_main_preconditions(g: Graph) -> ClassCheck:
    """Check the two structural conditions of the decision class.

    InClass requires every block-graph node of degree at least three to be a
    cut vertex, and any two such nodes to be at block-graph distance at
    least four.  Only the first violated condition is reported.
    """
    if g.n < 3:
        raise TooSmall("class check needs at least three vertices")
    bd = decompose(g)
    high = bd.high_degree_nodes()
    for node in sorted(high, key=_node_key):
        if node[0] == "block":
            block = bd.blocks[node[1]]
            return ClassCheck(
                False,
                (f"block {block!r} has block-graph degree {bd.bl_degree(node)}",),
            )
    cut_nodes = sorted((n for n in high if n[0] == "cut"), key=_node_key)
    for i in range(len(cut_nodes)):
        for j in range(i + 1, len(cut_nodes)):
            d = bd.bl_distance(cut_nodes[i], cut_nodes[j])
            if d < 4:
                a, b = cut_nodes[i][1], cut_nodes[j][1]
                return ClassCheck(
                    False,
                    (f"cut vertices {a!r} and {b!r} at block-graph distance {d}",),
                )
    return ClassCheck(True)


def _node_key(node):
    return (node[0], vkey(node[1]) if node[0] == "cut" else (node[1],))


def branches(bd: BlockDecomposition) -> tuple:
    """Maximal block-graph paths whose ends have degree != 2 and whose
    interior nodes have degree 2, in a deterministic order."""
    ends = [n for n in bd.bl_nodes() if bd.bl_degree(n) != 2]
    out = []
    seen = set()
    for start in sorted(ends, key=_node_key):
        for nxt in sorted(bd.bl_neighbors(start), key=_node_key):
            path = [start, nxt]
            while bd.bl_degree(path[-1]) == 2:
                a, b = bd.bl_neighbors(path[-1])
                path.append(b if a == path[-2] else a)
            a, b = path[0], path[-1]
            if _node_key(b) < _node_key(a):
                path = list(reversed(path))
            key = tuple(path)
            if key not in seen:
                seen.add(key)
                seen.add(tuple(reversed(path)))
                out.append(key)
    out.sort(key=lambda p: tuple(_node_key(n) for n in p))
    return tuple(out)


PATH = "path"
STAR_CUT = "star-cut"
STAR_BLOCK = "star-block"
OTHER = "other"


@dataclass(frozen=True)
class ShapeClass:
    kind: str
    center_cut: object = None
    center_block: tuple = None


def is_subdivided_star(bd: BlockDecomposition) -> ShapeClass:
    """Classify the block graph: a path, a tree with exactly one node of
    degree >= 3 (a star after suppressing degree-2 nodes), or anything else."""
    high = bd.high_degree_nodes()
    if not high:
        return ShapeClass(PATH)
    if len(high) > 1:
        return ShapeClass(OTHER)
    node = high[0]
    if node[0] == "cut":
        return ShapeClass(STAR_CUT, center_cut=node[1])
    return ShapeClass(STAR_BLOCK, center_block=bd.blocks[node[1]])


def is_biconnected(g: Graph) -> bool:
    """True for 2-connected graphs: connected, three or more vertices, and a
    single cyclic block."""
    if g.n < 3 or not is_connected(g):
        return False
    bd = decompose(g)
    return len(bd.blocks) == 1
