"""Constructive hamiltonicity machinery for graph squares.

The engine mirrors a family of inductive existence proofs: cycles for
2-connected pieces come from a capped exhaustive search, and larger
graphs are assembled by merging pieces at shared cut vertices with
explicit cycle surgery.  Every merge keeps track of which cycle edges at
the merge vertex are real edges of the input, because the decision
procedure's contract is an exact count of those edges at every
high-degree cut vertex of the block tree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import (
    ACYCLIC,
    CYCLIC,
    ENDBLOCK,
    NON_END,
    BlockDecomposition,
    ClassCheck,
    DisconnectedInput,
    check_main_preconditions,
    decompose,
    is_biconnected,
    t_of,
)
from .graph import (
    IN_G,
    Graph,
    HamCycle,
    HamSquareError,
    SizeCapExceeded,
    VertexNotFound,
    connect,
    default_cap,
    edge_key,
    induced,
    is_connected,
    relabel,
    vkey,
)
from .search import (
    CycleConstraint,
    Rule,
    TooSmall,
    enumerate_ham_cycles,
    find_cycle_with_min_in_g,
    find_ham_cycle_constrained,
)


class NotTwoConnected(HamSquareError):
    pass


class SquareNotHamiltonian(HamSquareError):
    pass


class WitnessLacksInGEdge(HamSquareError):
    pass


class WitnessMismatch(HamSquareError):
    pass


class BlockGraphNotPath(HamSquareError):
    pass


class BadAnchors(HamSquareError):
    pass


class PreconditionViolated(HamSquareError):
    pass


class WrongShape(HamSquareError):
    pass


class InternalDefect(HamSquareError):
    """A guaranteed-existence search failed or a construction invariant broke."""


TYPE12 = "type12"
TYPE3 = "type3"

CONSTRUCTIVE = "constructive"
ORACLE = "oracle"


@dataclass(frozen=True)
class TraceStep:
    case: str
    merged_vertex: object
    subgraph_sizes: tuple


@dataclass(frozen=True)
class VertexType:
    """Best achievable edge pattern at a vertex over all hamiltonian cycles
    of the square: 1 both incident cycle edges real, 2 exactly one, 3 some
    cycle edge joins two of its neighbors, 4 none of these."""

    type_index: int
    witness: HamCycle | None


@dataclass
class Certificate:
    """Decision plus machine-checkable evidence."""

    decision: str  # "hamiltonian" | "not-hamiltonian" | "out-of-class"
    cycle: HamCycle | None = None
    witness: object = None
    witness_kind: str | None = None  # "t-count" | "too-small" | "exhaustive"
    reason: str | None = None
    mode: str = CONSTRUCTIVE
    class_check: ClassCheck | None = None
    trace: tuple = ()


def _trace(trace, case, merged, sizes):
    if trace is not None:
        trace.append(TraceStep(case, merged, tuple(sizes)))


def _fresh_aux(vertices, extra=()):
    taken = set(vertices) | set(extra)
    i = 0
    while ("aux", i) in taken:
        i += 1
    return ("aux", i)


def _pick_in_g_witness(c: HamCycle, xv, prefer=None, avoid=()):
    """Cycle neighbor of xv joined by a real edge; it will lose that edge."""
    nbrs = c.in_g_neighbors(xv)
    if not nbrs:
        raise WitnessLacksInGEdge(f"no real cycle edge at {xv!r}")
    if prefer is not None:
        if prefer not in nbrs:
            raise WitnessMismatch(f"designated witness edge {xv!r}-{prefer!r} not on the cycle")
        return prefer
    usable = [v for v in nbrs if v not in avoid]
    if not usable:
        raise InternalDefect(f"every real cycle edge at {xv!r} is protected")
    return min(usable, key=vkey)


def _pick_neighbor_edge(g: Graph, xv, c: HamCycle, prefer=None):
    """First cycle edge joining two neighbors of xv, in label order."""
    nbrs = g.neighbors(xv)
    candidates = [e for e in c.edges() if e[0] in nbrs and e[1] in nbrs]
    if prefer is not None:
        pe = edge_key(*prefer)
        if pe not in candidates:
            raise WitnessMismatch("designated neighbor edge not on the cycle")
        return pe
    if not candidates:
        raise WitnessMismatch(f"cycle has no edge between two neighbors of {xv!r}")
    return min(candidates, key=lambda e: (vkey(e[0]), vkey(e[1])))


def _path_without_vertex(c: HamCycle, v) -> tuple:
    """Cycle order with v removed, running from one of its neighbors around
    to the other."""
    i = c.order.index(v)
    n = len(c.order)
    return tuple(c.order[(i + 1 + j) % n] for j in range(n - 1))


def _path_without_edge(c: HamCycle, u, v) -> tuple:
    """Cycle order opened at the edge (u, v)."""
    n = len(c.order)
    for i in range(n):
        a, b = c.order[i], c.order[(i + 1) % n]
        if {a, b} == {u, v}:
            return tuple(c.order[(i + 1 + j) % n] for j in range(n))
    raise WitnessMismatch(f"edge {u!r}-{v!r} not on the cycle")


def compose_I(g1: Graph, x1, c1: HamCycle, g2: Graph, x2, c2: HamCycle, x,
              prefer1=None, prefer2=None, avoid1=(), avoid2=(), trace=None):
    """Merge two graphs with hamiltonian squares at vertices that both have a
    real cycle edge, producing the merged graph and its glued cycle.

    The witness neighbors lose their edge toward the merge vertex; the two
    opposite neighbors keep theirs with provenance intact, which is what
    makes the real-edge counts at the merged vertex predictable.
    """
    a1 = _pick_in_g_witness(c1, x1, prefer1, avoid1)
    b1 = _pick_in_g_witness(c2, x2, prefer2, avoid2)
    cnt1 = c1.in_g_count(x1)
    cnt2 = c2.in_g_count(x2)
    new_g = connect(g1, x1, g2, x2, x)
    p1 = _path_without_vertex(c1, x1)
    if p1[0] != a1:
        p1 = tuple(reversed(p1))
    p2 = _path_without_vertex(c2, x2)
    if p2[-1] != b1:
        p2 = tuple(reversed(p2))
    order = p1 + (x,) + p2
    cyc = HamCycle.in_square(new_g, order)
    case = {(2, 2): "Ia", (2, 1): "Ib", (1, 2): "Ib", (1, 1): "Id"}[(cnt1, cnt2)]
    _trace(trace, case, x, (g1.n, g2.n))
    return new_g, cyc


def compose_II(g1: Graph, x1, c1: HamCycle, witness_kind: str, u, x,
               prefer=None, avoid=(), trace=None):
    """Attach a pendant edge at x1 and extend the cycle over it.

    witness_kind TYPE12 consumes a real cycle edge at x1; TYPE3 opens the
    cycle at an edge joining two neighbors of x1.  The new pendant vertex
    ends up with exactly one real cycle edge in the TYPE12 case.
    """
    if g1.has_vertex(u) or u == x:
        raise WitnessMismatch(f"pendant label {u!r} collides")
    aux = _fresh_aux(g1.vertices, (u, x))
    k2 = Graph([aux, u], [(aux, u)])
    new_g = connect(g1, x1, k2, aux, x)
    if witness_kind == TYPE12:
        y = _pick_in_g_witness(c1, x1, prefer, avoid)
        p = _path_without_vertex(c1, x1)
        if p[-1] != y:
            p = tuple(reversed(p))
        order = p + (u, x)
        case = "IIa" if c1.in_g_count(x1) == 2 else "IIb"
    elif witness_kind == TYPE3:
        y, w = _pick_neighbor_edge(g1, x1, c1, prefer)
        p = _path_without_edge(c1, y, w)
        if p[0] != y:
            p = tuple(reversed(p))
        order = tuple(x if t == x1 else t for t in p) + (u,)
        case = "II-3"
    else:
        raise WitnessMismatch(f"unknown witness kind {witness_kind!r}")
    cyc = HamCycle.in_square(new_g, order)
    _trace(trace, case, x, (g1.n, 2))
    return new_g, cyc


def compose_III(g1: Graph, x1, c1: HamCycle, g2: Graph, x2, c2: HamCycle, x,
                trace=None):
    """Merge at a vertex whose first-side cycle passes between two of its
    neighbors while the second-side cycle has two real edges there."""
    y, w = _pick_neighbor_edge(g1, x1, c1)
    if c2.in_g_count(x2) != 2:
        raise WitnessMismatch(f"cycle must have two real edges at {x2!r}")
    nb = sorted(c2.cycle_neighbors(x2), key=vkey)
    a, b = nb[0], nb[1]
    new_g = connect(g1, x1, g2, x2, x)
    p1 = _path_without_edge(c1, y, w)
    if p1[0] != w:
        p1 = tuple(reversed(p1))
    p1 = tuple(x if t == x1 else t for t in p1)
    p2 = _path_without_vertex(c2, x2)
    if p2[0] != a:
        p2 = tuple(reversed(p2))
    order = p1 + p2
    cyc = HamCycle.in_square(new_g, order)
    _trace(trace, "III", x, (g1.n, g2.n))
    return new_g, cyc


def _glue_shared(g_a: Graph, c_a: HamCycle, g_b: Graph, c_b: HamCycle, shared,
                 prefer_a=None, prefer_b=None, avoid_a=(), avoid_b=(), trace=None):
    """compose_I for two subgraphs that carry the shared vertex under the
    same label; the merged vertex keeps that label."""
    aux_a = _fresh_aux(g_a.vertices, g_b.vertices)
    ga = relabel(g_a, {shared: aux_a})
    ca = c_a.relabeled(ga, {shared: aux_a})
    aux_b = _fresh_aux(ga.vertices, g_b.vertices)
    gb = relabel(g_b, {shared: aux_b})
    cb = c_b.relabeled(gb, {shared: aux_b})
    return compose_I(ga, aux_a, ca, gb, aux_b, cb, shared,
                     prefer1=prefer_a, prefer2=prefer_b,
                     avoid1=avoid_a, avoid2=avoid_b, trace=trace)


def _glue_pendant(g_a: Graph, c_a: HamCycle, at, leaf,
                  prefer=None, avoid=(), trace=None):
    """compose_II(TYPE12) for a pendant edge at a vertex of g_a, keeping the
    original label for the merge vertex."""
    aux = _fresh_aux(g_a.vertices, (leaf,))
    ga = relabel(g_a, {at: aux})
    ca = c_a.relabeled(ga, {at: aux})
    return compose_II(ga, aux, ca, TYPE12, leaf, at,
                      prefer=prefer, avoid=avoid, trace=trace)


def fleischner_cycle(b: Graph, y, z, cap=None, budget=None, trace=None) -> HamCycle:
    """Hamiltonian cycle of the square of a 2-connected graph with both cycle
    edges at y real and at least one real cycle edge at z.

    When y and z are adjacent the three guaranteed edges are distinct.
    Realized by capped exhaustive search; a miss is a defect, not a result.
    """
    if cap is None:
        cap = default_cap()
    if b.n > cap:
        raise SizeCapExceeded(f"block of {b.n} vertices exceeds the search cap {cap}")
    if not b.has_vertex(y) or not b.has_vertex(z):
        raise VertexNotFound("anchor vertex missing from block")
    if not is_biconnected(b):
        raise NotTwoConnected("input block must be 2-connected")
    if y == z:
        c = find_ham_cycle_constrained(b, CycleConstraint({y: Rule.BOTH_IN_G}), budget)
    else:
        c = find_ham_cycle_constrained(
            b, CycleConstraint({y: Rule.BOTH_IN_G, z: Rule.BOTH_IN_G}), budget
        )
        if c is None:
            forb = frozenset({edge_key(y, z)}) if b.has_edge(y, z) else frozenset()
            c = find_ham_cycle_constrained(
                b,
                CycleConstraint({y: Rule.BOTH_IN_G, z: Rule.ONE_IN_G},
                                forbidden_edges=forb),
                budget,
            )
    if c is None:
        raise InternalDefect(
            "exhaustive search found no anchored cycle in a 2-connected square"
        )
    _trace(trace, "fleischner", y, (b.n,))
    return c


def classify_vertex_type(g: Graph, x, cap=None, budget=None) -> VertexType:
    """Least achievable type index for x, with a witness cycle for types 1-3.

    Runs the constrained searches in order, so asserting type k proves all
    searches for smaller indices were exhausted.
    """
    if cap is None:
        cap = default_cap()
    if g.n > cap:
        raise SizeCapExceeded(f"classification capped at {cap} vertices")
    if not g.has_vertex(x):
        raise VertexNotFound(f"vertex {x!r} not in graph")
    if find_ham_cycle_constrained(g, None, budget) is None:
        raise SquareNotHamiltonian("the square of this graph has no hamiltonian cycle")
    c = find_ham_cycle_constrained(g, CycleConstraint({x: Rule.BOTH_IN_G}), budget)
    if c is not None:
        return VertexType(1, c)
    c = find_ham_cycle_constrained(g, CycleConstraint({x: Rule.ONE_IN_G}), budget)
    if c is not None:
        return VertexType(2, c)
    nbrs = sorted(g.neighbors(x), key=vkey)
    for i in range(len(nbrs)):
        for j in range(i + 1, len(nbrs)):
            req = frozenset({edge_key(nbrs[i], nbrs[j])})
            c = find_ham_cycle_constrained(
                g, CycleConstraint(required_edges=req), budget
            )
            if c is not None:
                return VertexType(3, c)
    return VertexType(4, None)


def _path_square_order(g: Graph, end) -> tuple:
    """Cycle order for the square of a path graph: odd positions ascending,
    then even positions descending; exactly one real edge at each end."""
    seq = [end]
    prev = None
    while True:
        nxt = [w for w in g.neighbors(seq[-1]) if w != prev]
        if not nxt:
            break
        prev = seq[-1]
        seq.append(nxt[0])
    if len(seq) != g.n:
        raise BlockGraphNotPath("graph is not a path")
    return tuple(seq[0::2]) + tuple(reversed(seq[1::2]))


def thomassen_path_cycle(g: Graph, u1, u2, cap=None, trace=None) -> HamCycle:
    """Hamiltonian cycle of square(g) when the block graph is a path, with
    both cycle edges at each anchor real when its endblock is cyclic and
    exactly one when acyclic.

    Built by seeding a cycle on one cyclic block and merging outward block
    by block; a path graph gets the direct interleaved order instead.
    """
    if g.n < 3:
        raise TooSmall("need at least three vertices")
    bd = decompose(g)
    if any(bd.bl_degree(nd) > 2 for nd in bd.bl_nodes()):
        raise BlockGraphNotPath("block graph has a node of degree three or more")
    k = len(bd.blocks)
    if k == 1:
        if u1 == u2 or not g.has_vertex(u1) or not g.has_vertex(u2):
            raise BadAnchors("single block needs two distinct vertices")
        return fleischner_cycle(g, u1, u2, cap=cap, trace=trace)

    order_idx = _block_path_order(bd)
    first, last = order_idx[0], order_idx[-1]
    in_first = u1 in bd.blocks[first] and not bd.is_cut(u1)
    in_last = u2 in bd.blocks[last] and not bd.is_cut(u2)
    if not (in_first and in_last):
        if u1 in bd.blocks[last] and not bd.is_cut(u1) \
                and u2 in bd.blocks[first] and not bd.is_cut(u2):
            order_idx = list(reversed(order_idx))
        else:
            raise BadAnchors(
                "anchors must be non-cut vertices of the two distinct endblocks"
            )
    block_sets = [set(bd.blocks[i]) for i in order_idx]
    kinds = [bd.block_info(i).kind for i in order_idx]
    cuts = []
    for i in range(k - 1):
        shared = block_sets[i] & block_sets[i + 1]
        cuts.append(next(iter(shared)))

    if CYCLIC not in kinds:
        cyc = HamCycle.in_square(g, _path_square_order(g, u1))
        _trace(trace, "path-square", None, (g.n,))
        return cyc

    m = kinds.index(CYCLIC)
    left_anchor = u1 if m == 0 else cuts[m - 1]
    right_anchor = u2 if m == k - 1 else cuts[m]
    if m == k - 1 and m > 0:
        y, z = right_anchor, left_anchor
    else:
        y, z = left_anchor, right_anchor
    cur_g = induced(g, block_sets[m])
    cur_c = fleischner_cycle(cur_g, y, z, cap=cap, trace=trace)

    for j in range(m + 1, k):
        att = cuts[j - 1]
        nxt = u2 if j == k - 1 else cuts[j]
        if kinds[j] == ACYCLIC:
            cur_g, cur_c = _glue_pendant(cur_g, cur_c, att, nxt,
                                         avoid={left_anchor}, trace=trace)
        else:
            bg = induced(g, block_sets[j])
            bc = fleischner_cycle(bg, nxt, att, cap=cap, trace=trace)
            cur_g, cur_c = _glue_shared(cur_g, cur_c, bg, bc, att,
                                        avoid_a={left_anchor}, avoid_b={nxt},
                                        trace=trace)
    for i in range(m - 1, -1, -1):
        att = cuts[i]
        nxt = u1 if i == 0 else cuts[i - 1]
        if kinds[i] == ACYCLIC:
            cur_g, cur_c = _glue_pendant(cur_g, cur_c, att, nxt,
                                         avoid={u2}, trace=trace)
        else:
            bg = induced(g, block_sets[i])
            bc = fleischner_cycle(bg, nxt, att, cap=cap, trace=trace)
            cur_g, cur_c = _glue_shared(cur_g, cur_c, bg, bc, att,
                                        avoid_a={u2}, avoid_b={nxt}, trace=trace)

    for u, idx in ((u1, 0), (u2, k - 1)):
        want = 2 if kinds[idx] == CYCLIC else 1
        if cur_c.in_g_count(u) != want:
            raise InternalDefect(f"endpoint condition failed at {u!r}")
    return cur_c


def _block_path_order(bd: BlockDecomposition):
    """Block indices along a path-shaped block graph."""
    k = len(bd.blocks)
    if k == 1:
        return [0]
    ends = [i for i in range(k) if bd.block_info(i).degree <= 1]
    start = min(ends)
    order = [start]
    seen = {start}
    while len(order) < k:
        node = ("block", order[-1])
        advanced = False
        for cut in bd.bl_neighbors(node):
            for blk in bd.bl_neighbors(cut):
                i = blk[1]
                if i not in seen:
                    order.append(i)
                    seen.add(i)
                    advanced = True
                    break
            if advanced:
                break
        if not advanced:
            raise BlockGraphNotPath("block graph is not a path")
    return order


# Branch bookkeeping for the single-branch-vertex construction.

BR_CYCLIC = "cyclic"
BR_PENDANT = "pendant"
BR_T = "t"


def _branches_at(bd: BlockDecomposition, a):
    """Branch descriptors (kind, vertex set, leaf block) for every branch of
    the block graph hanging off the cut vertex a."""
    from .blocks import branches as bl_branches

    out = []
    for p in bl_branches(bd):
        if p[0] == ("cut", a):
            path = p
        elif p[-1] == ("cut", a):
            path = tuple(reversed(p))
        else:
            continue
        first = path[1][1]
        verts = set()
        for node in path:
            if node[0] == "block":
                verts.update(bd.blocks[node[1]])
        info = bd.block_info(first)
        if info.kind == CYCLIC:
            kind = BR_CYCLIC
        elif info.end_status == ENDBLOCK:
            kind = BR_PENDANT
        else:
            kind = BR_T
        out.append((kind, frozenset(verts), path[-1][1]))
    out.sort(key=lambda br: tuple(sorted(vkey(v) for v in br[1])))
    return out


def _branch_cycle(g, a, verts, leaf_block, bd, anchors, cap, trace):
    """Cycle on a branch subgraph with the strong condition at a: both real
    edges when the branch starts with a cyclic block, exactly one when it
    starts with an acyclic non-end block."""
    sub = induced(g, verts)
    sub_bd = decompose(sub)
    anchor = next((v for v in anchors if v in verts and v != a), None)
    if len(sub_bd.blocks) == 1:
        if anchor is not None:
            raise InternalDefect("anchor inside a single-block branch")
        z = min((v for v in verts if v != a), key=vkey)
        return sub, fleischner_cycle(sub, a, z, cap=cap, trace=trace)
    if anchor is None:
        far_verts = set(bd.blocks[leaf_block]) - sub_bd.cut_vertices
        anchor = min(far_verts, key=vkey)
    return sub, thomassen_path_cycle(sub, a, anchor, cap=cap, trace=trace)


def lemma1_cycle(g: Graph, a, cap=None, trace=None) -> HamCycle:
    """Hamiltonian cycle of square(g) for a graph whose block graph has a
    single node of degree three or more, at the cut vertex a.

    The number of real cycle edges at a is exactly two minus the number of
    acyclic non-end blocks containing a (which must be at most two).
    """
    return _lemma1(g, a, frozenset(), cap, trace)


def _lemma1(g: Graph, a, anchors, cap, trace) -> HamCycle:
    bd = decompose(g)
    if not bd.is_cut(a):
        raise PreconditionViolated(f"{a!r} is not a cut vertex")
    high = set(bd.high_degree_nodes())
    if high != {("cut", a)}:
        raise PreconditionViolated(
            "block graph must have exactly one node of degree three or more, at the given vertex"
        )
    t = t_of(bd, a)
    if t > 2:
        raise PreconditionViolated(f"{a!r} lies in {t} acyclic non-end blocks")

    brs = _branches_at(bd, a)
    cyclics = [br for br in brs if br[0] == BR_CYCLIC]
    pendants = [br for br in brs if br[0] == BR_PENDANT]
    tbrs = [br for br in brs if br[0] == BR_T]
    if len(tbrs) != t:
        raise InternalDefect("branch classification disagrees with the block count")

    if cyclics:
        cur_g, cur_c = _branch_cycle(g, a, cyclics[0][1], cyclics[0][2],
                                     bd, anchors, cap, trace)
        for br in cyclics[1:]:
            hg, hc = _branch_cycle(g, a, br[1], br[2], bd, anchors, cap, trace)
            cur_g, cur_c = _glue_shared(cur_g, cur_c, hg, hc, a,
                                        avoid_a=anchors, avoid_b=anchors, trace=trace)
        for br in pendants:
            leaf = next(v for v in br[1] if v != a)
            cur_g, cur_c = _glue_pendant(cur_g, cur_c, a, leaf,
                                         avoid=anchors, trace=trace)
    elif t == 0:
        # Every block at a is a pendant edge, so the graph is a star.
        leaves = tuple(sorted((v for v in g.vertices if v != a), key=vkey))
        if anchors:
            raise InternalDefect("anchors cannot sit in a star")
        cyc = HamCycle.in_square(g, (a,) + leaves)
        _trace(trace, "star", a, (g.n,))
        return cyc
    elif len(pendants) == 1:
        cur_g, cur_c = _branch_cycle(g, a, tbrs[0][1], tbrs[0][2],
                                     bd, anchors, cap, trace)
        leaf = next(v for v in pendants[0][1] if v != a)
        cur_g, cur_c = _glue_pendant(cur_g, cur_c, a, leaf,
                                     avoid=anchors, trace=trace)
        tbrs = tbrs[1:]
    else:
        star_verts = {a}
        for br in pendants:
            star_verts.update(br[1])
        cur_g = induced(g, star_verts)
        leaves = tuple(sorted((v for v in star_verts if v != a), key=vkey))
        cur_c = HamCycle.in_square(cur_g, (a,) + leaves)
        _trace(trace, "star", a, (len(star_verts),))

    for br in tbrs:
        hg, hc = _branch_cycle(g, a, br[1], br[2], bd, anchors, cap, trace)
        cur_g, cur_c = _glue_shared(cur_g, cur_c, hg, hc, a,
                                    avoid_a=anchors, avoid_b=anchors, trace=trace)

    if cur_c.in_g_count(a) != 2 - t:
        raise InternalDefect(f"expected {2 - t} real cycle edges at {a!r}")
    for v in anchors:
        if cur_c.in_g_count(v) != 1:
            raise InternalDefect(f"anchor condition failed at {v!r}")
    return cur_c


def _path_anchor_pair(g: Graph, bd: BlockDecomposition, anchors):
    """Anchor assignment for a path-shaped block graph: threaded anchors take
    their own endblock, free ends get the minimum non-cut vertex."""
    order = _block_path_order(bd)
    ends = [order[0], order[-1]]
    chosen = []
    for blk in ends:
        bset = set(bd.blocks[blk])
        free = sorted((v for v in bset - bd.cut_vertices), key=vkey)
        hit = [v for v in anchors if v in bset]
        chosen.append(hit[0] if hit else free[0])
    for v in anchors:
        if v not in chosen:
            raise InternalDefect(f"anchor {v!r} is not in an endblock")
    return chosen[0], chosen[1]


def _side_cycle(sub: Graph, v, anchors, cap, trace):
    """Cycle on a split-off side with a guaranteed real-edge count at the
    boundary vertex v; the count is returned alongside the cycle."""
    bd = decompose(sub)
    d = len(bd.blocks_at(v))
    if d >= 3:
        c = _construct(sub, anchors, cap, trace)
        return c, 2 - t_of(bd, v)
    if d == 2:
        p = _fresh_aux(sub.vertices)
        hat = Graph(list(sub.vertices) + [p], list(sub.edges) + [(v, p)])
        c_hat = _construct(hat, anchors, cap, trace)
        c = _strip_pendant(sub, c_hat, p, v, trace)
        return c, 2 - t_of(bd, v)
    blk = bd.blocks_at(v)[0]
    if bd.block_info(blk).kind != ACYCLIC:
        raise InternalDefect("side boundary in a cyclic endblock was never expected")
    c = _construct(sub, anchors | {v}, cap, trace)
    return c, 1


def _strip_pendant(target: Graph, c: HamCycle, pendant, at, trace):
    """Remove an auxiliary pendant vertex from a cycle by splicing its two
    cycle neighbors together; both sit within distance two through the
    attachment vertex, and the real-edge count there is unchanged."""
    before = c.in_g_count(at)
    order = [v for v in c.order if v != pendant]
    try:
        out = HamCycle.in_square(target, order)
    except ValueError as exc:
        raise InternalDefect(f"pendant splice failed: {exc}") from exc
    if out.in_g_count(at) != before:
        raise InternalDefect("pendant splice changed the count at the attachment")
    _trace(trace, "pendant-strip", at, (target.n,))
    return out


def _construct(g: Graph, anchors, cap, trace) -> HamCycle:
    """Recursive constructive core.

    Contract: g is connected, in class, with every cut vertex in at most
    two acyclic non-end blocks.  The returned cycle has 2 - t real edges at
    every cut vertex whose block-graph degree is three or more (t counting
    its acyclic non-end blocks), and exactly one real edge at every anchor
    (a non-cut vertex in an acyclic endblock attached at a low-degree cut).
    """
    bd = decompose(g)
    high = bd.high_degree_nodes()
    if any(node[0] == "block" for node in high):
        raise PreconditionViolated("a block node has degree three or more")
    v3 = bd.high_degree_cuts()

    if not v3:
        if len(bd.blocks) == 1:
            if anchors:
                raise InternalDefect("anchors cannot sit in a single block")
            vs = g.vertices
            return fleischner_cycle(g, vs[0], vs[1], cap=cap, trace=trace)
        u1, u2 = _path_anchor_pair(g, bd, anchors)
        return thomassen_path_cycle(g, u1, u2, cap=cap, trace=trace)
    if len(v3) == 1:
        return _lemma1(g, v3[0], anchors, cap, trace)

    nodes = [("cut", v) for v in v3]
    best = None
    for p in nodes:
        for q in nodes:
            if p == q:
                continue
            d = bd.bl_distance(p, q)
            key = (-d, vkey(p[1]), vkey(q[1]))
            if best is None or key < best[0]:
                best = (key, p, q)
    b1 = best[1]
    a1 = b1[1]
    second = min((bd.bl_distance(b1, n), vkey(n[1]), n) for n in nodes if n != b1)
    b2 = second[2]
    a2 = b2[1]

    h_verts = _bl_path_vertices(bd, b1, b2)
    interior = h_verts - {a1, a2}
    rest = induced(g, set(g.vertices) - interior)
    comp1 = _component_of(rest, a1)
    comp2 = _component_of(rest, a2)
    if comp1 & comp2:
        raise InternalDefect("side components are not disjoint")
    if (comp1 | comp2 | h_verts) != set(g.vertices):
        raise InternalDefect("split does not cover the graph")

    hg = induced(g, h_verts)
    c_h = thomassen_path_cycle(hg, a1, a2, cap=cap, trace=trace)
    if any(v in interior for v in anchors):
        raise InternalDefect("anchor inside the connecting path subgraph")
    anchors1 = frozenset(v for v in anchors if v in comp1)
    anchors2 = frozenset(v for v in anchors if v in comp2)

    g2 = induced(g, comp2)
    bd2 = decompose(g2)
    t2 = t_of(bd2, a2)
    if t2 <= 1:
        c2, cnt2 = _side_cycle(g2, a2, anchors2, cap, trace)
        if cnt2 != 2 - t2:
            raise InternalDefect("side count mismatch on the far side")
        g2t, c2t = _glue_shared(g2, c2, hg, c_h, a2,
                                avoid_a=anchors2, avoid_b={a1}, trace=trace)
    else:
        s_verts, s1_verts = _t2_split(g2, bd2, a2)
        sg = induced(g2, s_verts)
        s1g = induced(g2, s1_verts)
        c_2b = _construct(sg, frozenset(v for v in anchors2 if v in s_verts) | {a2},
                          cap, trace)
        c_2a, cnt2a = _side_cycle(s1g, a2,
                                  frozenset(v for v in anchors2 if v in s1_verts),
                                  cap, trace)
        if cnt2a != 1:
            raise InternalDefect("first half of the far split must give one real edge")
        tmp_g, tmp_c = _glue_shared(s1g, c_2a, hg, c_h, a2,
                                    avoid_a=anchors2, avoid_b={a1}, trace=trace)
        g2t, c2t = _glue_shared(tmp_g, tmp_c, sg, c_2b, a2,
                                avoid_a={a1} | anchors2, avoid_b=anchors2,
                                trace=trace)

    g1 = induced(g, comp1)
    bd1 = decompose(g1)
    t1 = t_of(bd1, a1)
    if t1 <= 1:
        c1, cnt1 = _side_cycle(g1, a1, anchors1, cap, trace)
        if cnt1 != 2 - t1:
            raise InternalDefect("side count mismatch on the near side")
        final_g, final_c = _glue_shared(g1, c1, g2t, c2t, a1,
                                        avoid_a=anchors1, avoid_b=anchors2,
                                        trace=trace)
    else:
        f_verts, f1_verts = _t2_split(g1, bd1, a1)
        fg = induced(g1, f_verts)
        f1g = induced(g1, f1_verts)
        c_1b = _construct(fg, frozenset(v for v in anchors1 if v in f_verts) | {a1},
                          cap, trace)
        c_1a, cnt1a = _side_cycle(f1g, a1,
                                  frozenset(v for v in anchors1 if v in f1_verts),
                                  cap, trace)
        if cnt1a != 1:
            raise InternalDefect("first half of the near split must give one real edge")
        if c2t.in_g_count(a1) != 2:
            raise InternalDefect("the connecting side must keep two real edges here")
        tmp_g, tmp_c = _glue_shared(f1g, c_1a, g2t, c2t, a1,
                                    avoid_a=anchors1, avoid_b=anchors2, trace=trace)
        final_g, final_c = _glue_shared(tmp_g, tmp_c, fg, c_1b, a1,
                                        avoid_a=anchors1 | anchors2,
                                        avoid_b=anchors1, trace=trace)

    bdg = bd
    for v in v3:
        if final_c.in_g_count(v) != 2 - t_of(bdg, v):
            raise InternalDefect(f"main condition failed at {v!r}")
    for v in anchors:
        if final_c.in_g_count(v) != 1:
            raise InternalDefect(f"anchor condition failed at {v!r}")
    return final_c


def _bl_path_vertices(bd: BlockDecomposition, n1, n2):
    """Vertices of the subgraph corresponding to the block-graph path
    between two nodes."""
    parent = {n1: None}
    queue = [n1]
    while queue:
        cur = queue.pop(0)
        if cur == n2:
            break
        for nb in bd.bl_neighbors(cur):
            if nb not in parent:
                parent[nb] = cur
                queue.append(nb)
    verts = set()
    cur = n2
    while cur is not None:
        if cur[0] == "block":
            verts.update(bd.blocks[cur[1]])
        cur = parent[cur]
    return verts


def _component_of(g: Graph, v):
    seen = {v}
    queue = [v]
    while queue:
        w = queue.pop()
        for nb in g.neighbors(w):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen


def _t2_split(sub: Graph, bd: BlockDecomposition, v):
    """Split a side graph with two acyclic non-end blocks at v into the
    subtree through the first such block (plus v) and the remainder."""
    target = None
    for i in bd.blocks_at(v):
        info = bd.block_info(i)
        if info.kind == ACYCLIC and info.end_status == NON_END:
            target = i
            break
    if target is None:
        raise InternalDefect("no acyclic non-end block to split at")
    other = next(w for w in bd.blocks[target] if w != v)
    without = induced(sub, set(sub.vertices) - {v})
    side = _component_of(without, other)
    s_verts = side | {v}
    s1_verts = set(sub.vertices) - side
    return s_verts, s1_verts


def decide_and_construct(g: Graph, mode: str = CONSTRUCTIVE,
                         cap=None, budget=None) -> Certificate:
    """Decide hamiltonicity of square(g) and, in constructive mode, build a
    cycle meeting the per-vertex real-edge counts at every high-degree cut
    vertex of the block graph.

    Oracle mode answers by raw exhaustive search regardless of class
    membership, under the given expansion budget.
    """
    if not is_connected(g):
        raise DisconnectedInput("decision requires a connected graph")
    if g.n < 3:
        return Certificate(
            "not-hamiltonian",
            witness=None,
            witness_kind="too-small",
            mode=mode,
            class_check=ClassCheck(False, ("fewer than three vertices",)),
        )
    cc = check_main_preconditions(g)
    bd = decompose(g)
    bad = sorted((v for v in bd.cut_vertices if t_of(bd, v) >= 3), key=vkey)

    if mode == ORACLE:
        cyc = find_ham_cycle_constrained(g, None, budget)
        if cyc is not None:
            return Certificate("hamiltonian", cycle=cyc, mode=ORACLE,
                               class_check=cc,
                               trace=(TraceStep("oracle-search", None, (g.n,)),))
        if bad:
            return Certificate("not-hamiltonian", witness=bad[0],
                               witness_kind="t-count", mode=ORACLE, class_check=cc)
        return Certificate("not-hamiltonian", witness=None,
                           witness_kind="exhaustive", mode=ORACLE, class_check=cc)

    if mode != CONSTRUCTIVE:
        raise HamSquareError(f"unknown mode {mode!r}")
    if not cc.in_class:
        return Certificate("out-of-class", reason=cc.violations[0],
                           mode=CONSTRUCTIVE, class_check=cc)
    if bad:
        return Certificate("not-hamiltonian", witness=bad[0],
                           witness_kind="t-count", mode=CONSTRUCTIVE, class_check=cc)
    trace: list = []
    cyc = _construct(g, frozenset(), cap, trace)
    return Certificate("hamiltonian", cycle=cyc, mode=CONSTRUCTIVE,
                       class_check=cc, trace=tuple(trace))


@dataclass(frozen=True)
class AcceptableCycle:
    """Hamiltonian cycle of the central block's square plus one distinct real
    cycle edge chosen for each cut vertex living in that block."""

    block: tuple
    cycle: HamCycle
    assigned: tuple  # ((cut, (cut, w)), ...) sorted by cut label


def acceptable_cycle(g: Graph, bc, cap=None, budget=None) -> AcceptableCycle | None:
    """Search the central cyclic block for a hamiltonian cycle of its square
    with pairwise distinct real cycle edges, one through each cut vertex.

    Cycles are enumerated in canonical order and the edge system is found by
    bipartite matching; None means exhaustion proved no acceptable cycle.
    """
    if cap is None:
        cap = default_cap()
    block_verts = tuple(sorted(set(bc), key=vkey))
    bd = decompose(g)
    match = [i for i, b in enumerate(bd.blocks) if b == block_verts]
    if not match:
        raise WrongShape("designated vertex set is not a block of the graph")
    idx = match[0]
    if bd.block_info(idx).kind != CYCLIC:
        raise WrongShape("center block must be cyclic")
    for node in bd.high_degree_nodes():
        if node != ("block", idx):
            raise WrongShape(
                "every other block-graph node must have degree at most two"
            )
    if len(block_verts) > cap:
        raise SizeCapExceeded(f"center block exceeds the search cap {cap}")
    cuts = sorted((v for v in block_verts if bd.is_cut(v)), key=vkey)
    bg = induced(g, block_verts)
    for c in enumerate_ham_cycles(bg, budget=budget):
        incident = {}
        for e, prov in c.edges_with_provenance():
            if prov != IN_G:
                continue
            for v in e:
                if v in cuts:
                    incident.setdefault(v, []).append(e)
        matching = _match_cuts_to_edges(cuts, incident)
        if matching is not None:
            assigned = tuple(sorted(matching.items(), key=lambda kv: vkey(kv[0])))
            return AcceptableCycle(block_verts, c, assigned)
    return None


def _match_cuts_to_edges(cuts, incident):
    """Maximum bipartite matching cut -> incident real cycle edge; returns a
    full assignment or None."""
    edge_owner: dict = {}
    assign: dict = {}

    def try_assign(v, seen):
        for e in incident.get(v, ()):
            if e in seen:
                continue
            seen.add(e)
            if e not in edge_owner or try_assign(edge_owner[e], seen):
                edge_owner[e] = v
                assign[v] = e
                return True
        return False

    for v in cuts:
        if not try_assign(v, set()):
            return None
    return assign


def theorem7_construct(g: Graph, ac: AcceptableCycle, cap=None, trace=None) -> HamCycle:
    """Extend an acceptable cycle of the central block to a hamiltonian cycle
    of square(g) containing every acceptable-cycle edge except the
    designated ones.

    Legs are attached one cut vertex at a time; each merge consumes exactly
    the designated edge on the central side.
    """
    block_verts = set(ac.block)
    bd = decompose(g)
    designated = dict(ac.assigned)
    cur_g = induced(g, block_verts)
    cur_c = ac.cycle
    if not designated:
        _trace(trace, "star-block-base", None, (g.n,))
        return cur_c
    outside = induced(g, set(g.vertices) - block_verts)
    for v in sorted(designated, key=vkey):
        e = designated[v]
        w = e[0] if e[1] == v else e[1]
        leg_verts = {v}
        for nb in g.neighbors(v):
            if nb not in block_verts:
                leg_verts |= _component_of(outside, nb)
        leg = induced(g, leg_verts)
        if leg.n == 2:
            leaf = next(u for u in leg.vertices if u != v)
            cur_g, cur_c = _glue_pendant(cur_g, cur_c, v, leaf,
                                         prefer=w, trace=trace)
        else:
            leg_bd = decompose(leg)
            far = _far_anchor(leg, leg_bd, v)
            leg_c = thomassen_path_cycle(leg, v, far, cap=cap, trace=trace)
            cur_g, cur_c = _glue_shared(cur_g, cur_c, leg, leg_c, v,
                                        prefer_a=w, trace=trace)
    want = set(ac.cycle.edges()) - set(designated.values())
    have = set(cur_c.edges())
    if not want <= have:
        raise InternalDefect("a protected central edge was lost during assembly")
    return cur_c


def _far_anchor(leg: Graph, leg_bd: BlockDecomposition, v):
    """Non-cut vertex of the endblock farthest along a path-shaped leg."""
    if len(leg_bd.blocks) == 1:
        return min((u for u in leg.vertices if u != v), key=vkey)
    order = _block_path_order(leg_bd)
    first_set = set(leg_bd.blocks[order[0]])
    far_idx = order[-1] if v in first_set else order[0]
    far_set = set(leg_bd.blocks[far_idx]) - leg_bd.cut_vertices
    return min(far_set, key=vkey)


def schaar_cycle(b: Graph, cap=None, budget=None) -> HamCycle:
    """Hamiltonian cycle of the square of a 2-connected graph on at least
    four vertices with at least four real edges."""
    if cap is None:
        cap = default_cap()
    if b.n < 4:
        raise TooSmall("need at least four vertices")
    if b.n > cap:
        raise SizeCapExceeded(f"search capped at {cap} vertices")
    if not is_biconnected(b):
        raise NotTwoConnected("input must be 2-connected")
    c = find_cycle_with_min_in_g(b, 4, budget=budget)
    if c is None:
        raise InternalDefect(
            "exhaustive search found no cycle with four real edges in a 2-connected square"
        )
    return c
