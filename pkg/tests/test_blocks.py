import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamsquare.blocks import (
    ACYCLIC,
    CYCLIC,
    ENDBLOCK,
    NON_END,
    DisconnectedInput,
    TooSmall,
    TrivialGraph,
    branches,
    check_main_preconditions,
    decompose,
    is_biconnected,
    is_subdivided_star,
    t_count,
)
from hamsquare.graph import Graph, relabel

from conftest import cycle_graph, path_graph, triangle
from test_graph import small_graphs


def test_decompose_path():
    bd = decompose(path_graph("abc"))
    assert bd.blocks == (("a", "b"), ("b", "c"))
    assert bd.cut_vertices == {"b"}


def test_decompose_triangle():
    bd = decompose(triangle())
    assert bd.blocks == (("a", "b", "c"),)
    assert bd.cut_vertices == frozenset()
    assert bd.block_info(0).kind == CYCLIC
    assert bd.block_info(0).degree == 0


def test_decompose_figure1(figure1):
    bd = decompose(figure1)
    assert bd.blocks == (
        ("v1", "v2", "v4"),
        ("v1", "v5", "v7"),
        ("v1", "v8", "v9"),
        ("v10", "v9"),
        ("v2", "v3"),
        ("v5", "v6"),
    )
    assert bd.cut_vertices == {"v1", "v2", "v5", "v9"}
    kinds = [bd.block_info(i).kind for i in range(6)]
    assert kinds == [CYCLIC, CYCLIC, CYCLIC, ACYCLIC, ACYCLIC, ACYCLIC]
    ends = [bd.block_info(i).end_status for i in range(6)]
    assert ends == [NON_END, NON_END, NON_END, ENDBLOCK, ENDBLOCK, ENDBLOCK]


def test_decompose_errors():
    with pytest.raises(TrivialGraph):
        decompose(Graph(["a"]))
    with pytest.raises(DisconnectedInput):
        decompose(Graph([0, 1, 2, 3], [(0, 1), (2, 3)]))


def test_t_count(figure1, sk13):
    assert t_count(figure1, "v1") == 0
    assert t_count(sk13, "c") == 3
    star = Graph("axyz", [("a", "x"), ("a", "y"), ("a", "z")])
    assert t_count(star, "a") == 0


def test_check_main_preconditions(figure1):
    assert check_main_preconditions(figure1).in_class

    # bowtie plus a pendant on the shared vertex: the degree-3 node is a cut
    bow = Graph(
        ["a", "b", "x", "c", "d", "p"],
        [("a", "b"), ("a", "x"), ("b", "x"),
         ("c", "d"), ("c", "x"), ("d", "x"), ("x", "p")],
    )
    assert check_main_preconditions(bow).in_class

    # a cyclic block with pendant edges on three distinct vertices: the
    # block node itself has degree three
    g = Graph(
        ["a", "b", "c", "p", "q", "r"],
        [("a", "b"), ("b", "c"), ("a", "c"),
         ("a", "p"), ("b", "q"), ("c", "r")],
    )
    cc = check_main_preconditions(g)
    assert not cc.in_class and "block" in cc.violations[0]

    # two high-degree cut vertices too close together
    g2 = Graph(
        ["a", "b", "x", "y", "z", "p", "q", "r"],
        [("a", "b"),
         ("a", "x"), ("a", "y"), ("a", "z"),
         ("b", "p"), ("b", "q"), ("b", "r")],
    )
    cc2 = check_main_preconditions(g2)
    assert not cc2.in_class and "distance" in cc2.violations[0]

    with pytest.raises(TooSmall):
        check_main_preconditions(Graph([0, 1], [(0, 1)]))


def test_branches_path_and_star(figure1):
    bd = decompose(path_graph("abcd"))
    brs = branches(bd)
    assert len(brs) == 1
    assert len(brs[0]) == 5  # three block nodes and two cut nodes

    bd1 = decompose(figure1)
    brs1 = branches(bd1)
    # three maximal paths from the central cut vertex out to the bridges
    assert len(brs1) == 3
    for p in brs1:
        assert ("cut", "v1") in (p[0], p[-1])
        assert len(p) == 4

    single = decompose(triangle())
    assert branches(single) == ()


def test_branches_partition_edges():
    g = Graph(
        ["a", "b", "c", "d", "e", "p"],
        [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("c", "p")],
    )
    bd = decompose(g)
    brs = branches(bd)
    covered = []
    for p in brs:
        covered += [frozenset((p[i], p[i + 1])) for i in range(len(p) - 1)]
    all_edges = [
        frozenset((node, nb))
        for node in bd.bl_nodes()
        for nb in bd.bl_neighbors(node)
    ]
    assert sorted(map(sorted, set(all_edges))) == sorted(map(sorted, set(covered)))
    assert len(covered) == len(set(covered))


def test_shape_classification(figure1):
    assert is_subdivided_star(decompose(figure1)).kind == "star-cut"
    assert is_subdivided_star(decompose(figure1)).center_cut == "v1"

    from hamsquare.generators import figure2

    sh = is_subdivided_star(decompose(figure2([2, 2, 2, 2, 2])))
    assert sh.kind == "star-block"
    assert set(sh.center_block) == {"L", "R", "m1", "m2", "m3", "m4", "m5"}

    assert is_subdivided_star(decompose(path_graph("abcd"))).kind == "path"

    two_centers = Graph(
        ["a", "x", "y", "z", "b", "p", "q", "r", "m"],
        [("a", "x"), ("a", "y"), ("a", "z"), ("a", "m"), ("m", "b"),
         ("b", "p"), ("b", "q"), ("b", "r")],
    )
    assert is_subdivided_star(decompose(two_centers)).kind == "other"


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_block_tree_identity(g):
    if g.n < 2:
        return
    bd = decompose(g)
    assert sum(len(b) - 1 for b in bd.blocks) == g.n - 1


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_cut_vertices_are_two_block_vertices(g):
    if g.n < 2:
        return
    bd = decompose(g)
    for v in g.vertices:
        assert (len(bd.blocks_at(v)) >= 2) == bd.is_cut(v)


@given(small_graphs())
@settings(max_examples=40, deadline=None)
def test_t_count_bounds(g):
    if g.n < 2:
        return
    bd = decompose(g)
    for v in g.vertices:
        t = t_count(g, v)
        assert t <= len(bd.blocks_at(v))
        if not bd.is_cut(v) and g.n >= 3:
            # In a graph bigger than one edge, the single block of a non-cut
            # vertex is either cyclic or an endblock.
            assert t == 0


@given(small_graphs())
@settings(max_examples=30, deadline=None)
def test_class_check_is_isomorphism_invariant(g):
    if g.n < 3:
        return
    shuffled = relabel(g, {v: ("s", (v * 13 + 5) % 101) for v in g.vertices})
    assert check_main_preconditions(g).in_class == check_main_preconditions(shuffled).in_class
