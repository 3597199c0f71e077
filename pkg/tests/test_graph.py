import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamsquare.graph import (
    IN_G,
    SQUARE_ONLY,
    Graph,
    HamCycle,
    FreshLabelCollision,
    NonDisjointVertexSets,
    SizeCapExceeded,
    VertexNotFound,
    connect,
    distance,
    induced,
    is_isomorphic_small,
    relabel,
    square,
    vkey,
)

from conftest import cycle_graph, path_graph, triangle


def random_connected_graph(draw_edges, n):
    verts = list(range(n))
    edges = [(i, (i * 7 + 1) % n) for i in range(1, n)]
    return Graph(verts, edges)


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    verts = list(range(n))
    edges = []
    for i in range(1, n):
        edges.append((draw(st.integers(0, i - 1)), i))  # random spanning tree
    extra = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10))
    for u, v in extra:
        if u != v:
            edges.append((u, v))
    return Graph(verts, edges)


def test_square_path_is_triangle():
    g = path_graph("abc")
    sq = square(g)
    assert sq.edges == Graph("abc", [("a", "b"), ("b", "c"), ("a", "c")]).edges


def test_square_star_is_complete():
    g = Graph("cxyz", [("c", "x"), ("c", "y"), ("c", "z")])
    sq = square(g)
    assert sq.m == 6  # K4


def test_square_figure1_contains_reference_cycle(figure1):
    from hamsquare.generators import figure1_reference_cycle

    sq = square(figure1)
    order = figure1_reference_cycle()
    for i in range(len(order)):
        assert sq.has_edge(order[i], order[(i + 1) % len(order)])


def test_connect_two_edges_makes_path():
    g1 = Graph(["a", "x1"], [("a", "x1")])
    g2 = Graph(["x2", "b"], [("x2", "b")])
    g = connect(g1, "x1", g2, "x2", "x")
    assert g == path_graph(["a", "x", "b"])


def test_connect_triangles_makes_bowtie():
    t1 = triangle(("a", "b", "x1"))
    t2 = triangle(("c", "d", "x2"))
    g = connect(t1, "x1", t2, "x2", "x")
    assert g.n == 5 and g.m == 6
    assert set(g.neighbors("x")) == {"a", "b", "c", "d"}


def test_connect_counts_and_errors():
    t1 = triangle(("a", "b", "x1"))
    t2 = triangle(("c", "d", "x2"))
    assert connect(t1, "x1", t2, "x2", "x").n == t1.n + t2.n - 1
    with pytest.raises(VertexNotFound):
        connect(t1, "zz", t2, "x2", "x")
    with pytest.raises(NonDisjointVertexSets):
        connect(t1, "x1", triangle(("a", "e", "x2")), "x2", "x")
    with pytest.raises(FreshLabelCollision):
        connect(t1, "x1", t2, "x2", "a")


def test_distance_basics(figure1):
    g = path_graph("abc")
    assert distance(g, "a", "a") == 0
    assert distance(figure1, "v3", "v6") == 4
    two = Graph([0, 1, 2, 3], [(0, 1), (2, 3)])
    assert distance(two, 0, 3) is None
    with pytest.raises(VertexNotFound):
        distance(g, "a", "q")


def test_induced(figure1):
    g = triangle()
    assert induced(g, g.vertices) == g
    assert induced(g, []) == Graph()
    sub = induced(figure1, ["v1", "v2", "v3", "v5", "v6", "v9", "v10"])
    claw = Graph(
        ["c", "m1", "m2", "m3", "t1", "t2", "t3"],
        [("c", "m1"), ("c", "m2"), ("c", "m3"),
         ("m1", "t1"), ("m2", "t2"), ("m3", "t3")],
    )
    assert is_isomorphic_small(sub, claw)


def test_isomorphism_small():
    t = triangle()
    assert is_isomorphic_small(t, triangle(("x", "y", "z")))
    assert not is_isomorphic_small(t, path_graph("abc"))
    with pytest.raises(SizeCapExceeded):
        big = Graph(range(15))
        is_isomorphic_small(big, big)


def test_relabel_roundtrip():
    g = triangle()
    h = relabel(g, {"a": 1, "b": 2, "c": 3})
    assert h.n == 3 and h.has_edge(1, 2)
    with pytest.raises(ValueError):
        relabel(g, {"a": "b"})


def test_ham_cycle_canonical_form():
    g = cycle_graph(range(5))
    base = HamCycle.in_square(g, (0, 1, 2, 3, 4))
    for rot in range(5):
        seq = tuple((i + rot) % 5 for i in range(5))
        assert HamCycle.in_square(g, seq) == base
        assert HamCycle.in_square(g, tuple(reversed(seq))) == base


def test_ham_cycle_provenance():
    g = path_graph("abc")
    c = HamCycle.in_square(g, ("a", "b", "c"))
    prov = dict(zip(c.edges(), c.provenance))
    assert c.in_g_count("b") == 2
    assert c.in_g_count("a") == 1
    assert sorted(c.provenance).count(IN_G) == 2
    assert SQUARE_ONLY in c.provenance


def test_ham_cycle_rejects_distance_violation(figure1):
    with pytest.raises(ValueError):
        # v3 and v6 are four apart
        HamCycle.in_square(
            figure1,
            ("v3", "v6", "v1", "v2", "v4", "v5", "v7", "v8", "v9", "v10"),
        )


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_square_is_monotone(g):
    assert g.edges <= square(g).edges


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_square_of_connected_is_biconnected(g):
    from hamsquare.blocks import is_biconnected

    if g.n >= 3:
        assert is_biconnected(square(g))


@given(small_graphs(max_n=5), small_graphs(max_n=5))
@settings(max_examples=30, deadline=None)
def test_connect_symmetric_up_to_isomorphism(g1, g2):
    a = relabel(g1, {v: ("l", v) for v in g1.vertices})
    b = relabel(g2, {v: ("r", v) for v in g2.vertices})
    x1, x2 = a.vertices[0], b.vertices[0]
    left = connect(a, x1, b, x2, "x")
    right = connect(b, x2, a, x1, "x")
    assert is_isomorphic_small(left, right)


@given(small_graphs(max_n=6), st.integers(0, 100))
@settings(max_examples=40, deadline=None)
def test_induced_square_subset_of_square_induced(g, pick):
    verts = [v for i, v in enumerate(g.vertices) if (pick >> i) & 1]
    inner = square(induced(g, verts))
    outer = induced(square(g), verts)
    assert inner.edges <= outer.edges
