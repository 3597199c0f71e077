import pytest

from hamsquare.blocks import decompose
from hamsquare.engine import decide_and_construct
from hamsquare.fileio import (
    MalformedInput,
    certificate_from_json,
    certificate_to_json,
    format_edge_list,
    parse_edge_list,
    to_dot,
)
from hamsquare.generators import (
    BadParams,
    block_path,
    figure1,
    figure2,
    make_family,
    random_connected,
    star_cut,
)
from hamsquare.graph import Graph, is_connected


def test_figure1_shape():
    g = figure1()
    assert g.n == 10 and g.m == 12
    assert decompose(g).cut_vertices == {"v1", "v2", "v5", "v9"}


def test_figure2_shape():
    g = figure2([3, 3, 3, 3, 3])
    bd = decompose(g)
    frame = next(b for b in bd.blocks if len(b) == 7)
    assert set(frame) == {"L", "R", "m1", "m2", "m3", "m4", "m5"}
    assert bd.cut_vertices == {"m1", "m2", "m3", "m4", "m5"}
    with pytest.raises(BadParams):
        figure2([1, 2, 2, 2, 2])
    with pytest.raises(BadParams):
        figure2([2, 2, 2])


def test_block_path_all_edges_is_path():
    g = block_path([2, 2, 2])
    degs = sorted(g.degree(v) for v in g.vertices)
    assert g.n == 4 and degs == [1, 1, 2, 2]


def test_star_cut_legs():
    g = star_cut([[2], [2], [2, 2]])
    bd = decompose(g)
    assert bd.is_cut("a")
    assert len(bd.blocks_at("a")) == 3


def test_random_is_deterministic_and_connected():
    a = random_connected(7, 9)
    b = random_connected(7, 9)
    assert a == b and is_connected(a)
    assert random_connected(8, 9) != a


def test_make_family():
    name, g = make_family("figure1")
    assert name == "figure1" and g.n == 10
    _, g = make_family("figure2:2,2,2,2,2")
    assert g.n == 12
    _, g = make_family("block-path:2,3,2")
    assert decompose(g).cut_vertices
    _, g = make_family("star-cut:2;2;2,2")
    assert g.has_vertex("a")
    _, ga = make_family("random:seed=7,n=9")
    _, gb = make_family("random:7,9")
    assert ga == gb
    with pytest.raises(BadParams):
        make_family("mystery:1")


def test_edge_list_roundtrip():
    g = figure1()
    text = format_edge_list("fig", g)
    name, back = parse_edge_list(text)
    assert name == "fig" and back == g
    assert format_edge_list(name, back) == text


@pytest.mark.parametrize("doc,msg", [
    ("", "empty"),
    ("graph g 2\na b\n", "header"),
    ("graph g 2 1\na a\n", "loop"),
    ("graph g 2 2\na b\nb a\n", "duplicate"),
    ("graph g 3 1\na b\n", "vertices"),
    ("graph g 2 2\na b\n", "edge lines"),
])
def test_edge_list_errors(doc, msg):
    with pytest.raises(MalformedInput) as err:
        parse_edge_list(doc)
    assert msg in str(err.value)


def test_certificate_roundtrip(figure1):
    cert = decide_and_construct(figure1)
    text = certificate_to_json(cert)
    back = certificate_from_json(text, figure1)
    assert back.decision == cert.decision
    assert back.cycle == cert.cycle
    assert back.trace == cert.trace
    assert back.class_check.in_class == cert.class_check.in_class
    assert certificate_to_json(back) == text


def test_certificate_roundtrip_negative(sk13):
    cert = decide_and_construct(sk13)
    back = certificate_from_json(certificate_to_json(cert), sk13)
    assert back.decision == "not-hamiltonian"
    assert back.witness == "c"


def test_dot_output(figure1):
    cert = decide_and_construct(figure1)
    dot = to_dot(figure1, include_square=True, cycle=cert.cycle)
    assert dot.startswith("graph G {")
    assert "style=dashed" in dot and "color=red" in dot
    plain = to_dot(figure1)
    assert "color=red" not in plain
