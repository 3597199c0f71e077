import json

import pytest

from hamsquare.cli import main
from hamsquare.fileio import format_edge_list
from hamsquare.generators import figure1


@pytest.fixture()
def fig1_file(tmp_path):
    p = tmp_path / "fig1.el"
    p.write_text(format_edge_list("figure1", figure1()))
    return str(p)


@pytest.fixture()
def sk13_file(tmp_path):
    doc = "graph sk13 7 6\nc m1\nc m2\nc m3\nm1 t1\nm2 t2\nm3 t3\n"
    p = tmp_path / "sk13.el"
    p.write_text(doc)
    return str(p)


def test_decide_figure1(fig1_file, capsys):
    assert main(["decide", fig1_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["decision"] == "hamiltonian"
    assert len(doc["cycle"]) == 10
    assert doc["preconditions"]["in_class"] is True


def test_decide_sk13(sk13_file, capsys):
    assert main(["decide", sk13_file]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["decision"] == "not-hamiltonian"
    assert doc["witness"] == "c"


def test_decide_out_of_class(tmp_path, capsys):
    doc = "graph tri3p 6 6\na b\nb c\na c\na p\nb q\nc r\n"
    p = tmp_path / "g.el"
    p.write_text(doc)
    assert main(["decide", str(p)]) == 3
    assert main(["decide", str(p), "--mode", "oracle"]) == 0


def test_verify_roundtrip(fig1_file, tmp_path, capsys):
    main(["decide", fig1_file])
    cert = capsys.readouterr().out
    cp = tmp_path / "cert.json"
    cp.write_text(cert)
    assert main(["verify", fig1_file, str(cp)]) == 0
    doc = json.loads(cert)
    doc["cycle"][1], doc["cycle"][4] = doc["cycle"][4], doc["cycle"][1]
    cp.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", fig1_file, str(cp)]) != 0


def test_analyze(fig1_file, capsys):
    assert main(["analyze", fig1_file]) == 0
    out = capsys.readouterr().out
    assert "cut vertices: v1, v2, v5, v9" in out
    assert "star centered at cut vertex v1" in out
    assert "in class" in out


def test_classify(fig1_file, capsys):
    assert main(["classify", fig1_file, "--vertex", "v1"]) == 0
    assert "type 1" in capsys.readouterr().out


def test_construct_variants(fig1_file, capsys):
    assert main(["construct", fig1_file, "--theorem", "lemma1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["decision"] == "hamiltonian"
    assert main(["construct", fig1_file, "--theorem", "main"]) == 0
    capsys.readouterr()


def test_construct_star_block(tmp_path, capsys):
    doc = "graph t 5 5\na b\nb c\na c\na d\nd e\n"
    p = tmp_path / "t.el"
    p.write_text(doc)
    assert main(["construct", str(p), "--theorem", "star-block"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["decision"] == "hamiltonian"


def test_oracle_with_required_edges(fig1_file, capsys):
    assert main(["oracle", fig1_file, "--require-edge", "v1,v2",
                 "--require-edge", "v9,v10"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out[0].split()) == 10


def test_generate_deterministic(capsys):
    assert main(["generate", "--family", "random:seed=3,n=8"]) == 0
    first = capsys.readouterr().out
    assert main(["generate", "--family", "random:seed=3,n=8"]) == 0
    assert capsys.readouterr().out == first


def test_generate_pipe_decide(tmp_path, capsys):
    assert main(["generate", "--family", "figure2:2,2,2,2,2"]) == 0
    doc = capsys.readouterr().out
    p = tmp_path / "f2.el"
    p.write_text(doc)
    # Recorded regression value: this instance has a non-hamiltonian square.
    assert main(["decide", str(p), "--mode", "oracle"]) == 2


def test_export_dot(fig1_file, capsys):
    assert main(["export-dot", fig1_file, "--square"]) == 0
    assert "style=dashed" in capsys.readouterr().out


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.el"
    bad.write_text("not a graph\n")
    assert main(["decide", str(bad)]) == 65
    assert main(["decide", str(tmp_path / "missing.el")]) == 65
    assert main(["nonsense"]) == 64
    c9 = tmp_path / "c9.el"
    c9.write_text("graph c9 9 9\n" + "\n".join(
        f"v{i} v{(i + 1) % 9}" for i in range(9)) + "\n")
    assert main(["decide", str(c9), "--mode", "oracle", "--budget", "3"]) == 4


def test_explore_conjecture_tiny(capsys):
    assert main(["explore-conjecture", "--max-block", "4", "--legs", "3"]) == 0
    out = capsys.readouterr().out
    assert "checked" in out
    assert "0 non-hamiltonian squares found" in out
