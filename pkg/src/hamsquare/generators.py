"""Instance generators: the two reference fixtures and parameterized
families for property tests.

figure1: three triangles sharing the vertex v1, with pendant edges at v2,
v5 and v9 (10 vertices, 12 edges).

figure2: a complete bipartite frame K(2,5) on {L, R} x {m1..m5} with a
clique K(n_i) attached at each middle vertex m_i; the block graph is a
star whose center is the frame block with the five m_i as cut vertices.
"""

from __future__ import annotations

import random as _random

from .graph import Graph, HamSquareError


class BadParams(HamSquareError):
    pass


def figure1() -> Graph:
    vs = [f"v{i}" for i in range(1, 11)]
    edges = [
        ("v1", "v2"), ("v2", "v4"), ("v4", "v1"),
        ("v1", "v5"), ("v5", "v7"), ("v7", "v1"),
        ("v1", "v9"), ("v9", "v8"), ("v8", "v1"),
        ("v2", "v3"), ("v5", "v6"), ("v9", "v10"),
    ]
    return Graph(vs, edges)


def figure1_reference_cycle() -> tuple:
    return tuple(f"v{i}" for i in range(1, 11))


def figure2(sizes) -> Graph:
    sizes = tuple(int(x) for x in sizes)
    if len(sizes) != 5 or any(s < 2 for s in sizes):
        raise BadParams("figure2 needs five clique sizes, each at least 2")
    vs = ["L", "R"] + [f"m{i}" for i in range(1, 6)]
    edges = []
    for i in range(1, 6):
        edges.append(("L", f"m{i}"))
        edges.append(("R", f"m{i}"))
    for i, s in enumerate(sizes, start=1):
        clique = [f"m{i}"] + [f"c{i}_{j}" for j in range(1, s)]
        vs += clique[1:]
        for a in range(len(clique)):
            for b in range(a + 1, len(clique)):
                edges.append((clique[a], clique[b]))
    return Graph(vs, edges)


def block_path(sizes) -> Graph:
    """Chain of blocks sharing consecutive cut vertices.

    Size 2 gives a bridge edge, size s >= 3 a cycle block on s vertices.
    """
    sizes = tuple(int(x) for x in sizes)
    if not sizes or any(s < 2 for s in sizes):
        raise BadParams("block sizes must all be at least 2")
    counter = 0

    def fresh():
        nonlocal counter
        counter += 1
        return f"v{counter - 1}"

    entry = fresh()
    vs = [entry]
    edges = []
    for s in sizes:
        ring = [entry] + [fresh() for _ in range(s - 1)]
        vs += ring[1:]
        if s == 2:
            edges.append((ring[0], ring[1]))
        else:
            for i in range(s):
                edges.append((ring[i], ring[(i + 1) % s]))
        entry = ring[-1]
    return Graph(vs, edges)


def star_cut(legs) -> Graph:
    """Branches hanging off one central cut vertex "a".

    Each leg is a sequence of block sizes walked outward from the center;
    size 2 is a bridge, larger sizes are cycle blocks.
    """
    legs = [tuple(int(x) for x in leg) for leg in legs]
    if len(legs) < 2 or any(not leg or any(s < 2 for s in leg) for leg in legs):
        raise BadParams("need at least two legs of blocks sized at least 2")
    vs = ["a"]
    edges = []
    for li, leg in enumerate(legs):
        entry = "a"
        counter = 0
        for s in leg:
            ring = [entry] + [f"l{li}_{counter + j}" for j in range(s - 1)]
            counter += s - 1
            vs += ring[1:]
            if s == 2:
                edges.append((ring[0], ring[1]))
            else:
                for i in range(s):
                    edges.append((ring[i], ring[(i + 1) % s]))
            entry = ring[-1]
    return Graph(vs, edges)


def random_connected(seed: int, n: int) -> Graph:
    """Deterministic connected graph: a random tree plus extra edges."""
    if n < 1:
        raise BadParams("need at least one vertex")
    rng = _random.Random(int(seed))
    vs = [f"v{i}" for i in range(n)]
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add((vs[j], vs[i]))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.25:
                edges.add((vs[i], vs[j]))
    return Graph(vs, sorted(edges))


def make_family(spec: str):
    """Parse a family spec like "figure2:3,3,3,3,3" into (name, Graph)."""
    name, _, params = spec.partition(":")
    name = name.strip()
    if name == "figure1":
        if params:
            raise BadParams("figure1 takes no parameters")
        return "figure1", figure1()
    if name == "figure2":
        return f"figure2-{params}", figure2(_int_list(params))
    if name == "block-path":
        return f"block-path-{params}", block_path(_int_list(params))
    if name == "star-cut":
        legs = [_int_list(leg) for leg in params.split(";") if leg]
        return f"star-cut-{params}", star_cut(legs)
    if name == "random":
        kv = _keyed_ints(params, ("seed", "n"))
        return f"random-{kv['seed']}-{kv['n']}", random_connected(kv["seed"], kv["n"])
    raise BadParams(f"unknown family {name!r}")


def _int_list(params: str):
    try:
        return [int(x) for x in params.split(",") if x.strip()]
    except ValueError as exc:
        raise BadParams(f"bad integer parameters {params!r}") from exc


def _keyed_ints(params: str, names):
    parts = [p for p in params.split(",") if p.strip()]
    if len(parts) != len(names):
        raise BadParams(f"expected parameters {','.join(names)}")
    out = {}
    for name, part in zip(names, parts):
        if "=" in part:
            key, _, val = part.partition("=")
            if key.strip() != name:
                raise BadParams(f"expected parameter {name!r}, got {key!r}")
            part = val
        try:
            out[name] = int(part)
        except ValueError as exc:
            raise BadParams(f"bad value for {name!r}") from exc
    return out
