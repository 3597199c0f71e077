import itertools

import pytest

from hamsquare.graph import Graph, square


@pytest.fixture(scope="session")
def figure1():
    from hamsquare.generators import figure1 as gen

    return gen()


@pytest.fixture(scope="session")
def sk13():
    """The claw with every edge subdivided once."""
    return Graph(
        ["c", "m1", "m2", "m3", "t1", "t2", "t3"],
        [("c", "m1"), ("c", "m2"), ("c", "m3"),
         ("m1", "t1"), ("m2", "t2"), ("m3", "t3")],
    )


def triangle(labels=("a", "b", "c")):
    a, b, c = labels
    return Graph([a, b, c], [(a, b), (b, c), (a, c)])


def path_graph(labels):
    labels = list(labels)
    return Graph(labels, list(zip(labels, labels[1:])))


def cycle_graph(labels):
    labels = list(labels)
    return Graph(labels, list(zip(labels, labels[1:])) + [(labels[-1], labels[0])])


def brute_force_square_ham(g, predicate=None):
    """Independent oracle: try every vertex permutation as a cycle of the
    square.  Returns a satisfying order or None.  Exponential; keep n small.
    """
    sq = square(g)
    verts = list(g.vertices)
    if len(verts) < 3:
        return None
    first = verts[0]
    for perm in itertools.permutations(verts[1:]):
        order = (first,) + perm
        ok = True
        for i in range(len(order)):
            u, v = order[i], order[(i + 1) % len(order)]
            if not sq.has_edge(u, v):
                ok = False
                break
        if ok and (predicate is None or predicate(g, order)):
            return order
    return None
