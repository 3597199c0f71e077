"""Independent verification of engine claims.

This module deliberately reuses none of the engine's construction code:
cycles are re-checked straight from the graph definition, decisions are
re-checked against the block structure and, at desk scale, against the
raw exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .blocks import check_main_preconditions, decompose, t_of
from .graph import (
    IN_G,
    SQUARE_ONLY,
    Graph,
    HamCycle,
    SizeCapExceeded,
    default_cap,
    edge_key,
    vkey,
)
from .search import CycleConstraint, Rule, find_ham_cycle_constrained


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple = ()
    witness: object = None

    @staticmethod
    def failure(kind, location, detail):
        return VerificationReport(False, ((kind, location, detail),))


def verify_ham_cycle_in_square(g: Graph, c: HamCycle) -> VerificationReport:
    """Re-check that c is a hamiltonian cycle of square(g) with consistent
    provenance flags."""
    violations = []
    if set(c.order) != set(g.vertices) or len(set(c.order)) != len(c.order):
        violations.append(
            ("NotHamiltonian", None, "cycle does not visit every vertex exactly once")
        )
        return VerificationReport(False, tuple(violations))
    n = len(c.order)
    if len(c.provenance) != n:
        violations.append(("ProvenanceMismatch", None, "provenance length differs"))
        return VerificationReport(False, tuple(violations))
    for i in range(n):
        u, v = c.order[i], c.order[(i + 1) % n]
        real = g.has_edge(u, v)
        within_two = real or bool(g.neighbors(u) & g.neighbors(v))
        if not within_two:
            violations.append(
                ("DistanceViolation", (u, v), "consecutive pair beyond distance two")
            )
            continue
        flag = c.provenance[i]
        if real and flag != IN_G:
            violations.append(("ProvenanceMismatch", (u, v), "real edge flagged as shortcut"))
        if not real and flag != SQUARE_ONLY:
            violations.append(("ProvenanceMismatch", (u, v), "shortcut flagged as real edge"))
    return VerificationReport(not violations, tuple(violations))


def verify_edge_conditions(g: Graph, c: HamCycle, cc: CycleConstraint) -> VerificationReport:
    """Re-check every per-vertex rule and edge requirement against c."""
    cc.validate(g)
    base = verify_ham_cycle_in_square(g, c)
    if not base.ok:
        return base
    violations = []
    cycle_edges = set(c.edges())
    for v, rule in cc.vertex_rules.items():
        cnt = c.in_g_count(v)
        if rule is Rule.BOTH_IN_G and cnt != 2:
            violations.append(("ConstraintViolation", v, f"wanted two real edges, found {cnt}"))
        elif rule is Rule.ONE_IN_G and cnt != 1:
            violations.append(("ConstraintViolation", v, f"wanted one real edge, found {cnt}"))
        elif rule is Rule.NONE_IN_G and cnt != 0:
            violations.append(("ConstraintViolation", v, f"wanted no real edge, found {cnt}"))
        elif rule is Rule.NEIGHBOR_EDGE:
            nbrs = g.neighbors(v)
            if not any(e[0] in nbrs and e[1] in nbrs for e in cycle_edges):
                violations.append(
                    ("ConstraintViolation", v, "no cycle edge joins two of its neighbors")
                )
    for u, v in cc.required_edges:
        if edge_key(u, v) not in cycle_edges:
            violations.append(("ConstraintViolation", (u, v), "required edge missing"))
    for u, v in cc.forbidden_edges:
        if edge_key(u, v) in cycle_edges:
            violations.append(("ConstraintViolation", (u, v), "forbidden edge present"))
    return VerificationReport(not violations, tuple(violations))


def verify_decision(g: Graph, cert, cap=None, budget=None) -> VerificationReport:
    """Re-check a decision certificate.

    Hamiltonian: the cycle is re-verified, and constructive certificates
    additionally must meet the real-edge count at every high-degree cut
    vertex.  Not-hamiltonian: the structural witness is re-checked and, at
    or below the oracle cap, exhaustive search confirms absence.
    """
    if cap is None:
        cap = default_cap()
    violations = []
    if cert.decision == "hamiltonian":
        if cert.cycle is None:
            return VerificationReport.failure("NotHamiltonian", None, "certificate has no cycle")
        base = verify_ham_cycle_in_square(g, cert.cycle)
        if not base.ok:
            return base
        if cert.mode == "constructive":
            bd = decompose(g)
            for node in bd.high_degree_nodes():
                if node[0] != "cut":
                    continue
                a = node[1]
                want = 2 - t_of(bd, a)
                got = cert.cycle.in_g_count(a)
                if got != want:
                    violations.append(
                        ("ConstraintViolation", a, f"wanted {want} real edges, found {got}")
                    )
        return VerificationReport(not violations, tuple(violations))
    if cert.decision == "not-hamiltonian":
        if cert.witness_kind == "too-small":
            if g.n >= 3:
                violations.append(("DecisionMismatch", None, "graph has three or more vertices"))
        elif cert.witness_kind == "t-count":
            bd = decompose(g)
            if cert.witness is None or t_of(bd, cert.witness) < 3:
                violations.append(
                    ("DecisionMismatch", cert.witness, "witness does not lie in three acyclic non-end blocks")
                )
        if g.n <= cap and g.n >= 3:
            if find_ham_cycle_constrained(g, None, budget) is not None:
                violations.append(
                    ("DecisionMismatch", None, "exhaustive search found a cycle after all")
                )
        return VerificationReport(not violations, tuple(violations))
    if cert.decision == "out-of-class":
        cc = check_main_preconditions(g)
        if cc.in_class:
            violations.append(("DecisionMismatch", None, "graph meets the class conditions"))
        return VerificationReport(not violations, tuple(violations))
    return VerificationReport.failure("DecisionMismatch", None, f"unknown decision {cert.decision!r}")


def check_sk13_claim(g: Graph, cap=None, budget=None) -> VerificationReport:
    """Look for an induced once-subdivided claw none of whose edges
    concentrate (three or more) in a single block of degree at most two,
    while the square of the graph is hamiltonian.

    Such a witness shows that forbidding these claws is not necessary for a
    hamiltonian square.
    """
    if cap is None:
        cap = default_cap()
    if g.n > cap:
        raise SizeCapExceeded(f"induced-subgraph enumeration capped at {cap} vertices")
    witness = _find_spread_claw(g)
    if witness is None:
        return VerificationReport.failure(
            "ConstraintViolation", None,
            "no induced subdivided claw with spread-out edges",
        )
    if g.n < 3 or find_ham_cycle_constrained(g, None, budget) is None:
        return VerificationReport.failure(
            "NotHamiltonian", None, "square has no hamiltonian cycle",
        )
    return VerificationReport(True, witness=frozenset(witness))


def _find_spread_claw(g: Graph):
    """First induced subdivided claw (center, three middles, three tips)
    whose six edges never put three into one block of degree at most two."""
    bd = decompose(g) if g.n >= 2 else None
    if bd is None:
        return None
    block_of_edge = {}
    for i, b in enumerate(bd.blocks):
        bset = set(b)
        for e in g.edges:
            if e[0] in bset and e[1] in bset:
                block_of_edge[e] = i
    low_degree = {
        i for i in range(len(bd.blocks)) if bd.block_info(i).degree <= 2
    }
    for center in sorted(g.vertices, key=vkey):
        nbrs = sorted(g.neighbors(center), key=vkey)
        if len(nbrs) < 3:
            continue
        for mids in combinations(nbrs, 3):
            if any(g.has_edge(a, b) for a, b in combinations(mids, 2)):
                continue
            tip_options = []
            for m in mids:
                opts = [
                    t for t in sorted(g.neighbors(m), key=vkey)
                    if t != center and t not in mids and not g.has_edge(t, center)
                ]
                tip_options.append(opts)
            for tips in _distinct_choices(tip_options):
                chosen = set(mids) | set(tips) | {center}
                if len(chosen) != 7:
                    continue
                if not _is_induced_claw(g, center, mids, tips):
                    continue
                edges = [edge_key(center, m) for m in mids]
                edges += [edge_key(m, t) for m, t in zip(mids, tips)]
                per_block: dict = {}
                for e in edges:
                    per_block[block_of_edge[e]] = per_block.get(block_of_edge[e], 0) + 1
                if any(cnt >= 3 and i in low_degree for i, cnt in per_block.items()):
                    continue
                return chosen
    return None


def _distinct_choices(options):
    if not options:
        yield ()
        return
    for first in options[0]:
        for rest in _distinct_choices(options[1:]):
            if first not in rest:
                yield (first,) + rest


def _is_induced_claw(g: Graph, center, mids, tips):
    """The seven chosen vertices must induce exactly the six claw edges."""
    verts = [center] + list(mids) + list(tips)
    expected = {edge_key(center, m) for m in mids}
    expected |= {edge_key(m, t) for m, t in zip(mids, tips)}
    actual = {
        edge_key(u, v)
        for u, v in combinations(verts, 2)
        if g.has_edge(u, v)
    }
    return actual == expected
