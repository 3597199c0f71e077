"""Edge-list documents, JSON certificates, and DOT export."""

from __future__ import annotations

import json

from .blocks import ClassCheck
from .engine import Certificate, TraceStep
from .graph import Graph, HamCycle, HamSquareError


class MalformedInput(HamSquareError):
    pass


def parse_edge_list(text: str):
    """Parse an edge-list document: a header line "graph <name> <n> <m>"
    followed by m whitespace-separated edge lines; '#' starts a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise MalformedInput("empty document")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "graph":
        raise MalformedInput("header must be: graph <name> <n> <m>")
    name = header[1]
    try:
        n, m = int(header[2]), int(header[3])
    except ValueError as exc:
        raise MalformedInput("header counts must be integers") from exc
    if len(lines) - 1 != m:
        raise MalformedInput(f"expected {m} edge lines, found {len(lines) - 1}")
    vertices = set()
    edges = []
    seen = set()
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInput(f"bad edge line: {line!r}")
        u, v = parts
        if u == v:
            raise MalformedInput(f"loop edge at {u!r}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise MalformedInput(f"duplicate edge {u!r} {v!r}")
        seen.add(key)
        vertices.update((u, v))
        edges.append((u, v))
    if len(vertices) != n:
        raise MalformedInput(
            f"header says {n} vertices, edges mention {len(vertices)}"
        )
    return name, Graph(vertices, edges)


def format_edge_list(name: str, g: Graph) -> str:
    lines = [f"graph {name} {g.n} {g.m}"]
    for u, v in sorted(g.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def certificate_to_json(cert: Certificate) -> str:
    doc = {
        "decision": cert.decision,
        "mode": cert.mode,
        "cycle": list(cert.cycle.order) if cert.cycle else None,
        "edge_provenance": list(cert.cycle.provenance) if cert.cycle else None,
        "witness": cert.witness,
        "witness_kind": cert.witness_kind,
        "reason": cert.reason,
        "trace": [
            {
                "theorem_case": step.case,
                "merged_vertex": _label_out(step.merged_vertex),
                "subgraph_sizes": list(step.subgraph_sizes),
            }
            for step in cert.trace
        ],
        "preconditions": {
            "in_class": cert.class_check.in_class if cert.class_check else None,
            "violations": list(cert.class_check.violations) if cert.class_check else [],
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def _label_out(v):
    if v is None or isinstance(v, (str, int)):
        return v
    return str(v)


def certificate_from_json(text: str, g: Graph | None = None) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"bad certificate JSON: {exc}") from exc
    cycle = None
    if doc.get("cycle"):
        order = tuple(doc["cycle"])
        prov = tuple(doc.get("edge_provenance") or ())
        if g is not None:
            cycle = HamCycle.in_square(g, order)
        else:
            cycle = HamCycle(order, prov)
    pre = doc.get("preconditions") or {}
    cc = ClassCheck(bool(pre.get("in_class")), tuple(pre.get("violations") or ()))
    trace = tuple(
        TraceStep(
            step.get("theorem_case"),
            step.get("merged_vertex"),
            tuple(step.get("subgraph_sizes") or ()),
        )
        for step in doc.get("trace") or ()
    )
    return Certificate(
        decision=doc.get("decision"),
        cycle=cycle,
        witness=doc.get("witness"),
        witness_kind=doc.get("witness_kind"),
        reason=doc.get("reason"),
        mode=doc.get("mode") or "constructive",
        class_check=cc,
        trace=trace,
    )


def to_dot(g: Graph, include_square: bool = False,
           cycle: HamCycle | None = None) -> str:
    """DOT rendering: real edges solid, square-only edges dashed, cycle
    edges bold red."""
    from .graph import square

    cycle_edges = set(cycle.edges()) if cycle is not None else set()
    lines = ["graph G {"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    shown = set(g.edges)
    if include_square:
        shown |= set(square(g).edges)
    shown |= cycle_edges
    for e in sorted(shown):
        u, v = e
        attrs = []
        if not g.has_edge(u, v):
            attrs.append("style=dashed")
        if e in cycle_edges:
            attrs.append("color=red")
            attrs.append("penwidth=2.0")
        body = f' [{", ".join(attrs)}]' if attrs else ""
        lines.append(f'  "{u}" -- "{v}"{body};')
    lines.append("}")
    return "\n".join(lines) + "\n"
