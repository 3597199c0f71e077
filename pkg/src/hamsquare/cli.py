"""Command-line surface.

Exit codes: 0 success / hamiltonian, 2 not hamiltonian, 3 out of class,
4 search budget exceeded, 64 usage error, 65 malformed input, 70 internal
defect (a guaranteed construction failed).
"""

from __future__ import annotations

import argparse
import sys

from . import certify, engine, generators
from .blocks import (
    DisconnectedInput,
    TrivialGraph,
    check_main_preconditions,
    decompose,
    is_subdivided_star,
    t_of,
)
from .fileio import (
    MalformedInput,
    certificate_from_json,
    certificate_to_json,
    format_edge_list,
    parse_edge_list,
    to_dot,
)
from .graph import HamSquareError, vkey
from .search import BudgetExceeded, CycleConstraint

EX_NOT_HAM = 2
EX_OUT_OF_CLASS = 3
EX_BUDGET = 4
EX_USAGE = 64
EX_DATA = 65
EX_DEFECT = 70


def _read_graph(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read {path}: {exc}") from exc
    return parse_edge_list(text)


def _build_parser():
    top = argparse.ArgumentParser(
        prog="hamsquare",
        description="Decide and construct hamiltonian cycles in graph squares.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="block structure, shape, and class report")
    p.add_argument("file")

    p = sub.add_parser("decide", help="decide hamiltonicity of the square")
    p.add_argument("file")
    p.add_argument("--mode", choices=["constructive", "oracle"], default="constructive")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("construct", help="run one named construction")
    p.add_argument("file")
    p.add_argument("--theorem", required=True,
                   choices=["thomassen", "lemma1", "main", "star-block"])
    p.add_argument("--anchors", default=None, help="u1,u2 for thomassen")
    p.add_argument("--cap", type=int, default=None)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("graph_file")
    p.add_argument("cert_file")
    p.add_argument("--cap", type=int, default=None)

    p = sub.add_parser("classify", help="vertex type 1-4 with witness cycle")
    p.add_argument("file")
    p.add_argument("--vertex", required=True)
    p.add_argument("--cap", type=int, default=None)

    p = sub.add_parser("oracle", help="raw constrained search")
    p.add_argument("file")
    p.add_argument("--require-edge", action="append", default=[],
                   metavar="U,V", help="repeatable")
    p.add_argument("--forbid-edge", action="append", default=[], metavar="U,V")
    p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("generate", help="write an edge-list document")
    p.add_argument("--family", required=True,
                   help="figure1 | figure2:n1,..,n5 | block-path:sizes | "
                        "star-cut:leg;leg;.. | random:seed,n")

    p = sub.add_parser("explore-conjecture",
                       help="sweep star-shaped instances centered at a block")
    p.add_argument("--max-block", type=int, default=6)
    p.add_argument("--legs", type=int, default=4)
    p.add_argument("--budget", type=int, default=2_000_000)

    p = sub.add_parser("export-dot", help="DOT output with optional highlights")
    p.add_argument("file")
    p.add_argument("--square", action="store_true")
    p.add_argument("--certificate", default=None)
    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EX_USAGE if exc.code not in (0, None) else 0
    try:
        return _dispatch(args)
    except (MalformedInput, generators.BadParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATA
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_BUDGET
    except engine.InternalDefect as exc:
        print(f"internal defect: {exc}", file=sys.stderr)
        return EX_DEFECT
    except HamSquareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE


def _dispatch(args) -> int:
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "decide":
        return _cmd_decide(args)
    if args.command == "construct":
        return _cmd_construct(args)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "classify":
        return _cmd_classify(args)
    if args.command == "oracle":
        return _cmd_oracle(args)
    if args.command == "generate":
        return _cmd_generate(args)
    if args.command == "explore-conjecture":
        return _cmd_explore(args)
    if args.command == "export-dot":
        return _cmd_export_dot(args)
    return EX_USAGE


def _cmd_analyze(args) -> int:
    name, g = _read_graph(args.file)
    print(f"graph {name}: {g.n} vertices, {g.m} edges")
    try:
        bd = decompose(g)
    except (TrivialGraph, DisconnectedInput) as exc:
        print(f"no decomposition: {exc}", file=sys.stderr)
        return EX_DATA
    for i, b in enumerate(bd.blocks):
        info = bd.block_info(i)
        print(f"block {i}: {{{', '.join(str(v) for v in b)}}} "
              f"{info.kind} {info.end_status} degree={info.degree}")
    cuts = sorted(bd.cut_vertices, key=vkey)
    print(f"cut vertices: {', '.join(str(v) for v in cuts) or '(none)'}")
    for v in cuts:
        print(f"t({v}) = {t_of(bd, v)}")
    shape = is_subdivided_star(bd)
    if shape.kind == "star-cut":
        print(f"shape: star centered at cut vertex {shape.center_cut}")
    elif shape.kind == "star-block":
        print(f"shape: star centered at block {{{', '.join(map(str, shape.center_block))}}}")
    else:
        print(f"shape: {shape.kind}")
    if g.n >= 3:
        cc = check_main_preconditions(g)
        if cc.in_class:
            print("class check: in class")
        else:
            print(f"class check: out of class ({cc.violations[0]})")
    return 0


def _decision_exit(cert) -> int:
    if cert.decision == "hamiltonian":
        return 0
    if cert.decision == "not-hamiltonian":
        return EX_NOT_HAM
    return EX_OUT_OF_CLASS


def _cmd_decide(args) -> int:
    _, g = _read_graph(args.file)
    cert = engine.decide_and_construct(g, mode=args.mode, cap=args.cap,
                                       budget=args.budget)
    sys.stdout.write(certificate_to_json(cert))
    return _decision_exit(cert)


def _cmd_construct(args) -> int:
    _, g = _read_graph(args.file)
    cap = args.cap
    trace: list = []
    if args.theorem == "main":
        cert = engine.decide_and_construct(g, cap=cap)
        sys.stdout.write(certificate_to_json(cert))
        return _decision_exit(cert)
    bd = decompose(g)
    if args.theorem == "thomassen":
        if args.anchors:
            u1, u2 = args.anchors.split(",")
        else:
            order = engine._block_path_order(bd)
            ends = [order[0], order[-1]]
            picks = []
            for blk in ends:
                free = sorted(set(bd.blocks[blk]) - bd.cut_vertices, key=vkey)
                picks.append(free[0])
            u1, u2 = picks[0], picks[-1]
            if u1 == u2:
                u2 = sorted(set(g.vertices) - {u1}, key=vkey)[0]
        cyc = engine.thomassen_path_cycle(g, u1, u2, cap=cap, trace=trace)
    elif args.theorem == "lemma1":
        centers = bd.high_degree_cuts()
        if len(centers) != 1:
            print("error: block graph must have exactly one high-degree cut vertex",
                  file=sys.stderr)
            return EX_USAGE
        cyc = engine.lemma1_cycle(g, centers[0], cap=cap, trace=trace)
    else:  # star-block
        shape = is_subdivided_star(bd)
        if shape.kind == "star-block":
            center = shape.center_block
        elif shape.kind == "path":
            cyclic = [bd.blocks[i] for i in range(len(bd.blocks))
                      if bd.block_info(i).kind == "cyclic"]
            if not cyclic:
                print("error: no cyclic block to use as the center",
                      file=sys.stderr)
                return EX_USAGE
            center = cyclic[0]
        else:
            print("error: block graph is not a star centered at a block",
                  file=sys.stderr)
            return EX_USAGE
        ac = engine.acceptable_cycle(g, center, cap=cap)
        if ac is None:
            print("error: no acceptable cycle exists for the center block",
                  file=sys.stderr)
            return EX_NOT_HAM
        cyc = engine.theorem7_construct(g, ac, cap=cap, trace=trace)
    cert = engine.Certificate("hamiltonian", cycle=cyc,
                              class_check=check_main_preconditions(g),
                              trace=tuple(trace))
    sys.stdout.write(certificate_to_json(cert))
    return 0


def _cmd_verify(args) -> int:
    _, g = _read_graph(args.graph_file)
    if args.cert_file == "-":
        text = sys.stdin.read()
    else:
        with open(args.cert_file) as fh:
            text = fh.read()
    try:
        cert = certificate_from_json(text, g)
    except ValueError as exc:
        raise MalformedInput(f"certificate does not fit the graph: {exc}") from exc
    report = certify.verify_decision(g, cert, cap=args.cap)
    if report.ok:
        print("ok")
        return 0
    for kind, loc, detail in report.violations:
        print(f"violation {kind} at {loc}: {detail}", file=sys.stderr)
    return 1


def _cmd_classify(args) -> int:
    _, g = _read_graph(args.file)
    vt = engine.classify_vertex_type(g, args.vertex, cap=args.cap)
    print(f"vertex {args.vertex}: type {vt.type_index}")
    if vt.witness is not None:
        print("witness cycle: " + " ".join(str(v) for v in vt.witness.order))
        print("provenance:    " + " ".join(vt.witness.provenance))
    return 0


def _cmd_oracle(args) -> int:
    _, g = _read_graph(args.file)
    from .search import find_ham_cycle_constrained

    def edges_of(items):
        out = set()
        for item in items:
            parts = item.split(",")
            if len(parts) != 2:
                raise MalformedInput(f"bad edge {item!r}, expected U,V")
            out.add((parts[0], parts[1]))
        return frozenset(out)

    cc = CycleConstraint(required_edges=edges_of(args.require_edge),
                         forbidden_edges=edges_of(args.forbid_edge))
    cyc = find_ham_cycle_constrained(g, cc, budget=args.budget)
    if cyc is None:
        print("no cycle")
        return EX_NOT_HAM
    print(" ".join(str(v) for v in cyc.order))
    print(" ".join(cyc.provenance))
    return 0


def _cmd_generate(args) -> int:
    name, g = generators.make_family(args.family)
    sys.stdout.write(format_edge_list(name, g))
    return 0


def _cmd_explore(args) -> int:
    from .smallgraphs import biconnected_graphs_of_order
    from itertools import combinations
    from .graph import Graph, relabel
    from .search import find_ham_cycle_constrained

    found = []
    checked = 0
    for n in range(3, args.max_block + 1):
        for block in biconnected_graphs_of_order(n):
            labeled = relabel(block, {v: f"b{v}" for v in block.vertices})
            for k in range(1, min(args.legs, n) + 1):
                for cuts in combinations(labeled.vertices, k):
                    vs = list(labeled.vertices)
                    es = list(labeled.edges)
                    for i, c in enumerate(cuts):
                        vs.append(f"p{i}")
                        es.append((c, f"p{i}"))
                    g = Graph(vs, es)
                    checked += 1
                    try:
                        cyc = find_ham_cycle_constrained(g, None, args.budget)
                    except BudgetExceeded:
                        print(f"budget exceeded on block n={n} cuts={cuts}",
                              file=sys.stderr)
                        continue
                    if cyc is None:
                        found.append((n, cuts))
                        print(f"non-hamiltonian square: block n={n} "
                              f"center degree {k} cuts={','.join(cuts)}")
    print(f"checked {checked} instances up to block size {args.max_block} "
          f"with center degree <= {args.legs}; "
          f"{len(found)} non-hamiltonian squares found")
    return 0


def _cmd_export_dot(args) -> int:
    _, g = _read_graph(args.file)
    cyc = None
    if args.certificate:
        with open(args.certificate) as fh:
            cert = certificate_from_json(fh.read(), g)
        cyc = cert.cycle
    sys.stdout.write(to_dot(g, include_square=args.square, cycle=cyc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
