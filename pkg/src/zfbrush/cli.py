"""Command line front end: ``zfbrush gen|report|translate|hunt|export``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .brushing import exact_B, exact_b, simulate
from .errors import (BudgetExceeded, Disconnected, InvalidFamilyParam, InvalidLineScript, NotZeroForcingSet,
                     ParseError, PreconditionSingleEdge)
from .families import generate, parse_family
from .forcing import exact_Z, forcing_closure, is_zero_forcing_set
from .graph import Graph, line_graph
from .io import (dumps, frames_from_script, graph_to_dot, graph_to_json, load_graph_doc, run_to_dot, run_to_json,
                 script_from_json, script_to_json, trace_to_dot)
from .report import Budgets, build_report, hunt
from .translations import (thm1_brushing_from_line_forcing, thm2_forcing_set_from_line_forcing,
                           thm3_brushing_from_line_brushing)

log = logging.getLogger("zfbrush")

OK, VIOLATION, USAGE = 0, 1, 2


def _emit(text: str, path: str | None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _budgets(args) -> Budgets:
    return Budgets.from_env(z=args.budget_z, B_vertices=args.budget_B, B_brushes=args.budget_brushes,
                            b_order=args.budget_b)


def cmd_gen(args) -> int:
    g = generate(parse_family(args.family))
    _emit(dumps(graph_to_json(g)), args.output)
    return OK


def cmd_export(args) -> int:
    doc = load_graph_doc(args.input)
    if args.dot:
        _emit(graph_to_dot(doc.graph, doc.labels, doc.edge_labels), args.output)
    else:
        _emit(dumps(graph_to_json(doc.graph)), args.output)
    return OK


def cmd_report(args) -> int:
    doc = load_graph_doc(args.input)
    rep = build_report(doc.graph, _budgets(args))
    if not args.quiet:
        print(rep.table())
    if args.json:
        _emit(dumps(rep.to_json()), args.json)
    else:
        print(dumps(rep.to_json()), end="")
    return OK if rep.ok else VIOLATION


def frames_from_trace(g: Graph, trace, title=str) -> list[dict]:
    """Drawable frames for a construction trace, one per add or fire event."""
    brushes = [0] * g.n
    fired, clean = set(), set()
    frames = []
    for i, ev in enumerate(trace, 1):
        new = {}
        if ev.kind == "add":
            brushes[ev.vertex] += ev.count
            new = {ev.vertex: ev.count}
            text = f"({i}) add {ev.count} at {title(ev.vertex)}"
        else:
            for w, c in ev.routing.items():
                brushes[w] += c
                clean.add((min(ev.vertex, w), max(ev.vertex, w)))
            brushes[ev.vertex] -= sum(ev.routing.values())
            fired.add(ev.vertex)
            text = f"({i}) fire {title(ev.vertex)}"
        frames.append({"title": text, "brushes": list(brushes), "new": new, "fired": set(fired),
                       "clean": set(clean)})
    return frames


def _line_set(doc, refs) -> list[int]:
    return [doc.line_vertex(r) for r in refs]


def _parse_refs(text: str):
    out = []
    for item in text.split(","):
        item = item.strip()
        out.append(int(item) if item.isdigit() else item)
    return out


def cmd_translate(args) -> int:
    doc = load_graph_doc(args.input)
    g = doc.graph
    lgm = line_graph(g)
    budgets = _budgets(args)
    elabel = doc.edge_label
    vlabel = doc.vertex_label
    out: dict = {"theorem": args.thm, "graph": graph_to_json(g)}
    ok = True

    if args.thm in (1, 2):
        if args.zfs:
            z = _line_set(doc, _parse_refs(args.zfs))
            forces = chain_order = None
        elif "zero_forcing_set" in doc.extras:
            z = _line_set(doc, doc.extras["zero_forcing_set"])
            forces = [tuple(_line_set(doc, f)) for f in doc.extras.get("force_order", [])] or None
            chain_order = _line_set(doc, doc.extras.get("chain_order", [])) or None
        else:
            z = sorted(exact_Z(lgm.line, budgets.z)[1])
            forces = chain_order = None
        out["line_zero_forcing_set"] = [elabel(v) for v in z]
        if args.thm == 1:
            w = thm1_brushing_from_line_forcing(lgm, z, forces=forces, chain_order=chain_order, lazy=args.lazy)
            model = "B" if args.strict_excess else "b"
            res = simulate(g, w.script, model, strict_excess=args.strict_excess)
            ok = res.cleaned and res.max_brushes_on_edge <= 1 and w.script.total <= len(z)
            chains = [[elabel(v) for v in c] for c in w.chains.chains]
            steps = []
            for i, ev in enumerate(w.trace, 1):
                if ev.kind == "add":
                    via = ", ".join(chains[c][0] for c in ev.chains)
                    steps.append(f"({i}) add {ev.count} brush(es) at {vlabel(ev.vertex)}" + (f" for {via}" if via else ""))
                else:
                    steps.append(f"({i}) fire {vlabel(ev.vertex)}")
            out |= {"chains": chains, "steps": steps, "script": script_to_json(w.script),
                    "total": w.script.total, "replay": {"cleaned": res.cleaned, "reason": res.reason,
                                                        "max_brushes_on_edge": res.max_brushes_on_edge}}
            for c in chains:
                print(" -> ".join(c))
            for s in steps:
                print(s)
            dot = trace_to_dot(g, frames_from_trace(g, w.trace, vlabel), doc.labels)
        else:
            w = thm2_forcing_set_from_line_forcing(lgm, z, forces=forces, chain_order=chain_order)
            ok = is_zero_forcing_set(g, w.forcing_set) and len(w.forcing_set) <= len(z) and not w.anomalies
            run = forcing_closure(g, w.forcing_set)
            out |= {"chains": [[elabel(v) for v in c] for c in w.chains.chains],
                    "forcing_set": [vlabel(v) for v in sorted(w.forcing_set)],
                    "forcing_run": run_to_json(run), "anomalies": w.anomalies}
            print("S =", "{" + ", ".join(out["forcing_set"]) + "}")
            dot = run_to_dot(g, run, doc.labels)
    else:
        if args.line_script:
            try:
                line_script = script_from_json(json.loads(Path(args.line_script).read_text()))
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        elif args.model == "B":
            line_script = exact_B(lgm.line, budgets.B_vertices, budgets.B_brushes)[1]
        else:
            line_script = exact_b(lgm.line, budgets.b_order)[1]
        w = thm3_brushing_from_line_brushing(lgm, line_script, args.model)
        res = simulate(g, w.script, args.model, strict_excess=args.strict_excess)
        ok = res.cleaned and w.script.total <= w.line_total
        out |= {"model": args.model, "line_total": w.line_total, "script": script_to_json(w.script),
                "total": w.script.total, "classification": {elabel(v): list(t) for v, t in sorted(w.classification.items())},
                "anomalies": w.anomalies, "replay": {"cleaned": res.cleaned, "reason": res.reason}}
        print(f"line brushes {w.line_total}, G brushes {w.script.total}")
        dot = trace_to_dot(g, frames_from_script(g, w.script), doc.labels)

    out["verified"] = bool(ok)
    print("replay verified" if ok else "replay FAILED")
    if args.output:
        Path(args.output).write_text(dumps(out))
    if args.dot:
        Path(args.dot).write_text(dot)
    return OK if ok else VIOLATION


def cmd_hunt(args) -> int:
    budgets = _budgets(args)
    graphs = None
    if args.family:
        graphs = [generate(parse_family(f"{args.family}:{n}")) for n in range(args.n[0], args.n[1] + 1)]
    res = hunt(tuple(args.n), tuple(args.p), args.samples, args.seed, budgets, graphs=graphs,
               workers=args.workers)
    text = dumps(res.to_json())
    if args.output:
        Path(args.output).write_text(text)
    print(f"examined {res.examined}, budget-limited {res.skipped}, violations {len(res.violations)}")
    if res.max_gap:
        print(f"max Z(L)-B gap {res.max_gap['gap']}")
    if not args.output:
        print(text, end="")
    return VIOLATION if res.violations else OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zfbrush", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def budget_flags(sp):
        sp.add_argument("--budget-z", type=int, help="max vertices per component for exact Z")
        sp.add_argument("--budget-B", type=int, help="max vertices per component for exact B")
        sp.add_argument("--budget-brushes", type=int, help="max brushes tried by exact B")
        sp.add_argument("--budget-b", type=int, help="max vertices per component for exact b")

    sp = sub.add_parser("gen", help="write a named family as graph JSON")
    sp.add_argument("family", help="e.g. complete:5, prism:3x4, chain:3x6")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("report", help="compute parameters and check the inequalities")
    sp.add_argument("input", help="graph JSON path, family spec or fig-example")
    sp.add_argument("--json", help="write the JSON report here instead of stdout")
    sp.add_argument("-q", "--quiet", action="store_true", help="skip the table")
    budget_flags(sp)
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("translate", help="run a construction and replay its witness")
    sp.add_argument("input")
    sp.add_argument("--thm", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--zfs", help="zero-forcing set of L(G) as edge labels or ids, comma separated")
    sp.add_argument("--line-script", help="brush script JSON for L(G) (theorem 3)")
    sp.add_argument("--model", choices=("B", "b"), default="B")
    sp.add_argument("--lazy", action="store_true", help="add brushes only when a firing is short")
    sp.add_argument("--strict-excess", action="store_true", help="replay with exactly one brush per dirty edge")
    sp.add_argument("-o", "--output", help="witness JSON")
    sp.add_argument("--dot", help="DOT step trace")
    budget_flags(sp)
    sp.set_defaults(func=cmd_translate)

    sp = sub.add_parser("hunt", help="search random graphs for inequality violations")
    sp.add_argument("--n", type=int, nargs=2, default=[3, 6], metavar=("MIN", "MAX"))
    sp.add_argument("--p", type=float, nargs=2, default=[0.3, 0.8], metavar=("MIN", "MAX"))
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--family", help="scan this family over the n range instead of sampling")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("-o", "--output")
    budget_flags(sp)
    sp.set_defaults(func=cmd_hunt)

    sp = sub.add_parser("export", help="write a graph as DOT or JSON")
    sp.add_argument("input")
    fmt = sp.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ParseError, InvalidFamilyParam, PreconditionSingleEdge, Disconnected, NotZeroForcingSet,
            InvalidLineScript, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}; raise the budget flags", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
