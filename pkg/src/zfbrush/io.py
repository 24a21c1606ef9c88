"""JSON and DOT formats for graphs, forcing runs, brush scripts and step traces."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .brushing import BrushScript, FiringStep
from .errors import GraphError, ParseError
from .families import generate, parse_family
from .forcing import ForcingRun
from .graph import Graph, make_graph


@dataclass
class GraphDoc:
    """A graph plus optional display labels and translation hints from its JSON file."""

    graph: Graph
    labels: list[str] | None = None
    edge_labels: dict[tuple[int, int], str] | None = None
    extras: dict = field(default_factory=dict)

    def vertex_label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def edge_label(self, edge_id: int) -> str:
        e = self.graph.edges[edge_id]
        if self.edge_labels and e in self.edge_labels:
            return self.edge_labels[e]
        return f"{self.vertex_label(e[0])}-{self.vertex_label(e[1])}"

    def line_vertex(self, ref) -> int:
        """Line-graph vertex named by an edge label, a ``[u, v]`` pair or an edge id."""
        g = self.graph
        if isinstance(ref, str):
            for e, name in (self.edge_labels or {}).items():
                if name == ref:
                    return g.edge_id(*e)
            raise ParseError(f"unknown edge label {ref!r}")
        if isinstance(ref, int):
            if not 0 <= ref < g.m:
                raise ParseError(f"edge id {ref} out of range")
            return ref
        try:
            u, v = ref
            return g.edge_id(int(u), int(v))
        except (TypeError, ValueError, KeyError):
            raise ParseError(f"not an edge reference: {ref!r}") from None


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_graph_doc(doc) -> GraphDoc:
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ParseError('graph JSON needs "n" and "edges"')
    try:
        n = int(doc["n"])
        pairs = [(int(u), int(v)) for u, v in doc["edges"]]
        g = make_graph(n, pairs)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph JSON: {exc}") from exc
    labels = doc.get("labels")
    if labels is not None and len(labels) != n:
        raise ParseError("labels must name every vertex")
    edge_labels = None
    if "edge_labels" in doc:
        names = doc["edge_labels"]
        if len(names) != len(pairs):
            raise ParseError("edge_labels must name every edge")
        edge_labels = {(min(u, v), max(u, v)): str(x) for (u, v), x in zip(pairs, names)}
    extras = {k: v for k, v in doc.items() if k not in ("n", "edges", "labels", "edge_labels")}
    return GraphDoc(g, [str(x) for x in labels] if labels else None, edge_labels, extras)


def load_graph_doc(source: str) -> GraphDoc:
    """Read a graph from a JSON file path, a family spec such as ``prism:3x4``, or ``fig-example``."""
    if source in ("fig-example", "fig-example.json") and not Path(source).exists():
        text = resources.files("zfbrush").joinpath("data/fig-example.json").read_text()
        return parse_graph_doc(json.loads(text))
    path = Path(source)
    if path.exists():
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{source}: {exc}") from exc
        return parse_graph_doc(doc)
    return GraphDoc(generate(parse_family(source)))


def fig_example() -> GraphDoc:
    return load_graph_doc("fig-example")


def run_to_json(run: ForcingRun) -> dict:
    return {
        "initial": sorted(run.initial),
        "forces": [list(f) for f in run.forces],
        "final": sorted(run.final),
    }


def script_to_json(script: BrushScript) -> dict:
    firings = []
    for f in script.firings:
        item = {"vertex": f.vertex, "routing": [[w, c] for w, c in sorted(f.routing.items())]}
        if f.discarded is not None:
            item["discarded"] = f.discarded
        if f.dirty_degree is not None:
            item["dirty_degree"] = f.dirty_degree
            item["clean_incident"] = f.clean_incident
        if f.note:
            item["note"] = f.note
        firings.append(item)
    return {
        "placement": {str(v): c for v, c in sorted(script.placement.items())},
        "total": script.total,
        "firings": firings,
    }


def script_from_json(doc) -> BrushScript:
    try:
        placement = {int(v): int(c) for v, c in doc["placement"].items()}
        firings = []
        for item in doc["firings"]:
            routing = {int(w): int(c) for w, c in item.get("routing", [])}
            firings.append(FiringStep(int(item["vertex"]), routing, item.get("discarded")))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed brush script: {exc}") from exc
    return BrushScript(placement, firings)


def _q(text) -> str:
    return '"' + str(text).replace('"', r"\"") + '"'


def graph_to_dot(g: Graph, labels=None, edge_labels=None, name="G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        label = labels[v] if labels else str(v)
        lines.append(f"  {v} [label={_q(label)}];")
    for i, (u, v) in enumerate(g.edges):
        extra = ""
        if edge_labels and (u, v) in edge_labels:
            extra = f" [label={_q(edge_labels[(u, v)])}]"
        lines.append(f"  {u} -- {v}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_to_dot(g: Graph, run: ForcingRun, labels=None, name="forcing") -> str:
    """Initially black vertices filled black, force arcs numbered by step."""
    lines = [f"digraph {name} {{", "  edge [dir=none, color=gray];"]
    for v in range(g.n):
        label = labels[v] if labels else str(v)
        style = "style=filled, fillcolor=black, fontcolor=white" if v in run.initial else "style=solid"
        lines.append(f"  {v} [label={_q(label)}, {style}];")
    arcs = {(min(v, w), max(v, w)): (v, w, i + 1) for i, (v, w) in enumerate(run.forces)}
    for u, v in g.edges:
        if (u, v) in arcs:
            a, b, step = arcs[(u, v)]
            lines.append(f"  {a} -> {b} [dir=forward, color=black, penwidth=2, label={_q(step)}];")
        else:
            lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def trace_to_dot(g: Graph, frames, labels=None, name="trace") -> str:
    """Step-by-step drawing of a brushing.

    ``frames`` is a list of dicts with keys ``title``, ``brushes`` (count per
    vertex), ``new`` (newly added brushes per vertex), ``fired`` (set) and
    ``clean`` (set of edge pairs).  Clean edges are dashed, fired vertices
    hollow, and brushes drawn as ``*`` with new ones as ``(*)``.
    """
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for k, fr in enumerate(frames):
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f"    label={_q(fr['title'])};")
        for v in range(g.n):
            base = labels[v] if labels else str(v)
            old = fr["brushes"][v] - fr["new"].get(v, 0)
            marks = "*" * old + "(*)" * fr["new"].get(v, 0)
            text = f"{base} {marks}".strip()
            if v in fr["fired"]:
                style = "style=solid, color=black"
            else:
                style = "style=filled, fillcolor=black, fontcolor=white"
            lines.append(f"    s{k}_{v} [label={_q(text)}, {style}];")
        for u, v in g.edges:
            dash = " [style=dashed]" if (u, v) in fr["clean"] else ""
            lines.append(f"    s{k}_{u} -- s{k}_{v}{dash};")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def frames_from_script(g: Graph, script: BrushScript) -> list[dict]:
    """One frame for the initial configuration and one after each firing."""
    brushes = [0] * g.n
    for v, c in script.placement.items():
        brushes[v] += c
    fired, clean = set(), set()
    frames = [{"title": "initial", "brushes": list(brushes), "new": dict(script.placement),
               "fired": set(), "clean": set()}]
    for i, step in enumerate(script.firings):
        v = step.vertex
        for w, c in step.routing.items():
            brushes[w] += c
            clean.add((min(v, w), max(v, w)))
        # surplus stays on the fired vertex, as in the step drawings
        brushes[v] -= sum(step.routing.values())
        fired.add(v)
        frames.append({"title": f"({i + 1}) fire {v}", "brushes": list(brushes), "new": {},
                       "fired": set(fired), "clean": set(clean)})
    return frames
