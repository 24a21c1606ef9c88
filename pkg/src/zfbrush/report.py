"""Parameter reports, inequality verdicts and random counterexample hunting."""

from __future__ import annotations

import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import brushing, forcing
from .brushing import exact_B, exact_b, simulate
from .errors import BudgetExceeded, Disconnected, InvalidLineScript, PreconditionSingleEdge
from .forcing import exact_Z, is_zero_forcing_set
from .graph import Graph, connected_components, induced_subgraph, line_graph, make_graph
from .io import graph_to_json, script_to_json
from .translations import (thm1_brushing_from_line_forcing, thm2_forcing_set_from_line_forcing,
                           thm3_brushing_from_line_brushing)

log = logging.getLogger(__name__)

EXACT, UPPER, LOWER, SKIPPED = "exact", "upper_witness", "lower_bound", "skipped_budget"
BUDGET_ENV = "ZFBRUSH_BUDGETS"


@dataclass(frozen=True)
class Budgets:
    z: int = forcing.DEFAULT_Z_BUDGET
    B_vertices: int = brushing.DEFAULT_B_VERTEX_BUDGET
    B_brushes: int = brushing.DEFAULT_B_BRUSH_BUDGET
    b_order: int = 16  # the ordering DP is O(2^n n), so this stays fast

    @classmethod
    def from_env(cls, **overrides):
        """Defaults, then ``ZFBRUSH_BUDGETS="z=20,B=8,Bk=12,b=10"``, then ``overrides``."""
        names = {"z": "z", "B": "B_vertices", "Bk": "B_brushes", "b": "b_order"}
        values = {}
        for item in filter(None, os.environ.get(BUDGET_ENV, "").split(",")):
            key, _, val = item.partition("=")
            if key.strip() not in names:
                raise ValueError(f"unknown budget {key!r} in {BUDGET_ENV}")
            values[names[key.strip()]] = int(val)
        values.update({k: v for k, v in overrides.items() if v is not None})
        for k, v in values.items():
            if v <= 0:
                raise ValueError(f"budget {k} must be positive")
        return cls(**values)


@dataclass
class Entry:
    value: int | None
    kind: str
    witness: object = None

    def upper(self):
        return self.value if self.kind in (EXACT, UPPER) else None

    def lower(self):
        return self.value if self.kind in (EXACT, LOWER) else None


@dataclass
class ParamReport:
    graph: Graph
    isolated: int
    entries: dict[str, Entry]
    verdicts: dict[str, str]
    notes: list[str] = field(default_factory=list)

    @property
    def violations(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v == "FAIL"]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "graph": graph_to_json(self.graph),
            "isolated_vertices": self.isolated,
            "parameters": {k: {"value": e.value, "kind": e.kind} for k, e in self.entries.items()},
            "verdicts": dict(self.verdicts),
            "notes": list(self.notes),
        }

    def table(self) -> str:
        rows = [f"{'parameter':<10} {'value':>6}  kind"]
        for k, e in self.entries.items():
            rows.append(f"{k:<10} {str(e.value):>6}  {e.kind}")
        rows.append("")
        rows.append(f"{'check':<24} verdict")
        for k, v in self.verdicts.items():
            rows.append(f"{k:<24} {v}")
        return "\n".join(rows)


def compare(x: Entry, y: Entry, slack: int = 0) -> str:
    """Verdict for ``x <= y + slack`` using only sound directions of each bound."""
    xu, yl = x.upper(), y.lower()
    if xu is not None and yl is not None and xu <= yl + slack:
        return "PASS"
    xl, yu = x.lower(), y.upper()
    if xl is not None and yu is not None and xl > yu + slack:
        return "FAIL"
    return "UNKNOWN"


def _try(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except BudgetExceeded as exc:
        log.info("budget: %s", exc)
        return None


def _nontrivial_components(g: Graph):
    for comp in connected_components(g):
        sub, labels = induced_subgraph(g, comp)
        if sub.m:
            yield sub, labels


def build_report(g: Graph, budgets: Budgets | None = None, translations: bool = True) -> ParamReport:
    """Compute every parameter that fits the budgets and check the inequalities.

    Over-budget parameters fall back to witnessed upper bounds (from the
    constructions) or are marked skipped; they never get guessed values.
    """
    budgets = budgets or Budgets()
    lgm = line_graph(g)
    L = lgm.line
    k = len(g.isolated_vertices())
    notes = []
    e = {}

    zl = _try(exact_Z, L, budgets.z)
    e["Z_of_line"] = Entry(zl[0], EXACT, zl[1]) if zl else Entry(None, SKIPPED)

    z = _try(exact_Z, g, budgets.z)
    if z:
        e["Z"] = Entry(z[0], EXACT, z[1])
    elif zl:
        s = set(g.isolated_vertices())
        for sub, labels in _nontrivial_components(g):
            sub_l = line_graph(sub)
            w = thm2_forcing_set_from_line_forcing(sub_l, exact_Z(sub_l.line, budgets.z)[1])
            s |= {labels[v] for v in w.forcing_set}
        e["Z"] = Entry(len(s), UPPER, frozenset(s))
    else:
        e["Z"] = Entry(None, SKIPPED)

    b = _try(exact_b, g, budgets.b_order)
    if b:
        e["b"] = Entry(b[0], EXACT, b[1])
    elif zl:
        total = k
        for sub, _ in _nontrivial_components(g):
            sub_l = line_graph(sub)
            total += thm1_brushing_from_line_forcing(sub_l, exact_Z(sub_l.line, budgets.z)[1]).script.total
        e["b"] = Entry(total, UPPER)
    else:
        e["b"] = Entry(None, SKIPPED)

    B = _try(exact_B, g, budgets.B_vertices, budgets.B_brushes)
    if B:
        e["B"] = Entry(B[0], EXACT, B[1])
    elif e["b"].upper() is not None:
        e["B"] = Entry(e["b"].value, UPPER)
    else:
        e["B"] = Entry(None, SKIPPED)

    bl = _try(exact_b, L, budgets.b_order)
    e["b_of_line"] = Entry(bl[0], EXACT, bl[1]) if bl else Entry(None, SKIPPED)
    Bl = _try(exact_B, L, budgets.B_vertices, budgets.B_brushes)
    if Bl:
        e["B_of_line"] = Entry(Bl[0], EXACT, Bl[1])
    elif bl:
        e["B_of_line"] = Entry(bl[0], UPPER)
    else:
        e["B_of_line"] = Entry(None, SKIPPED)

    order = ["Z", "B", "b", "Z_of_line", "B_of_line", "b_of_line"]
    entries = {name: e[name] for name in order}
    v = {
        "B <= b": compare(entries["B"], entries["b"]),
        "b <= Z(L) + k": compare(entries["b"], entries["Z_of_line"], k),
        "Z <= Z(L) + k": compare(entries["Z"], entries["Z_of_line"], k),
        "B <= B(L) + k": compare(entries["B"], entries["B_of_line"], k),
        "b <= b(L) + k": compare(entries["b"], entries["b_of_line"], k),
    }
    v.update(_witness_checks(g, entries))
    if translations:
        v.update(_translation_checks(g, entries, budgets, notes))
    return ParamReport(g, k, entries, v, notes)


def _witness_checks(g, entries):
    out = {}
    if entries["Z"].kind in (EXACT, UPPER) and entries["Z"].witness is not None:
        out["Z witness forces"] = "PASS" if is_zero_forcing_set(g, entries["Z"].witness) else "FAIL"
    for name, model in (("B", "B"), ("b", "b")):
        ent = entries[name]
        if ent.kind == EXACT:
            res = simulate(g, ent.witness, model)
            good = res.cleaned and ent.witness.total == ent.value
            out[f"{name} witness replays"] = "PASS" if good else "FAIL"
    return out


def _translation_checks(g, entries, budgets, notes):
    """Run the three constructions on every component with an edge and replay them."""
    comps = list(_nontrivial_components(g))
    if not comps:
        return {}
    out = {}
    try:
        t1 = t2 = 0
        ok1 = ok2 = True
        zl_total = 0
        for sub, _ in comps:
            sub_l = line_graph(sub)
            zl, zset = exact_Z(sub_l.line, budgets.z)
            zl_total += zl
            w1 = thm1_brushing_from_line_forcing(sub_l, zset)
            res = simulate(sub, w1.script, "b")
            ok1 &= res.cleaned and res.max_brushes_on_edge <= 1 and w1.script.total <= zl
            t1 += w1.script.total
            w2 = thm2_forcing_set_from_line_forcing(sub_l, zset)
            ok2 &= is_zero_forcing_set(sub, w2.forcing_set) and len(w2.forcing_set) <= zl
            t2 += len(w2.forcing_set)
        out["thm1 construction"] = "PASS" if ok1 else "FAIL"
        out["thm2 construction"] = "PASS" if ok2 else "FAIL"
        notes.append(f"thm1 brushes {t1}, thm2 set size {t2}, Z(L) {zl_total}")
    except BudgetExceeded:
        out["thm1 construction"] = out["thm2 construction"] = "UNKNOWN"
    for model, solver in (("B", exact_B), ("b", exact_b)):
        key = f"thm3 construction ({model})"
        total = 0
        ok = True
        try:
            for sub, _ in comps:
                sub_l = line_graph(sub)
                if sub.m == 1:
                    total += 1
                    continue
                if solver is exact_B:
                    value, script = exact_B(sub_l.line, budgets.B_vertices, budgets.B_brushes)
                else:
                    value, script = exact_b(sub_l.line, budgets.b_order)
                w = thm3_brushing_from_line_brushing(sub_l, script, model)
                res = simulate(sub, w.script, model)
                ok &= res.cleaned and w.script.total <= value
                total += w.script.total
            out[key] = "PASS" if ok else "FAIL"
        except BudgetExceeded:
            out[key] = "UNKNOWN"
    return out


# ---------------------------------------------------------------------------
# hunting


@dataclass
class HuntResult:
    examined: int = 0
    skipped: int = 0
    violations: list[dict] = field(default_factory=list)
    max_gap: dict | None = None  # largest Z(L) - B seen
    equality: dict[str, int] = field(default_factory=lambda: {"B = Z(L)": 0, "Z = Z(L)": 0, "B = B(L)": 0})

    def to_json(self) -> dict:
        return asdict(self)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return make_graph(n, edges)


def hunt(n_range=(3, 6), p_range=(0.3, 0.8), samples=100, seed=0, budgets=None,
         connected_only=True, graphs=None, workers=1) -> HuntResult:
    """Check every report verdict on seeded random graphs (or on ``graphs`` if given)."""
    budgets = budgets or Budgets()
    result = HuntResult()
    if graphs is None:
        rng = random.Random(seed)
        graphs = []
        while len(graphs) < samples:
            n = rng.randint(*n_range)
            g = random_graph(rng, n, rng.uniform(*p_range))
            if connected_only and (len(connected_components(g)) != 1 or g.m == 0):
                continue
            graphs.append(g)
    if workers > 1 and len(graphs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            outcomes = list(pool.map(_report_or_error, graphs, [budgets] * len(graphs)))
    else:
        outcomes = [_report_or_error(g, budgets) for g in graphs]
    for g, rep in zip(graphs, outcomes):
        if isinstance(rep, str):
            result.violations.append({"graph": graph_to_json(g), "error": rep})
            continue
        result.examined += 1
        if any(v == "UNKNOWN" for v in rep.verdicts.values()):
            result.skipped += 1
            log.info("budget skips on %s", graph_to_json(g))
        if rep.violations:
            result.violations.append(rep.to_json() | {"witnesses": _witness_json(rep)})
        ent = rep.entries
        zl, B = ent["Z_of_line"].lower(), ent["B"].upper()
        if zl is not None and B is not None:
            gap = zl - B
            if result.max_gap is None or gap > result.max_gap["gap"]:
                result.max_gap = {"gap": gap, "graph": graph_to_json(g)}
        for key, a, c in (("B = Z(L)", "B", "Z_of_line"), ("Z = Z(L)", "Z", "Z_of_line"), ("B = B(L)", "B", "B_of_line")):
            if ent[a].kind == EXACT and ent[c].kind == EXACT and ent[a].value == ent[c].value:
                result.equality[key] += 1
    return result


def _report_or_error(g, budgets):
    try:
        return build_report(g, budgets)
    except (Disconnected, PreconditionSingleEdge, InvalidLineScript) as exc:
        return f"{type(exc).__name__}: {exc}"


def _witness_json(rep: ParamReport) -> dict:
    out = {}
    for name, ent in rep.entries.items():
        w = ent.witness
        if isinstance(w, frozenset):
            out[name] = sorted(w)
        elif w is not None:
            out[name] = script_to_json(w)
    return out
