"""Acceptance checks, one test per criterion.

Each test ends by recording a one-line PASS/FAIL summary; conftest prints the
collected lines at the end of the session.
"""

import random
import subprocess
import sys
import time

import pytest

from zfbrush.brushing import (chained_cycle_strategy, exact_B, exact_b, exact_b_direct, prism_strategy,
                              simulate)
from zfbrush.errors import BudgetExceeded
from zfbrush.families import complete, generate, known_value, parse_family
from zfbrush.forcing import check_chains, exact_Z, extract_chains, forcing_closure, is_zero_forcing_set
from zfbrush.graph import line_graph
from zfbrush.translations import (thm1_brushing_from_line_forcing, thm2_forcing_set_from_line_forcing,
                                  thm3_brushing_from_line_brushing)

from conftest import corpus, record_acceptance

B_LINE_VERTICES = 10
B_ORDER = 16


def fam(s):
    return generate(parse_family(s))


def finish(number, title, failures, detail, started):
    ok = not failures
    shown = "; ".join(failures[:3]) if failures else detail
    record_acceptance(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({shown}, {time.time() - started:.1f}s)")
    assert ok, failures


def test_criterion_1_small_families():
    t = time.time()
    bad = []

    def check(label, got, want):
        if got != want:
            bad.append(f"{label}={got}, want {want}")

    for n in (3, 4, 5):
        check(f"B(K{n})", exact_B(fam(f"complete:{n}"))[0], n * n // 4)
    for n in range(3, 8):
        check(f"Z(K{n})", exact_Z(fam(f"complete:{n}"))[0], n - 1)
    for n in range(2, 7):
        g = fam(f"star:{n}")
        check(f"B(K1,{n})", exact_B(g)[0], (n + 1) // 2)
        check(f"Z(K1,{n})", exact_Z(g)[0], n - 1)
    for n in range(2, 9):
        g = fam(f"path:{n}")
        for name, got in (("Z", exact_Z(g)[0]), ("B", exact_B(g)[0]), ("b", exact_b(g)[0])):
            check(f"{name}(P{n})", got, 1)
    for n in range(3, 9):
        g = fam(f"cycle:{n}")
        for name, got in (("Z", exact_Z(g)[0]), ("B", exact_B(g)[0]), ("b", exact_b(g)[0])):
            check(f"{name}(C{n})", got, 2)
    finish(1, "complete, star, path and cycle values", bad, "all exact", t)


def test_criterion_2_thm1_on_corpus():
    t = time.time()
    bad, compared = [], 0
    for i, g in enumerate(corpus()):
        lgm = line_graph(g)
        zl, z = exact_Z(lgm.line)
        w = thm1_brushing_from_line_forcing(lgm, z)
        res = simulate(g, w.script, "b")
        if not (res.cleaned and res.max_brushes_on_edge == 1 and w.script.total <= zl):
            bad.append(f"graph {i}: thm1 total {w.script.total} vs Z(L)={zl}, {res.reason}")
        try:
            B, b = exact_B(g)[0], exact_b(g, budget=B_ORDER)[0]
        except BudgetExceeded:
            continue
        compared += 1
        if not B <= b <= zl:
            bad.append(f"graph {i}: B={B}, b={b}, Z(L)={zl}")
    finish(2, "thm1 replay and B <= b <= Z(L)", bad, f"{len(corpus())} graphs, exact B and b on {compared}", t)


def test_criterion_3_thm2_on_corpus():
    t = time.time()
    bad = []
    for i, g in enumerate(corpus()):
        lgm = line_graph(g)
        zl, z = exact_Z(lgm.line)
        w = thm2_forcing_set_from_line_forcing(lgm, z)
        if len(w.forcing_set) > zl or not is_zero_forcing_set(g, w.forcing_set):
            bad.append(f"graph {i}: |thm2|={len(w.forcing_set)}, Z(L)={zl}")
        if exact_Z(g)[0] > zl:
            bad.append(f"graph {i}: Z={exact_Z(g)[0]} > Z(L)={zl}")
    finish(3, "thm2 forcing set and Z <= Z(L)", bad, f"{len(corpus())} graphs", t)


def test_criterion_4_thm3_on_corpus():
    t = time.time()
    bad, checked, skipped = [], {"B": 0, "b": 0}, {"B": 0, "b": 0}
    for i, g in enumerate(corpus()):
        if g.m < 2:
            continue
        lgm = line_graph(g)
        for model in ("B", "b"):
            try:
                if model == "B":
                    value, script = exact_B(lgm.line, vertex_budget=B_LINE_VERTICES)
                else:
                    value, script = exact_b(lgm.line, budget=B_ORDER)
            except BudgetExceeded:
                skipped[model] += 1
                continue
            checked[model] += 1
            w = thm3_brushing_from_line_brushing(lgm, script, model)
            res = simulate(g, w.script, model)
            if not (res.cleaned and w.script.total <= value):
                bad.append(f"graph {i} model {model}: total {w.script.total} vs {value}, {w.anomalies}")
    detail = f"checked B:{checked['B']} b:{checked['b']}, over budget B:{skipped['B']} b:{skipped['b']}"
    finish(4, "thm3 translation in both models", bad, detail, t)


def test_criterion_5_prisms():
    t = time.time()
    bad = []
    for r, s in ((2, 3), (3, 4), (4, 4), (3, 5)):
        script = prism_strategy(r, s)
        if script.total != s + 2 or not simulate(fam(f"prism:{r}x{s}"), script, "B").cleaned:
            bad.append(f"prism {r}x{s} strategy")
    z23 = exact_Z(line_graph(fam("prism:2x3")).line)[0]
    z34 = exact_Z(line_graph(fam("prism:3x4")).line)[0]
    if z23 < 1:
        bad.append(f"Z(L(P2xC3))={z23}")
    if z34 < 2:
        bad.append(f"Z(L(P3xC4))={z34}")
    finish(5, "prism strategies and line forcing lower bounds", bad, f"Z(L(P2xC3))={z23}, Z(L(P3xC4))={z34}", t)


def test_criterion_6_chained_cycles():
    t = time.time()
    bad = []
    for k in range(1, 6):
        g = fam(f"chain:{k}x6")
        script = chained_cycle_strategy(k)
        res = simulate(g, script, "b")
        # minimum degree 2 forces at least two brushes, so the strategy is optimal
        if not (script.total == 2 and res.cleaned and res.max_brushes_on_edge == 1 and g.min_degree() >= 2):
            bad.append(f"chain {k}x6 strategy")
    for k in (1, 2):
        zl = exact_Z(line_graph(fam(f"chain:{k}x6")).line)[0]
        if zl != k + 1:
            bad.append(f"Z(L(G_{k},6))={zl}")
    value, witness = exact_B(line_graph(fam("chain:2x6")).line, vertex_budget=12)
    if value != 4 or not simulate(line_graph(fam("chain:2x6")).line, witness, "B").cleaned:
        bad.append(f"B(L(G_2,6))={value}")
    finish(6, "chained cycles", bad, f"b=2 for k=1..5, B(L(G_2,6))={value}", t)


def test_criterion_7_worked_example():
    t = time.time()
    out = subprocess.run([sys.executable, "-m", "zfbrush.cli", "translate", "--thm", "1", "fig-example.json"],
                         capture_output=True, text=True, check=False)
    lines = out.stdout.splitlines()
    bad = []
    if out.returncode != 0:
        bad.append(f"exit {out.returncode}: {out.stderr.strip()}")
    want_chains = ["g -> f -> c", "i -> d", "h -> e -> a", "b", "k", "j"]
    if lines[:6] != want_chains:
        bad.append(f"chains {lines[:6]}")
    steps = [ln for ln in lines if ln.startswith("(")]
    adds = [ln.split(" at ")[1].split()[0] for ln in steps if " add " in ln]
    fires = [ln.split()[-1] for ln in steps if " fire " in ln]
    if len(steps) != 11 or adds != list("7345") or fires != list("7345621"):
        bad.append(f"trace {steps}")
    if "replay verified" not in lines:
        bad.append("replay not verified")
    finish(7, "worked example through the CLI", bad, "chains and 11-step trace match", t)


def test_criterion_8_properties():
    t = time.time()
    rng = random.Random(8)
    bad, direct = [], 0
    for i, g in enumerate(corpus()):
        black = set(rng.sample(range(g.n), rng.randint(0, g.n)))
        final = forcing_closure(g, black).final
        for _ in range(100):
            order = list(range(g.n))
            rng.shuffle(order)
            if forcing_closure(g, black, priority=order).final != final:
                bad.append(f"graph {i}: closure depends on order")
                break
        z = exact_Z(g)[1]
        run = forcing_closure(g, z)
        problems = check_chains(g, run, extract_chains(g, run))
        if problems:
            bad.append(f"graph {i}: {problems[0]}")
        b, sb = exact_b(g, budget=B_ORDER)
        rb = simulate(g, sb, "b")
        if not (rb.cleaned and sb.total == b):
            bad.append(f"graph {i}: b witness")
        if g.n <= 6:
            direct += 1
            if exact_b_direct(g) != b:
                bad.append(f"graph {i}: b={b}, direct={exact_b_direct(g)}")
        if g.n <= 8:
            B, sB = exact_B(g)
            if not (simulate(g, sB, "B").cleaned and sB.total == B):
                bad.append(f"graph {i}: B witness")
    finish(8, "confluence, chains, b against direct search, witness replay", bad,
           f"{len(corpus())} graphs, {direct} direct comparisons", t)


@pytest.mark.parametrize("n", [4, 5])
def test_criterion_9_disputed_complete_line(n):
    t = time.time()
    value = exact_Z(line_graph(fam(f"complete:{n}")).line)[0]
    kv = known_value(complete(n), "Z_of_line")
    verdict = "agrees" if value == kv.value else "disagrees"
    # recorded, not asserted: the tabulated value is known to be disputed
    finish(9, f"Z(L(K{n})) computed {value}, tabulated {kv.value}, {verdict}", [], "recorded only", t)
    assert kv.disputed
