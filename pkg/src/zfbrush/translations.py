"""Witness-producing constructions that turn line-graph certificates into certificates for G.

* ``thm1_brushing_from_line_forcing``: a zero-forcing set of L(G) becomes a
  one-brush-per-edge cleaning of G with no more brushes than the set has
  vertices, so B(G) <= b(G) <= Z(L(G)).
* ``thm2_forcing_set_from_line_forcing``: the same chains give a
  zero-forcing set of G of no larger size, so Z(G) <= Z(L(G)).
* ``thm3_brushing_from_line_brushing``: a cleaning of L(G) becomes a
  cleaning of G with no more brushes, so B(G) <= B(L(G)) and
  b(G) <= b(L(G)).

Each construction only emits a certificate; callers confirm it by replay
(``simulate`` or ``is_zero_forcing_set``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .brushing import BrushScript, FiringStep, annotate, simulate
from .errors import Disconnected, InvalidLineScript, NotZeroForcingSet, PreconditionSingleEdge
from .forcing import ChainDecomposition, ForcingRun, extract_chains, forcing_closure, replay_forces
from .graph import Graph, LineGraphMap, bits, is_connected


@dataclass
class TraceEvent:
    kind: str  # "add" or "fire"
    vertex: int
    count: int = 0
    chains: list[int] = field(default_factory=list)
    routing: dict[int, int] = field(default_factory=dict)


@dataclass
class Thm1Witness:
    script: BrushScript
    chain_usage: dict[int, tuple[int | None, int]]  # chain -> (vertex given its brush, trace step)
    run: ForcingRun
    chains: ChainDecomposition
    trace: list[TraceEvent]
    lazy: bool = False


@dataclass
class Thm2Witness:
    forcing_set: frozenset
    chain_usage: dict[int, int | None]  # chain -> vertex added to S on its behalf
    forces: list[tuple[int, int]]  # forces performed in G during the construction
    run: ForcingRun
    chains: ChainDecomposition
    anomalies: list[str] = field(default_factory=list)
    triangle_repairs: list[tuple[int, int, int]] = field(default_factory=list)  # (a, b, c) where c was added


@dataclass
class Thm3Witness:
    script: BrushScript
    classification: dict[int, tuple[int, int]]  # line vertex -> (type 1 or 2, clean incident count p)
    model: str
    line_total: int
    anomalies: list[str] = field(default_factory=list)

    @property
    def config(self) -> dict[int, int]:
        return self.script.placement


def _check_base(lgm: LineGraphMap):
    g = lgm.base
    if g.m == 0:
        raise Disconnected("graph has no edges")
    if not is_connected(g):
        raise Disconnected("graph is not connected")


def _line_run(lgm, z, forces, priority):
    line = lgm.line
    z = frozenset(z)
    if forces is not None:
        run = replay_forces(line, z, forces)
    else:
        run = forcing_closure(line, z, priority)
    if len(run.final) != line.n:
        raise NotZeroForcingSet(f"{sorted(z)} does not force L(G)")
    return run


class _Brusher:
    """Mutable brushing state for G used while a construction emits its script."""

    def __init__(self, g: Graph):
        self.g = g
        self.brushes = [0] * g.n
        self.dirty = list(g.adj)
        self.fired = 0
        self.placement: dict[int, int] = {}
        self.firings: list[FiringStep] = []

    def is_fired(self, v):
        return bool(self.fired >> v & 1)

    def need(self, v):
        return max(1, self.dirty[v].bit_count())

    def fireable(self, v):
        return not self.is_fired(v) and self.brushes[v] >= self.need(v)

    def place(self, v, count=1):
        self.brushes[v] += count
        self.placement[v] = self.placement.get(v, 0) + count

    def fire(self, v):
        routing = {w: 1 for w in bits(self.dirty[v])}
        for w in routing:
            self.brushes[w] += 1
            self.dirty[w] &= ~(1 << v)
        self.dirty[v] = 0
        self.brushes[v] = 0
        self.fired |= 1 << v
        self.firings.append(FiringStep(v, routing))
        return routing

    def script(self):
        return annotate(self.g, BrushScript(dict(self.placement), list(self.firings)))


def thm1_brushing_from_line_forcing(lgm: LineGraphMap, z: Iterable[int], *, forces=None,
                                    priority: Sequence[int] | None = None,
                                    chain_order: Sequence[int] | None = None,
                                    lazy: bool = False) -> Thm1Witness:
    """Brush G with one brush per forcing chain of a zero-forcing set ``z`` of L(G).

    The forcing process on L(G) is the default lowest-index run unless
    ``forces`` (an explicit force list) or ``priority`` is given.  While
    edge ``x = {d, e}`` forces ``y = {e, f}``, every unused chain whose head
    is adjacent to ``x`` gets a brush at the vertex it shares with ``x``
    (a chain whose own head is ``x`` gets its brush at ``d``); then ``d``
    fires and ``e`` fires if it can.  Leftover one-vertex chains are
    handled afterwards, lowest endpoint first, and any vertex still unfired
    fires last.  With ``lazy`` no brush is added up front; each firing
    instead receives just the brushes it is short of.
    """
    _check_base(lgm)
    g, line = lgm.base, lgm.line
    run = _line_run(lgm, z, forces, priority)
    dec = extract_chains(line, run, chain_order)
    chain_of = dec.chain_of()
    heads = {c[0]: i for i, c in enumerate(dec.chains)}
    used: set[int] = set()
    usage: dict[int, tuple[int | None, int]] = {}
    state = _Brusher(g)
    trace: list[TraceEvent] = []
    pending: dict[int, list[int]] = {}

    def flush(v):
        chains = pending.pop(v, [])
        if chains:
            trace.append(TraceEvent("add", v, len(chains), chains))
            for c in chains:
                usage[c] = (v, len(trace))

    def use(chain, v):
        used.add(chain)
        if lazy or state.is_fired(v):
            usage[chain] = (None, len(trace))
            return
        state.place(v)
        pending.setdefault(v, []).append(chain)

    def fire(v):
        if lazy:
            short = state.need(v) - state.brushes[v]
            if short > 0:
                state.place(v, short)
                trace.append(TraceEvent("add", v, short))
        flush(v)
        routing = state.fire(v)
        trace.append(TraceEvent("fire", v, routing=routing))

    for x, y in run.forces:
        d = lgm.other_end(x, y)
        e = lgm.shared_vertex(x, y)
        if x in heads and heads[x] not in used:
            use(heads[x], d)
        for h in sorted((u for u in line.neighbours(x) if u in heads and heads[u] not in used), key=heads.get):
            use(heads[h], lgm.shared_vertex(x, h))
        if not state.is_fired(d):
            fire(d)
        if not state.is_fired(e) and (lazy or state.fireable(e)):
            fire(e)
        for v in sorted(pending):
            flush(v)

    for i, chain in enumerate(dec.chains):
        if i in used:
            continue
        w = chain[0]
        ends = [v for v in lgm.edge_of_vertex[w] if not state.is_fired(v)]
        if ends:
            use(i, ends[0])
        else:
            used.add(i)
            usage[i] = (None, len(trace))
        for h in sorted((u for u in line.neighbours(w) if u in heads and heads[u] not in used), key=heads.get):
            use(heads[h], lgm.shared_vertex(w, h))
        for v in ends:
            if not state.is_fired(v):
                fire(v)
        for v in sorted(pending):
            flush(v)

    progress = True
    while progress:
        progress = False
        for v in range(g.n):
            if not state.is_fired(v) and (lazy or state.fireable(v)):
                fire(v)
                progress = True
                break
    for v in range(g.n):
        # only reachable if the construction is wrong; the replay will stall here
        if not state.is_fired(v):
            fire(v)
    return Thm1Witness(state.script(), usage, run, dec, trace, lazy)


def thm2_forcing_set_from_line_forcing(lgm: LineGraphMap, z: Iterable[int], *, forces=None,
                                       priority: Sequence[int] | None = None,
                                       chain_order: Sequence[int] | None = None) -> Thm2Witness:
    """Build a zero-forcing set of G with at most one vertex per forcing chain of ``z``.

    Chains of one vertex are processed last.  When ``x = {a, b}`` forces
    ``y = {b, c}``: if ``x`` heads an unused chain, ``a`` joins the set;
    every white vertex of N(a) | N(b) other than a, b, c joins the set and
    the chains of the edges reaching it are marked used; then ``a`` forces
    ``b`` and ``b`` forces ``c`` in G where they are still white.
    """
    _check_base(lgm)
    g, line = lgm.base, lgm.line
    run = _line_run(lgm, z, forces, priority)
    dec = extract_chains(line, run, chain_order)
    chain_of = dec.chain_of()
    heads = {c[0]: i for i, c in enumerate(dec.chains)}
    used: set[int] = set()
    usage: dict[int, int | None] = {}
    black = 0
    chosen = []
    g_forces = []
    anomalies = []
    repairs = []

    def add(v, chains):
        nonlocal black
        if not black >> v & 1:
            black |= 1 << v
            chosen.append(v)
        fresh = [c for c in chains if c not in used]
        if not fresh:
            anomalies.append(f"vertex {v} added without an unused chain")
        for c in fresh:
            used.add(c)
            usage[c] = v

    def force(u, w):
        nonlocal black
        if black >> w & 1:
            return
        if not black >> u & 1 or g.adj[u] & ~black != 1 << w:
            anomalies.append(f"{u} cannot force {w}")
            return
        black |= 1 << w
        g_forces.append((u, w))

    def absorb(a, b, skip):
        for end in (a, b):
            for u in g.neighbours(end):
                if u in skip or black >> u & 1:
                    continue
                chains = [chain_of[line_v] for line_v in (_eid(lgm, a, u), _eid(lgm, b, u)) if line_v is not None]
                add(u, chains)

    for x, y in run.forces:
        a = lgm.other_end(x, y)
        b = lgm.shared_vertex(x, y)
        c = lgm.other_end(y, x)
        if x in heads and heads[x] not in used:
            if black >> a & 1:
                used.add(heads[x])
                usage[heads[x]] = None
            else:
                add(a, [heads[x]])
        absorb(a, b, {a, b, c})
        if black >> a & 1 and not black >> b & 1 and not black >> c & 1 and g.has_edge(a, c):
            # a, b, c form a triangle, so a still sees two white vertices; the
            # edge {a, c} is an initially black line vertex that has not been
            # active yet, and its chain pays for c
            repairs.append((a, b, c))
            add(c, [chain_of[_eid(lgm, a, c)]])
        if black >> b & 1:
            force(b, c)
        force(a, b)
        force(b, c)

    for i, chain in enumerate(dec.chains):
        if i in used:
            continue
        used.add(i)
        usage[i] = None
        a, b = lgm.edge_of_vertex[chain[0]]
        absorb(a, b, {a, b})
        if black >> a & 1:
            force(a, b)
        elif black >> b & 1:
            force(b, a)
        else:
            black |= 1 << a
            chosen.append(a)
            usage[i] = a
            force(a, b)
    if black != g.full_mask:
        anomalies.append("construction left white vertices")
    return Thm2Witness(frozenset(chosen), usage, g_forces, run, dec, anomalies, repairs)


def _eid(lgm, u, v):
    e = (u, v) if u < v else (v, u)
    return lgm.vertex_of_edge.get(e)


def thm3_brushing_from_line_brushing(lgm: LineGraphMap, line_script: BrushScript, model: str = "B", *,
                                     allow_single_edge: bool = False) -> Thm3Witness:
    """Turn a cleaning of L(G) into a cleaning of G with no more brushes.

    The line firing order is walked in turn.  A line vertex ``v = {a, b}``
    with no clean incident edge when it fires (type 1) gets
    ``deg(a) - s - 2`` brushes at its higher-degree end ``a`` and the rest
    of ``deg_L(v) - t`` at ``b`` (``s``, ``t`` the clean edges already at
    ``a`` and ``b``); then ``b`` and ``a`` fire.  For a type-2 vertex the
    endpoint not yet fired receives just the brushes it is short of, which
    the argument bounds by ``deg_L(v) - 2p``.
    """
    _check_base(lgm)
    g, line = lgm.base, lgm.line
    if g.m == 1:
        if not allow_single_edge:
            raise PreconditionSingleEdge("G is a single edge; L(G) is a single vertex")
        u, v = g.edges[0]
        script = annotate(g, BrushScript({u: 1}, [FiringStep(u, {v: 1}), FiringStep(v, {})]))
        return Thm3Witness(script, {0: (1, 0)}, model, line_script.total)
    check = simulate(line, line_script, model)
    if not check.cleaned:
        raise InvalidLineScript(f"line script does not clean L(G) in model {model}: {check.reason}")

    state = _Brusher(g)
    fired_line = 0
    classification = {}
    anomalies = []
    for step in line_script.firings:
        v = step.vertex
        p = (line.adj[v] & fired_line).bit_count()
        fired_line |= 1 << v
        classification[v] = (1 if p == 0 else 2, p)
        ends = [x for x in lgm.edge_of_vertex[v] if not state.is_fired(x)]
        if not ends:
            continue
        if p == 0 and len(ends) == 2:
            a, b = sorted(ends, key=lambda x: (-g.degree(x), x))
            s = g.degree(a) - state.dirty[a].bit_count()
            t = g.degree(b) - state.dirty[b].bit_count()
            at_a = max(g.degree(a) - s - 2, 0)
            at_b = line.degree(v) - at_a - t
            if at_a:
                state.place(a, at_a)
            if at_b > 0:
                state.place(b, at_b)
            for x in (b, a):
                if not state.fireable(x):
                    anomalies.append(f"type-1 endpoint {x} of line vertex {v} cannot fire")
                state.fire(x)
            continue
        if p == 0:
            anomalies.append(f"type-1 line vertex {v} has an endpoint already fired")
        for x in sorted(ends, key=lambda x: (g.degree(x), x)):
            short = state.need(x) - state.brushes[x]
            if p and short > line.degree(v) - 2 * p:
                anomalies.append(f"line vertex {v}: {short} brushes exceed deg_L - 2p")
            if short > 0:
                state.place(x, short)
            state.fire(x)
    for x in range(g.n):
        if not state.is_fired(x):
            anomalies.append(f"vertex {x} of G never handled")
            short = state.need(x) - state.brushes[x]
            if short > 0:
                state.place(x, short)
            state.fire(x)
    return Thm3Witness(state.script(), classification, model, line_script.total, anomalies)
