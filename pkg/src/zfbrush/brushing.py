"""Brushing simulation and exact brushing numbers.

Two models are supported.  In model ``"B"`` a firing vertex sends at least
one brush along every incident dirty edge and may send its surplus along
any of them.  In model ``"b"`` exactly one brush crosses each edge and the
surplus stays behind, unused.  A vertex fires when it holds at least as
many brushes as it has dirty incident edges, and at least one brush (so an
isolated vertex needs its own brush).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import BudgetExceeded, InvalidFamilyParam, MalformedScript
from .families import chain_cycle_labels, chained_cycles, generate, prism
from .graph import Graph, bits, connected_components, induced_subgraph

MODELS = ("B", "b")
DEFAULT_B_VERTEX_BUDGET = 8
DEFAULT_B_BRUSH_BUDGET = 12
DEFAULT_ORDER_BUDGET = 10
DEFAULT_DIRECT_VERTEX_BUDGET = 7
DEFAULT_DIRECT_BRUSH_BUDGET = 10


@dataclass
class FiringStep:
    vertex: int
    routing: dict[int, int]  # neighbour -> brushes sent along the edge to it
    discarded: int | None = None  # None: whatever is left over
    dirty_degree: int | None = None
    clean_incident: int | None = None
    note: str = ""


@dataclass
class BrushScript:
    placement: dict[int, int]
    firings: list[FiringStep] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.placement.values())

    def order(self) -> list[int]:
        return [f.vertex for f in self.firings]


@dataclass
class SimulationResult:
    cleaned: bool
    stall_point: int | None
    max_brushes_on_edge: int
    reason: str = ""
    states: list[tuple[int, ...]] = field(default_factory=list)  # brush counts after each firing
    edge_step: dict[tuple[int, int], int] = field(default_factory=dict)


def _edge(u, v):
    return (u, v) if u < v else (v, u)


def simulate(g: Graph, script: BrushScript, model: str = "B", strict_excess: bool = False) -> SimulationResult:
    """Replay ``script`` on ``g`` and report whether it cleans the graph.

    A firing that breaks the rules stops the replay and is reported through
    ``stall_point``; a routing entry that names a non-incident or already
    clean edge is malformed and raises.
    """
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}")
    one_each = model == "b" or strict_excess
    brushes = [0] * g.n
    for v, c in script.placement.items():
        if not 0 <= v < g.n or c < 0:
            raise MalformedScript(f"bad placement entry {v}: {c}")
        brushes[v] += c
    dirty = [g.adj[v] for v in range(g.n)]
    fired = 0
    max_edge = 0
    states = []
    edge_step = {}

    def stall(i, why):
        return SimulationResult(False, i, max_edge, why, states, edge_step)

    for i, step in enumerate(script.firings):
        v = step.vertex
        if not 0 <= v < g.n:
            raise MalformedScript(f"step {i}: vertex {v} not in graph")
        for w in step.routing:
            if not g.has_edge(v, w):
                raise MalformedScript(f"step {i}: {{{v},{w}}} is not an edge")
            if not dirty[v] >> w & 1:
                raise MalformedScript(f"step {i}: edge {{{v},{w}}} is already clean")
        if fired >> v & 1:
            return stall(i, f"vertex {v} fires twice")
        d = dirty[v].bit_count()
        h = brushes[v]
        if h < d or h < 1:
            return stall(i, f"vertex {v} holds {h} brush(es) but needs {max(d, 1)}")
        if set(step.routing) != set(bits(dirty[v])):
            return stall(i, f"vertex {v} does not send a brush along every dirty edge")
        for w, c in step.routing.items():
            if c < 1 or (one_each and c != 1):
                return stall(i, f"vertex {v} sends {c} brushes to {w}")
        sent = sum(step.routing.values())
        if sent > h:
            return stall(i, f"vertex {v} sends {sent} brushes but holds {h}")
        if step.discarded is not None and sent + step.discarded != h:
            return stall(i, f"vertex {v}: routed {sent} + discarded {step.discarded} != {h}")
        for w, c in step.routing.items():
            brushes[w] += c
            dirty[w] &= ~(1 << v)
            max_edge = max(max_edge, c)
            edge_step[_edge(v, w)] = i
        dirty[v] = 0
        brushes[v] = 0
        fired |= 1 << v
        states.append(tuple(brushes))
    if fired != g.full_mask:
        missing = bits(g.full_mask & ~fired)
        return SimulationResult(False, len(script.firings), max_edge, f"vertices never fire: {missing}", states, edge_step)
    return SimulationResult(True, None, max_edge, "", states, edge_step)


def annotate(g: Graph, script: BrushScript) -> BrushScript:
    """Fill in dirty degree, clean-edge count and discards by replaying the script.

    Assumes the script is valid; the firings are updated in place.
    """
    brushes = [0] * g.n
    for v, c in script.placement.items():
        brushes[v] += c
    dirty = list(g.adj)
    for step in script.firings:
        v = step.vertex
        d = dirty[v].bit_count()
        step.dirty_degree = d
        step.clean_incident = g.degree(v) - d
        step.discarded = brushes[v] - sum(step.routing.values())
        for w, c in step.routing.items():
            brushes[w] += c
            dirty[w] &= ~(1 << v)
        dirty[v] = 0
        brushes[v] = 0
    return script


def script_from_order(g: Graph, order: Sequence[int]) -> BrushScript:
    """One-brush-per-edge script firing ``order``, with each deficit placed up front."""
    pos = {v: i for i, v in enumerate(order)}
    placement = {}
    firings = []
    for v in order:
        earlier = sum(1 for w in g.neighbours(v) if pos[w] < pos[v])
        later = g.degree(v) - earlier
        need = max(later - earlier, 0) if g.adj[v] else 1
        if need:
            placement[v] = need
        routing = {w: 1 for w in g.neighbours(v) if pos[w] > pos[v]}
        firings.append(FiringStep(v, routing))
    return annotate(g, BrushScript(placement, firings))


# ---------------------------------------------------------------------------
# b(G) by vertex orderings


def _order_dp(g: Graph) -> tuple[int, list[int]]:
    """Minimum over orderings of sum(max(0, later - earlier)); lexicographically least optimal order."""
    n = g.n
    full = g.full_mask
    adj = g.adj
    deg = [a.bit_count() for a in adj]
    size = 1 << n
    rest = [0] * size
    for s in range(full - 1, -1, -1):
        best = None
        free = full & ~s
        while free:
            low = free & -free
            v = low.bit_length() - 1
            free ^= low
            c = deg[v] - 2 * (adj[v] & s).bit_count()
            val = (c if c > 0 else 0) + rest[s | low]
            if best is None or val < best:
                best = val
        rest[s] = best
    order = []
    s = 0
    while s != full:
        for v in range(n):
            if s >> v & 1:
                continue
            c = deg[v] - 2 * (adj[v] & s).bit_count()
            if (c if c > 0 else 0) + rest[s | 1 << v] == rest[s]:
                order.append(v)
                s |= 1 << v
                break
    return rest[0], order


def min_total_imbalance(g: Graph) -> int:
    """Minimum over vertex orderings of the sum of |later - earlier| neighbours."""
    value, _ = _order_dp(g)
    return 2 * value


def exact_b(g: Graph, budget: int = DEFAULT_ORDER_BUDGET) -> tuple[int, BrushScript]:
    """Restricted brushing number (one brush per edge) and a witness script.

    Half the minimum total imbalance over orderings, plus one brush for
    every isolated vertex.  ``budget`` caps component size.
    """
    order = []
    for comp in connected_components(g):
        if len(comp) > budget:
            raise BudgetExceeded(f"component of {len(comp)} vertices exceeds ordering budget {budget}")
        sub, labels = induced_subgraph(g, comp)
        _, sub_order = _order_dp(sub)
        order += [labels[v] for v in sub_order]
    script = script_from_order(g, order)
    return script.total, script


# ---------------------------------------------------------------------------
# direct searches over placements and firing sequences


def compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``, in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def positive_compositions(total: int, parts: int):
    """All tuples of ``parts`` positive ints summing to ``total``."""
    for cuts in combinations(range(1, total), parts - 1):
        edges = (0,) + cuts + (total,)
        yield tuple(edges[i + 1] - edges[i] for i in range(parts))


def _startable(g: Graph, placement) -> bool:
    return any(c >= max(1, g.degree(v)) for v, c in enumerate(placement))


def _direct_one_each(g: Graph, placement) -> list[int] | None:
    """Firing order cleaning ``g`` from ``placement`` with one brush per edge, if any."""
    full = g.full_mask
    failed = set()

    def dfs(fired, brushes):
        if fired == full:
            return []
        key = (fired, brushes)
        if key in failed:
            return None
        for v in range(g.n):
            if fired >> v & 1:
                continue
            dirty = g.adj[v] & ~fired
            if brushes[v] < max(1, dirty.bit_count()):
                continue
            nb = list(brushes)
            nb[v] = 0
            for w in bits(dirty):
                nb[w] += 1
            tail = dfs(fired | 1 << v, tuple(nb))
            if tail is not None:
                return [v] + tail
        failed.add(key)
        return None

    return dfs(0, tuple(placement))


def exact_b_direct(g: Graph, vertex_budget: int = DEFAULT_DIRECT_VERTEX_BUDGET,
                   brush_budget: int = DEFAULT_DIRECT_BRUSH_BUDGET) -> int:
    """Restricted brushing number by brute force over placements and firing orders."""
    if g.n > vertex_budget:
        raise BudgetExceeded(f"{g.n} vertices exceeds direct-search budget {vertex_budget}")
    for k in range(brush_budget + 1):
        for placement in compositions(k, g.n):
            if g.n and not _startable(g, placement):
                continue
            if _direct_one_each(g, placement) is not None:
                return k
    raise BudgetExceeded(f"no cleaning placement with at most {brush_budget} brushes")


class _BSearch:
    """Memoised search for a cleaning in model B on one connected graph."""

    def __init__(self, g: Graph, strict_excess: bool):
        self.g = g
        self.strict = strict_excess
        self.memo: dict = {}

    def moves(self, fired, brushes):
        g = self.g
        for v in range(g.n):
            if fired >> v & 1:
                continue
            dirty = g.adj[v] & ~fired
            d = dirty.bit_count()
            h = brushes[v]
            if d == 0 or h < d:
                continue
            targets = bits(dirty)
            shares = [(1,) * d] if self.strict else positive_compositions(h, d)
            for share in shares:
                yield v, dict(zip(targets, share))

    def solve(self, fired, brushes):
        """Remaining firing steps from this state, or None if it cannot clean."""
        key = (fired, brushes)
        if key in self.memo:
            return self.memo[key]
        g = self.g
        # clean once every edge has a fired endpoint
        done = all(not (g.adj[v] & ~fired) for v in range(g.n) if not fired >> v & 1)
        result = None
        if done:
            result = []
        else:
            for v, routing in self.moves(fired, brushes):
                nb = list(brushes)
                nb[v] = 0
                for w, c in routing.items():
                    nb[w] += c
                tail = self.solve(fired | 1 << v, tuple(nb))
                if tail is not None:
                    result = [(v, routing)] + tail
                    break
        self.memo[key] = result
        return result

    def level(self, k):
        """A (placement, steps) pair cleaning with ``k`` brushes, or None."""
        g = self.g
        if k < max(1, g.min_degree()):
            return None
        for placement in compositions(k, g.n):
            if not _startable(g, placement):
                continue
            steps = self.solve(0, placement)
            if steps is not None:
                return placement, steps
        return None


def _steps_to_script(g: Graph, placement, steps) -> BrushScript:
    fired = [v for v, _ in steps]
    firings = [FiringStep(v, dict(r)) for v, r in steps]
    # vertices whose edges were all cleaned by neighbours fire last, holding their brushes
    for v in range(g.n):
        if v not in fired:
            firings.append(FiringStep(v, {}))
    return annotate(g, BrushScript({v: c for v, c in enumerate(placement) if c}, firings))


def exact_B(g: Graph, vertex_budget: int = DEFAULT_B_VERTEX_BUDGET,
            brush_budget: int = DEFAULT_B_BRUSH_BUDGET, strict_excess: bool = False) -> tuple[int, BrushScript]:
    """Brushing number (several brushes may cross an edge) and a witness script.

    Per connected component: the one-brush-per-edge optimum gives an upper
    bound ``u``; because adding a brush never hurts, the answer is the
    smallest ``k`` whose level succeeds, found by testing ``u-1, u-2, ...``
    until a level fails.  Each level enumerates every placement of ``k``
    brushes and searches firing orders with every split of the firing
    vertex's brushes over its dirty edges.
    """
    placement = {}
    firings = []
    for comp in connected_components(g):
        sub, labels = induced_subgraph(g, comp)
        if sub.m == 0:
            placement[labels[0]] = 1
            firings.append(FiringStep(labels[0], {}))
            continue
        if sub.n > vertex_budget:
            raise BudgetExceeded(f"component of {sub.n} vertices exceeds B budget {vertex_budget}")
        upper, upper_script = exact_b(sub, budget=max(sub.n, DEFAULT_ORDER_BUDGET))
        best = upper_script
        search = _BSearch(sub, strict_excess)
        k = upper - 1
        while k >= 1:
            if k > brush_budget:
                raise BudgetExceeded(f"level {k} exceeds brush budget {brush_budget}")
            found = search.level(k)
            if found is None:
                break
            best = _steps_to_script(sub, *found)
            k -= 1
        for v, c in best.placement.items():
            placement[labels[v]] = placement.get(labels[v], 0) + c
        for f in best.firings:
            firings.append(FiringStep(labels[f.vertex], {labels[w]: c for w, c in f.routing.items()}))
    script = annotate(g, BrushScript(placement, firings))
    return script.total, script


# ---------------------------------------------------------------------------
# scripted strategies


def _fire_all(g: Graph, placement: dict, order: Sequence[int], surplus_to) -> BrushScript:
    """Fire ``order``: one brush per dirty edge, surplus to ``surplus_to(v, dirty)``."""
    brushes = [0] * g.n
    for v, c in placement.items():
        brushes[v] += c
    dirty = list(g.adj)
    firings = []
    for v in order:
        targets = bits(dirty[v])
        routing = {w: 1 for w in targets}
        extra = brushes[v] - len(targets)
        if targets and extra > 0:
            w = surplus_to(v, targets)
            if w is not None:
                routing[w] += extra
        for w, c in routing.items():
            brushes[w] += c
            dirty[w] &= ~(1 << v)
        dirty[v] = 0
        brushes[v] = 0
        firings.append(FiringStep(v, routing))
    return annotate(g, BrushScript(dict(placement), firings))


def prism_strategy(r: int, s: int) -> BrushScript:
    """Clean P_r x C_s with s+2 brushes.

    Vertex ``i*s + j`` is position ``j`` on ring ``i``; ring 0 is the outer
    cycle and clockwise means increasing ``j``.  All brushes start on
    vertex 0.  Rings fire outermost first, each clockwise starting where
    the previous ring handed over; a firing vertex sends one brush along
    each dirty edge and the whole surplus to its clockwise ring neighbour,
    or inward down the spoke once that neighbour is clean.
    """
    if r < 1 or s < 3:
        raise InvalidFamilyParam(f"prism needs r >= 1 and s >= 3, got {r}, {s}")
    g = generate(prism(r, s))
    order = []
    start = 0
    for i in range(r):
        ring = [i * s + (start + t) % s for t in range(s)]
        order += ring
        start = (start + s - 1) % s

    def surplus_to(v, targets):
        i, j = divmod(v, s)
        for w in (i * s + (j + 1) % s, (i + 1) * s + j):
            if w in targets:
                return w
        return targets[0]

    return _fire_all(g, {0: s + 2}, order, surplus_to)


def chained_cycle_strategy(k: int, l: int = 6) -> BrushScript:
    """Clean the chain of ``k`` ``l``-cycles with two brushes (one per edge).

    Both brushes start at label 1 of the first cycle and travel the two
    arcs of every cycle, meeting at the shared vertex where they continue.
    """
    if k < 1:
        raise InvalidFamilyParam(f"chain needs k >= 1, got {k}")
    g = generate(chained_cycles(k, l))
    labels = chain_cycle_labels(k, l)
    half = l // 2
    order = []
    for cyc in labels:
        order.append(cyc[0])
        order += cyc[1:half]
        order += cyc[half + 1:][::-1]
    order.append(labels[-1][half])
    return _fire_all(g, {labels[0][0]: 2}, order, lambda v, t: None)
