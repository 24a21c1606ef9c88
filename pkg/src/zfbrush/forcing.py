"""Zero forcing: colour-change closure, forcing chains and exact Z by subset search."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BudgetExceeded, IncompleteRun, InvalidForce
from .graph import Graph, bits, connected_components, induced_subgraph

DEFAULT_Z_BUDGET = 24


@dataclass(frozen=True)
class ForcingRun:
    initial: frozenset
    forces: tuple[tuple[int, int], ...]
    final: frozenset

    def is_complete(self, g: Graph) -> bool:
        return len(self.final) == g.n


@dataclass(frozen=True)
class ChainDecomposition:
    chains: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> list[int]:
        return [len(c) for c in self.chains]

    def chain_of(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.chains) for v in c}

    def heads(self) -> list[int]:
        return [c[0] for c in self.chains]


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def closure_mask(adj: Sequence[int], black: int) -> int:
    """Black set after applying the colour-change rule until it stalls."""
    changed = True
    while changed:
        changed = False
        for v in bits(black):
            white = adj[v] & ~black
            if white and not white & (white - 1):
                black |= white
                changed = True
    return black


def forcing_closure(g: Graph, black: Iterable[int], priority: Sequence[int] | None = None) -> ForcingRun:
    """Run the colour-change rule to completion, recording each force.

    At every step the forcer is the black vertex with a unique white
    neighbour that comes first in ``priority`` (vertex index by default).
    """
    initial = frozenset(black)
    for v in initial:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    order = list(priority) if priority is not None else list(range(g.n))
    if sorted(order) != list(range(g.n)):
        raise ValueError("priority must be a permutation of the vertices")
    mask = _mask(initial)
    forces = []
    while True:
        for v in order:
            if not mask >> v & 1:
                continue
            white = g.adj[v] & ~mask
            if white and not white & (white - 1):
                w = white.bit_length() - 1
                forces.append((v, w))
                mask |= white
                break
        else:
            break
    return ForcingRun(initial, tuple(forces), frozenset(bits(mask)))


def replay_forces(g: Graph, black: Iterable[int], forces: Sequence[Sequence[int]]) -> ForcingRun:
    """Check a prescribed force sequence step by step and return it as a run."""
    initial = frozenset(black)
    mask = _mask(initial)
    done = []
    for step, (v, w) in enumerate(forces):
        if not mask >> v & 1:
            raise InvalidForce(f"step {step}: forcer {v} is white")
        white = g.adj[v] & ~mask
        if white != 1 << w:
            raise InvalidForce(f"step {step}: {w} is not the unique white neighbour of {v}")
        mask |= white
        done.append((v, w))
    return ForcingRun(initial, tuple(done), frozenset(bits(mask)))


def is_zero_forcing_set(g: Graph, black: Iterable[int]) -> bool:
    return closure_mask(g.adj, _mask(black)) == g.full_mask


def extract_chains(g: Graph, run: ForcingRun, order: Sequence[int] | None = None) -> ChainDecomposition:
    """Split the vertices into forcing chains.

    Chains with at least one force come first, ordered by the time of their
    first force (so chain 0 starts at the run's first forcer); one-vertex
    chains come last, by vertex index.  ``order`` optionally lists chain
    heads whose relative order overrides this within each of the two groups.
    """
    if len(run.final) != g.n:
        raise IncompleteRun(f"run blackens {len(run.final)} of {g.n} vertices")
    nxt = dict(run.forces)
    first_force = {}
    chains = []
    for head in run.initial:
        chain = [head]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.append(tuple(chain))
    step_of = {v: i for i, (v, _) in enumerate(run.forces)}
    for c in chains:
        first_force[c[0]] = step_of.get(c[0], len(run.forces))
    rank = {h: i for i, h in enumerate(order or ())}
    big = len(rank)

    def key(c):
        single = len(c) == 1
        return (single, rank.get(c[0], big), c[0] if single else first_force[c[0]])

    chains.sort(key=key)
    return ChainDecomposition(tuple(chains))


def check_chains(g: Graph, run: ForcingRun, dec: ChainDecomposition) -> list[str]:
    """Problems with ``dec`` as a chain decomposition of ``run`` (empty if none)."""
    problems = []
    seen = [v for c in dec.chains for v in c]
    if sorted(seen) != list(range(g.n)):
        problems.append("chains do not partition the vertex set")
    forced = set(run.forces)
    for c in dec.chains:
        if c[0] not in run.initial:
            problems.append(f"chain head {c[0]} not initially black")
        for a, b in zip(c, c[1:]):
            if (a, b) not in forced:
                problems.append(f"{a} does not force {b}")
        members = set(c)
        for i, v in enumerate(c):
            inside = {u for u in g.neighbours(v) if u in members}
            expect = {c[j] for j in (i - 1, i + 1) if 0 <= j < len(c)}
            if inside != expect:
                problems.append(f"chain {c} is not an induced path at {v}")
                break
    if len(dec.chains) != len(run.initial):
        problems.append("number of chains differs from initial set size")
    return problems


def _min_zfs_connected(g: Graph) -> tuple[int, ...]:
    full = g.full_mask
    adj = g.adj
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            m = 0
            for v in combo:
                m |= 1 << v
            if closure_mask(adj, m) == full:
                return combo
    raise AssertionError("unreachable: the full vertex set forces")


def exact_Z(g: Graph, budget: int = DEFAULT_Z_BUDGET) -> tuple[int, frozenset]:
    """Zero-forcing number and a minimum zero-forcing set.

    Components are solved separately and the answers summed; within a
    component the lexicographically least minimum set is returned.
    ``budget`` caps the size of a component that may be searched.
    """
    witness = []
    for comp in connected_components(g):
        if len(comp) > budget:
            raise BudgetExceeded(f"component of {len(comp)} vertices exceeds Z budget {budget}")
        sub, labels = induced_subgraph(g, comp)
        witness += [labels[v] for v in _min_zfs_connected(sub)]
    return len(witness), frozenset(witness)
