"""Simple undirected graphs on dense vertex indices, line graphs and products.

Vertices are ``0..n-1``.  Edges are stored as sorted pairs in lexicographic
order; the position of an edge in ``Graph.edges`` is its edge id and also
its vertex index in the line graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DuplicateEdge, LoopEdge, VertexOutOfRange

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    adj: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _edge_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "_edge_index", {e: i for i, e in enumerate(self.edges)})

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbours(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_index[(u, v) if u < v else (v, u)]

    def incident_edges(self, v: int) -> list[int]:
        return [self.edge_id(v, w) for w in self.neighbours(v)]

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def __str__(self):
        return f"Graph(n={self.n}, m={self.m})"


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def make_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edge_list`` and build a simple graph on ``n`` vertices."""
    if n < 0:
        raise VertexOutOfRange(f"negative vertex count {n}")
    seen = set()
    for pair in edge_list:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DuplicateEdge(f"edge {e} listed twice")
        seen.add(e)
    return Graph(n, tuple(sorted(seen)))


def empty_graph(n: int = 0) -> Graph:
    return Graph(n, ())


@dataclass(frozen=True)
class LineGraphMap:
    base: Graph
    line: Graph
    edge_of_vertex: tuple[Edge, ...]

    @property
    def vertex_of_edge(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edge_of_vertex)}

    def shared_vertex(self, x: int, y: int) -> int:
        """The vertex of the base graph common to line vertices ``x`` and ``y``."""
        common = set(self.edge_of_vertex[x]) & set(self.edge_of_vertex[y])
        if len(common) != 1:
            raise ValueError(f"line vertices {x} and {y} are not adjacent")
        return common.pop()

    def other_end(self, x: int, y: int) -> int:
        """Endpoint of edge ``x`` that is not on edge ``y``."""
        a, b = self.edge_of_vertex[x]
        return b if a in self.edge_of_vertex[y] else a


def line_graph(g: Graph) -> LineGraphMap:
    """Line graph whose vertex ``i`` is edge ``g.edges[i]``."""
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    pairs = set()
    for ids in incident:
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                pairs.add((ids[x], ids[y]))
    line = Graph(g.m, tuple(sorted(pairs)))
    return LineGraphMap(g, line, g.edges)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex ``(i, j)`` is flattened to ``i * h.n + j``."""
    edges = []
    for i in range(g.n):
        for a, b in h.edges:
            edges.append((i * h.n + a, i * h.n + b))
    for a, b in g.edges:
        for j in range(h.n):
            edges.append((a * h.n + j, b * h.n + j))
    return Graph(g.n * h.n, tuple(sorted(edges)))


def add_isolated(g: Graph, k: int) -> Graph:
    if k < 0:
        raise ValueError("k must be non-negative")
    return Graph(g.n + k, g.edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = [(u + g.n, v + g.n) for u, v in h.edges]
    return Graph(g.n + h.n, tuple(sorted(g.edges + tuple(shifted))))


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by their smallest vertex."""
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(bits(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices`` relabelled 0..k-1; also returns the old labels."""
    order = sorted(vertices)
    pos = {v: i for i, v in enumerate(order)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return Graph(len(order), tuple(sorted(edges))), order


def cut_vertices(g: Graph) -> list[int]:
    base = len(connected_components(g))
    out = []
    for v in range(g.n):
        rest = [u for u in range(g.n) if u != v]
        sub, _ = induced_subgraph(g, rest)
        if len(connected_components(sub)) > base - (1 if not g.adj[v] else 0):
            out.append(v)
    return out


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return make_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
