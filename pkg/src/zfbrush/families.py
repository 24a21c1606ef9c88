"""Named graph families and the parameter values stated for them in the literature."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, comb

from .errors import InvalidFamilyParam, NoKnownValue, ParseError
from .graph import Graph, cartesian_product, make_graph

KINDS = ("complete", "path", "cycle", "star", "complete_bipartite", "prism", "chained_cycles")
PARAMETERS = ("Z", "B", "b", "Z_of_line", "B_of_line", "b_of_line")

# grammar aliases accepted by ``parse_family``
_ALIASES = {
    "complete": "complete", "k": "complete",
    "path": "path", "p": "path",
    "cycle": "cycle", "c": "cycle",
    "star": "star",
    "bipartite": "complete_bipartite", "complete_bipartite": "complete_bipartite",
    "prism": "prism",
    "chain": "chained_cycles", "chained_cycles": "chained_cycles",
}


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        validate(self)

    def __str__(self):
        short = {"complete_bipartite": "bipartite", "chained_cycles": "chain"}.get(self.kind, self.kind)
        return f"{short}:{'x'.join(map(str, self.params))}"


def complete(n):
    return FamilySpec("complete", (n,))


def path(n):
    return FamilySpec("path", (n,))


def cycle(n):
    return FamilySpec("cycle", (n,))


def star(n):
    return FamilySpec("star", (n,))


def complete_bipartite(m, n):
    return FamilySpec("complete_bipartite", (m, n))


def prism(r, s):
    return FamilySpec("prism", (r, s))


def chained_cycles(k, l=6):
    return FamilySpec("chained_cycles", (k, l))


def validate(spec: FamilySpec) -> None:
    p = spec.params
    arity = {"complete_bipartite": 2, "prism": 2, "chained_cycles": 2}.get(spec.kind, 1)
    if spec.kind not in KINDS:
        raise InvalidFamilyParam(f"unknown family {spec.kind!r}")
    if len(p) != arity or any(not isinstance(x, int) for x in p):
        raise InvalidFamilyParam(f"{spec.kind} takes {arity} integer parameter(s), got {p}")
    ok = {
        "complete": lambda: p[0] >= 0,
        "path": lambda: p[0] >= 1,
        "cycle": lambda: p[0] >= 3,
        "star": lambda: p[0] >= 0,
        "complete_bipartite": lambda: p[0] >= 0 and p[1] >= 0,
        "prism": lambda: p[0] >= 1 and p[1] >= 3,
        "chained_cycles": lambda: p[0] >= 1 and p[1] >= 3,
    }[spec.kind]()
    if not ok:
        raise InvalidFamilyParam(f"parameters {p} out of range for {spec.kind}")


def parse_family(text: str) -> FamilySpec:
    """Parse ``complete:5``, ``prism:3x4``, ``chain:3x6`` (``chain:3`` means l=6)."""
    kind, sep, rest = text.strip().partition(":")
    if not sep or kind.lower() not in _ALIASES:
        raise ParseError(f"not a family spec: {text!r}")
    kind = _ALIASES[kind.lower()]
    try:
        params = tuple(int(x) for x in rest.lower().split("x"))
    except ValueError:
        raise ParseError(f"bad parameters in {text!r}") from None
    if kind == "chained_cycles" and len(params) == 1:
        params = (params[0], 6)
    try:
        return FamilySpec(kind, params)
    except InvalidFamilyParam as exc:
        raise ParseError(str(exc)) from exc


def _path_edges(n, offset=0):
    return [(offset + i, offset + i + 1) for i in range(n - 1)]


def generate(spec: FamilySpec) -> Graph:
    kind, p = spec.kind, spec.params
    if kind == "complete":
        n = p[0]
        return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "path":
        return make_graph(p[0], _path_edges(p[0]))
    if kind == "cycle":
        n = p[0]
        return make_graph(n, _path_edges(n) + [(0, n - 1)])
    if kind == "star":
        # centre is vertex 0
        return make_graph(p[0] + 1, [(0, i) for i in range(1, p[0] + 1)])
    if kind == "complete_bipartite":
        m, n = p
        return make_graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])
    if kind == "prism":
        r, s = p
        return cartesian_product(generate(path(r)), generate(cycle(s)))
    if kind == "chained_cycles":
        return _chained(*p)
    raise InvalidFamilyParam(kind)


def chain_cycle_labels(k: int, l: int = 6) -> list[list[int]]:
    """``labels[i][j]`` is the vertex index of label ``j+1`` on cycle ``i``.

    Label ``l//2 + 1`` of cycle ``i`` is the same vertex as label 1 of
    cycle ``i+1`` (label 4 for hexagons).
    """
    opposite = l // 2
    labels = []
    nxt = 0
    for i in range(k):
        cyc = []
        for j in range(l):
            if i > 0 and j == 0:
                cyc.append(labels[i - 1][opposite])
            else:
                cyc.append(nxt)
                nxt += 1
        labels.append(cyc)
    return labels


def _chained(k, l):
    labels = chain_cycle_labels(k, l)
    n = k * l - (k - 1)
    edges = []
    for cyc in labels:
        edges += [(cyc[j], cyc[(j + 1) % l]) for j in range(l)]
    return make_graph(n, edges)


def prism_layer_of_line_vertex(r: int, s: int) -> list[int]:
    """Layer index (0 = outermost) of each vertex of L(P_r x C_s).

    Layer ``i < r-2`` holds the cycle edges of ring ``i`` and the spokes
    from ring ``i`` to ring ``i+1`` (2s vertices); the innermost layer
    ``r-2`` also holds the innermost ring (3s vertices).
    """
    g = generate(prism(r, s))
    layers = []
    for u, v in g.edges:
        ru, rv = u // s, v // s
        if ru == rv:
            layers.append(min(ru, r - 2))
        else:
            layers.append(min(ru, rv))
    return layers


@dataclass(frozen=True)
class KnownValue:
    family: FamilySpec
    parameter: str
    value: int
    relation: str  # "eq", "le" (true value <= value) or "ge"
    source: str
    disputed: bool = False

    def holds(self, actual: int) -> bool:
        return {"eq": actual == self.value, "le": actual <= self.value, "ge": actual >= self.value}[self.relation]


def known_value(spec: FamilySpec, parameter: str) -> KnownValue:
    if parameter not in PARAMETERS:
        raise ValueError(f"unknown parameter {parameter!r}")
    found = _lookup(spec, parameter)
    if found is None:
        raise NoKnownValue(f"no stated value for {parameter} of {spec}")
    value, relation, source, *rest = found
    return KnownValue(spec, parameter, value, relation, source, bool(rest and rest[0]))


def _lookup(spec, parameter):
    kind, p = spec.kind, spec.params
    if kind == "complete" and p[0] >= 3:
        n = p[0]
        return {
            "B": (n * n // 4, "eq", "B(K_n) = floor(n^2/4)"),
            "Z": (n - 1, "eq", "Z(K_n) = n-1"),
            # stated as Z(J(n,2)); kept for adjudication only
            "Z_of_line": (comb(n, 2), "eq", "Z(L(K_n)) = Z(J(n,2)) = C(n,2)", True),
        }.get(parameter)
    if kind == "star" and p[0] >= 2:
        n = p[0]
        table = {
            "B": (ceil(n / 2), "eq", "B(K_1,n) = ceil(n/2)"),
            "Z": (n - 1, "eq", "Z(K_1,n) = n-1"),
        }
        if n >= 4:
            table["Z_of_line"] = (n - 1, "eq", "Z(L(K_1,n)) = Z(K_n) = n-1")
        return table.get(parameter)
    if kind == "path" and p[0] >= 2:
        return {
            "B": (1, "eq", "B(P_n) = 1"),
            "Z": (1, "eq", "Z(P_n) = 1"),
            "b": (1, "eq", "B <= b <= Z(L) tight on paths"),
        }.get(parameter)
    if kind == "cycle":
        return {
            "B": (2, "eq", "B(C_n) = 2"),
            "Z": (2, "eq", "Z(C_n) = 2"),
            "b": (2, "eq", "B <= b <= Z(L) tight on cycles"),
            "Z_of_line": (2, "eq", "Z(L(C_n)) = Z(C_n) = 2"),
            "B_of_line": (2, "eq", "B(L(C_n)) = B(C_n) = 2"),
        }.get(parameter)
    if kind == "prism":
        r, s = p
        return {
            "B": (s + 2, "le", "B(P_r x C_s) <= s+2"),
            "Z_of_line": (r - 1, "ge", "Z(L(P_r x C_s)) >= r-1"),
        }.get(parameter)
    if kind == "chained_cycles" and p[1] == 6:
        k = p[0]
        table = {
            "b": (2, "eq", "b(G_k,6) = 2"),
            "Z_of_line": (k + 1, "eq", "Z(L(G_k,6)) = k+1"),
            "Z": (k + 1, "eq", "Z(G_k,6) = Z(L(G_k,6))"),
        }
        if k >= 2:
            table["B_of_line"] = (4, "eq", "B(L(G_k,6)) = 4")
        return table.get(parameter)
    return None
