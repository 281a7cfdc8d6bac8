"""Non-backtracking chains, their q-compatible components, and collapse.

A chain is a maximal walk whose interior nodes have degree exactly 2 and
whose endpoints have degree greater than 2 (the endpoints coincide for a
closed chain).  The generic segment walker used here also accepts degree-1
endpoints, which ``collapse`` needs for dangling chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, NamedTuple

from .graph import GraphError, Multigraph, Subgraph, edge_subgraph, is_connected


@dataclass(frozen=True)
class Chain:
    endpoint_a: int
    endpoint_b: int
    interior: tuple[int, ...]
    # oriented edge indices, walked from endpoint_a to endpoint_b
    edges: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def closed(self) -> bool:
        return self.endpoint_a == self.endpoint_b

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(o >> 1 for o in self.edges)


@dataclass(frozen=True)
class ChainStructure:
    """Either a bare circle (``circle`` holds its length) or a partition of
    the edges into chains."""

    chains: tuple[Chain, ...] = ()
    circle: int | None = None

    @property
    def is_circle(self) -> bool:
        return self.circle is not None

    def lengths(self) -> list[int]:
        return [c.length for c in self.chains]


@dataclass(frozen=True)
class ChainComponent:
    """A connected component of the union of q-compatible chains."""

    subgraph: Subgraph
    chains: tuple[Chain, ...]
    r: int

    @property
    def n(self) -> int:
        return self.subgraph.graph.n

    @property
    def m(self) -> int:
        return self.subgraph.graph.m


class Collapse(NamedTuple):
    """``graph`` is the collapse; ``nodes[i]`` is the node of the input it
    came from and ``paths[e]`` lists the ``r`` oriented edges of the input
    that make up edge ``e`` in its forward direction."""

    graph: Multigraph
    nodes: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]


def _walk(g: Multigraph, o: int, used: bytearray, visits) -> Chain:
    deg, out = g.degrees, g.out_edges
    start = g.source(o)
    path = [o]
    interior = []
    used[o >> 1] = 1
    if visits is not None:
        visits[o] += 1
    t = g.target(o)
    while deg[t] == 2 and t != start:
        interior.append(t)
        x, y = out[t]
        o = y if x == o ^ 1 else x
        used[o >> 1] = 1
        if visits is not None:
            visits[o] += 1
        path.append(o)
        t = g.target(o)
    return Chain(start, t, tuple(interior), tuple(path))


def segments(g: Multigraph, visits=None) -> tuple[list[Chain], list[Chain]]:
    """Split the edges into maximal degree-2 walks.

    Returns ``(open_segments, cycles)``: segments run between nodes of
    degree other than 2; cycles are components consisting only of degree-2
    nodes and start at their lowest node.
    """
    deg, out = g.degrees, g.out_edges
    used = bytearray(g.m)
    found = []
    for v in range(g.n):
        if deg[v] == 2:
            continue
        for o in out[v]:
            if not used[o >> 1]:
                found.append(_walk(g, o, used, visits))
    cycles = []
    for e in range(g.m):
        if not used[e]:
            a = g.edges[e][0]
            cycles.append(_walk(g, out[a][0], used, visits))
    return found, cycles


def enumerate_chains(g: Multigraph, visits=None) -> ChainStructure:
    """Partition the edges of a connected min-degree-2 graph into NB chains.

    A graph whose nodes all have degree 2 is reported as a circle.  When
    ``visits`` is a mutable sequence of length ``2m`` the number of times
    each oriented edge is traversed is accumulated into it.
    """
    if g.m == 0 or g.min_degree() < 2:
        raise GraphError("chain enumeration needs minimum degree at least 2")
    if not is_connected(g):
        raise GraphError("chain enumeration needs a connected graph")
    if all(d == 2 for d in g.degrees):
        return ChainStructure(circle=g.m)
    found, _ = segments(g, visits)
    return ChainStructure(chains=tuple(found))


def _compatible(p: int, q: int) -> bool:
    return p % q == 0 or (q % 2 == 0 and p % (q // 2) == 0)


def get_chains(g: Multigraph, q: int,
               structure: ChainStructure | None = None) -> list[Chain]:
    """Chains whose length is a multiple of ``q``, or of ``q/2`` for even ``q``."""
    if q <= 2:
        raise ValueError("order must exceed 2")
    structure = structure or enumerate_chains(g)
    if structure.is_circle:
        raise GraphError("circle graphs have no NB chains")
    return [c for c in structure.chains if _compatible(c.length, q)]


def chain_components(g: Multigraph, q: int,
                     structure: ChainStructure | None = None) -> list[ChainComponent]:
    """Connected components of the union of the chains kept by ``get_chains``."""
    kept = get_chains(g, q, structure)
    parent = {}

    def find(x):
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for c in kept:
        ra, rb = find(c.endpoint_a), find(c.endpoint_b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[Chain]] = {}
    for c in kept:
        groups.setdefault(find(c.endpoint_a), []).append(c)
    comps = []
    for chains in groups.values():
        edges = [e for c in chains for e in c.edge_ids]
        r = reduce(gcd, (c.length for c in chains))
        comps.append(ChainComponent(edge_subgraph(g, edges), tuple(chains), r))
    comps.sort(key=lambda s: s.subgraph.edges[0])
    return comps


def max_subdivision_number(s: ChainComponent | Iterable[Chain]) -> int:
    """Greatest common divisor of the chain lengths."""
    chains = s.chains if isinstance(s, ChainComponent) else s
    return reduce(gcd, (c.length for c in chains), 0)


def collapse(s: Multigraph, r: int) -> Collapse:
    """The graph whose ``r``-subdivision is ``s``.

    Every maximal degree-2 walk of ``s`` must have length divisible by
    ``r``; nodes of degree other than 2 and every ``r``-th node along each
    walk survive.
    """
    if r < 1:
        raise ValueError("collapse factor must be positive")
    found, cycles = segments(s)
    for c in found + cycles:
        if c.length % r:
            raise GraphError(
                f"walk of length {c.length} from node {c.endpoint_a} "
                f"is not divisible by {r}")
    keep = [d != 2 for d in s.degrees]
    for c in found + cycles:
        keep[c.endpoint_a] = True
        for j in range(r, c.length, r):
            keep[c.interior[j - 1]] = True
    nodes = tuple(v for v in range(s.n) if keep[v])
    index = {v: i for i, v in enumerate(nodes)}
    edges, paths = [], []
    for c in found + cycles:
        for j in range(0, c.length, r):
            piece = c.edges[j:j + r]
            edges.append((index[s.source(piece[0])], index[s.target(piece[-1])]))
            paths.append(piece)
    labels = tuple(s.labels[v] for v in nodes)
    return Collapse(Multigraph(len(nodes), tuple(edges), labels), nodes, tuple(paths))
