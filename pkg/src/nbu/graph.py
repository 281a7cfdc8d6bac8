"""Multigraph model, NBG text I/O, structural predicates and generators.

Nodes are stored compacted as ``0..n-1``; the external integer id of each
node is kept in ``Multigraph.labels``.  Edges are ``(a, b)`` records indexed
by position, so parallel edges are distinct records and ``a == b`` is a
self-loop.  The record order fixes the *forward* orientation of each edge.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence, TextIO


class GraphError(ValueError):
    """Raised when a graph violates a precondition of an operation."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Undirected multigraph with self-loops and parallel edges."""

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.n)))
        if len(self.labels) != self.n:
            raise GraphError("labels must have one entry per node")
        for a, b in self.edges:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise GraphError(f"edge ({a}, {b}) references a missing node")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]],
                   nodes: Iterable[int] = ()) -> "Multigraph":
        """Build a graph from edges given in external node ids.

        Node ids are compacted in increasing order; ``nodes`` may add
        isolated nodes.
        """
        edges = [(int(a), int(b)) for a, b in edges]
        ids = set(nodes)
        for a, b in edges:
            ids.add(a)
            ids.add(b)
        if any(i < 0 for i in ids):
            raise GraphError("node ids must be non-negative")
        labels = tuple(sorted(ids))
        index = {lab: i for i, lab in enumerate(labels)}
        return cls(len(labels), tuple((index[a], index[b]) for a, b in edges),
                   labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    @cached_property
    def out_edges(self) -> list[list[int]]:
        """Oriented edge indices leaving each node.

        Oriented edge ``2e`` runs ``a -> b`` and ``2e + 1`` runs ``b -> a``
        for edge ``e = (a, b)``.  A self-loop contributes both orientations
        to its node.
        """
        out: list[list[int]] = [[] for _ in range(self.n)]
        for e, (a, b) in enumerate(self.edges):
            out[a].append(2 * e)
            out[b].append(2 * e + 1)
        return out

    @cached_property
    def label_index(self) -> dict[int, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index_of(self, label: int) -> int:
        try:
            return self.label_index[label]
        except KeyError:
            raise GraphError(f"node {label} is not in the graph") from None

    def source(self, o: int) -> int:
        a, b = self.edges[o >> 1]
        return b if o & 1 else a

    def target(self, o: int) -> int:
        a, b = self.edges[o >> 1]
        return a if o & 1 else b

    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"


class Subgraph(NamedTuple):
    """A graph together with its embedding in a parent graph.

    ``nodes[i]`` is the parent node of node ``i`` and ``edges[j]`` is the
    parent edge id of edge ``j``.  Edge orientation matches the parent.
    """

    graph: Multigraph
    nodes: tuple[int, ...]
    edges: tuple[int, ...]

    def oriented_to_parent(self, o: int) -> int:
        return 2 * self.edges[o >> 1] + (o & 1)


class Subdivision(NamedTuple):
    graph: Multigraph
    true_nodes: tuple[int, ...]


def edge_subgraph(g: Multigraph, edge_ids: Iterable[int],
                  extra_nodes: Iterable[int] = ()) -> Subgraph:
    """Subgraph spanned by ``edge_ids`` (plus any ``extra_nodes``)."""
    edge_ids = sorted(set(edge_ids))
    keep = set(extra_nodes)
    for e in edge_ids:
        keep.update(g.edges[e])
    nodes = tuple(sorted(keep))
    index = {v: i for i, v in enumerate(nodes)}
    edges = tuple((index[g.edges[e][0]], index[g.edges[e][1]]) for e in edge_ids)
    labels = tuple(g.labels[v] for v in nodes)
    return Subgraph(Multigraph(len(nodes), edges, labels), nodes, tuple(edge_ids))


# --------------------------------------------------------------------------
# NBG text format


def parse_graph(text: str | TextIO) -> Multigraph:
    """Parse the NBG edge-list format.

    Blank lines and lines starting with ``#`` are skipped; every other line
    holds two non-negative integers ``u v``.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    edges = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two integers, got {line!r}")
        try:
            u, v = int(parts[0], 10), int(parts[1], 10)
        except ValueError:
            raise ParseError(lineno, f"expected two integers, got {line!r}") from None
        if u < 0 or v < 0:
            raise ParseError(lineno, "node ids must be non-negative")
        edges.append((u, v))
    return Multigraph.from_edges(edges)


def format_graph(g: Multigraph) -> str:
    lab = g.labels
    return "".join(f"{lab[a]} {lab[b]}\n" for a, b in g.edges)


def read_graph(path: str) -> Multigraph:
    with open(path) as fh:
        return parse_graph(fh)


def write_graph(g: Multigraph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))


# --------------------------------------------------------------------------
# Structure


def two_core(g: Multigraph) -> Subgraph:
    """Strip nodes of degree <= 1 until the minimum degree is at least 2."""
    deg = list(g.degrees)
    alive = [True] * g.n
    queue = deque(v for v in range(g.n) if deg[v] <= 1)
    out = g.out_edges
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for o in out[v]:
            w = g.target(o)
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    keep = [e for e, (a, b) in enumerate(g.edges) if alive[a] and alive[b]]
    return edge_subgraph(g, keep)


def connected_components(g: Multigraph) -> list[Subgraph]:
    """Connected components, isolated nodes included as singletons."""
    comp = [-1] * g.n
    groups: list[list[int]] = []
    out = g.out_edges
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        c = len(groups)
        comp[s] = c
        members = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for o in out[v]:
                w = g.target(o)
                if comp[w] < 0:
                    comp[w] = c
                    members.append(w)
                    stack.append(w)
        groups.append(members)
    if len(groups) == 1 and len(groups[0]) == g.n:
        return [Subgraph(g, tuple(range(g.n)), tuple(range(g.m)))]
    edge_groups: list[list[int]] = [[] for _ in groups]
    for e, (a, _) in enumerate(g.edges):
        edge_groups[comp[a]].append(e)
    return [edge_subgraph(g, es, members) for es, members in zip(edge_groups, groups)]


def is_connected(g: Multigraph) -> bool:
    return len(connected_components(g)) <= 1


def is_bipartite(g: Multigraph) -> tuple[bool, list[int] | None]:
    """Two-colourability test.

    Returns ``(True, None)`` or ``(False, walk)`` where ``walk`` is a closed
    walk of odd length given as a node sequence whose first and last entries
    coincide.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    out = g.out_edges
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for o in out[v]:
                w = g.target(o)
                if color[w] < 0:
                    color[w] = color[v] ^ 1
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    return False, _odd_walk(parent, v, w)
    return True, None


def _odd_walk(parent: list[int], v: int, w: int) -> list[int]:
    def to_root(x):
        path = [x]
        while parent[x] >= 0:
            x = parent[x]
            path.append(x)
        return path

    pv, pw = to_root(v), to_root(w)
    # trim the common tail above the lowest common ancestor
    while len(pv) > 1 and len(pw) > 1 and pv[-2] == pw[-2]:
        pv.pop()
        pw.pop()
    return pv + pw[-2::-1] + [v]


def bipartite(g: Multigraph) -> bool:
    return is_bipartite(g)[0]


def cycle_rank(g: Multigraph) -> int:
    """``m - n + c`` where ``c`` counts connected components."""
    return g.m - g.n + len(connected_components(g))


def as_circle(g: Multigraph) -> int | None:
    """Length of ``g`` if it is a single cycle (self-loop and double edge
    included), else ``None``."""
    if g.m == 0 or g.m != g.n or any(d != 2 for d in g.degrees):
        return None
    return g.m if is_connected(g) else None


# --------------------------------------------------------------------------
# Constructions


def subdivide(g: Multigraph, r: int) -> Subdivision:
    """Replace every edge by a path of ``r`` edges.

    Edge ``e = (a, b)`` becomes edges ``e*r .. e*r + r - 1`` running from
    ``a`` to ``b``; its ``r - 1`` new nodes are ``n + e*(r-1) + j``.
    Original nodes keep their indices.
    """
    if r < 1:
        raise GraphError("subdivision number must be positive")
    if r == 1:
        return Subdivision(g, tuple(range(g.n)))
    n = g.n
    edges = []
    for e, (a, b) in enumerate(g.edges):
        base = n + e * (r - 1)
        path = [a] + list(range(base, base + r - 1)) + [b]
        edges.extend(zip(path, path[1:]))
    n_new = n + g.m * (r - 1)
    top = max(g.labels, default=-1) + 1
    labels = g.labels + tuple(range(top, top + n_new - n))
    return Subdivision(Multigraph(n_new, tuple(edges), labels), tuple(range(n)))


def glue(g: Multigraph, h: Multigraph,
         pairing: Sequence[tuple[int, int]]) -> Multigraph:
    """Identify node ``x`` of ``g`` with node ``y`` of ``h`` for each pair.

    Pairs are node indices.  Nodes of ``g`` keep their indices; unpaired
    nodes of ``h`` follow in order.  Edges of ``g`` precede those of ``h``.
    """
    left = [x for x, _ in pairing]
    right = [y for _, y in pairing]
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise GraphError("a node appears twice in the pairing")
    for x in left:
        if not 0 <= x < g.n:
            raise GraphError(f"node {x} is not in the first graph")
    for y in right:
        if not 0 <= y < h.n:
            raise GraphError(f"node {y} is not in the second graph")
    if g.min_degree() < 2 or h.min_degree() < 2:
        raise GraphError("both graphs must have minimum degree at least 2")
    image = dict(zip(right, left))
    nxt = g.n
    for y in range(h.n):
        if y not in image:
            image[y] = nxt
            nxt += 1
    edges = g.edges + tuple((image[a], image[b]) for a, b in h.edges)
    return Multigraph(nxt, edges)


def cycle_graph(r: int) -> Multigraph:
    """Cycle ``0 -> 1 -> ... -> r-1 -> 0``; ``r = 1`` is a self-loop."""
    if r < 1:
        raise GraphError("cycle length must be positive")
    return Multigraph(r, tuple((i, (i + 1) % r) for i in range(r)))


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def bouquet(k: int) -> Multigraph:
    """One node carrying ``k`` self-loops."""
    return Multigraph(1, ((0, 0),) * k)


def theta_graph(*lengths: int) -> Multigraph:
    """Hubs 0 and 1 joined by internally disjoint paths of the given lengths."""
    if any(p < 1 for p in lengths):
        raise GraphError("path lengths must be positive")
    edges = []
    nxt = 2
    for p in lengths:
        path = [0] + list(range(nxt, nxt + p - 1)) + [1]
        nxt += p - 1
        edges.extend(zip(path, path[1:]))
    return Multigraph(nxt, tuple(edges))


def disjoint_union(*graphs: Multigraph) -> Multigraph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((a + offset, b + offset) for a, b in g.edges)
        offset += g.n
    return Multigraph(offset, tuple(edges))


def random_multigraph(rng: random.Random, max_nodes: int = 10,
                      max_edges: int = 16, loops: bool = True,
                      multi: bool = True, pendants: bool = True) -> Multigraph:
    """Random connected multigraph biased towards long degree-2 chains.

    A small random connected base multigraph is built first; random edges
    are then subdivided while the node and edge budgets allow, and with
    ``pendants`` a few tree branches may be hung off the result.
    """
    max_nodes = max(max_nodes, 1)
    hubs = rng.randint(1, max(1, min(max_nodes, 5)))
    budget = max_edges - (hubs - 1)
    edges = [(rng.randrange(i), i) for i in range(1, hubs)]
    extra = rng.randint(0, max(0, min(budget, hubs + 3)))
    for _ in range(extra):
        a = rng.randrange(hubs)
        if loops and rng.random() < 0.15:
            b = a
        else:
            b = rng.randrange(hubs)
            if a == b and not loops:
                continue
        if not multi and a != b and ((a, b) in edges or (b, a) in edges):
            continue
        edges.append((a, b))
    n = hubs
    while n < max_nodes and len(edges) < max_edges and edges and rng.random() < 0.85:
        i = rng.randrange(len(edges))
        a, b = edges[i]
        edges[i] = (a, n)
        edges.append((n, b))
        n += 1
    if pendants:
        while n < max_nodes and len(edges) < max_edges and rng.random() < 0.2:
            edges.append((rng.randrange(n), n))
            n += 1
    return Multigraph(n, tuple(edges))
