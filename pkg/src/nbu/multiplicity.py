"""Multiplicities of unitary non-backtracking eigenvalues, computed
combinatorially.

Every unitary eigenvalue is a root of unity; it is identified here by its
order ``q`` (``q = 1`` is ``+1``, ``q = 2`` is ``-1``).  All counts are taken
per connected component of the 2-core and summed.  No matrix is formed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .chains import ChainComponent, chain_components, collapse, enumerate_chains
from .graph import (GraphError, Multigraph, Subgraph, as_circle, bipartite,
                    connected_components, is_connected, two_core)


def core_components(g: Multigraph) -> list[Subgraph]:
    """Connected components of the 2-core that carry edges, embedded in ``g``."""
    core = two_core(g)
    comps = []
    for comp in connected_components(core.graph):
        if comp.graph.m == 0:
            continue
        nodes = tuple(core.nodes[v] for v in comp.nodes)
        edges = tuple(core.edges[e] for e in comp.edges)
        comps.append(Subgraph(comp.graph, nodes, edges))
    return comps


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")


def _real_count(h: Multigraph, sign: int) -> int:
    rho = as_circle(h)
    if rho is not None:
        return 2 if sign == 1 or rho % 2 == 0 else 0
    if sign == 1:
        return h.m - h.n + 1
    return h.m - h.n + (1 if bipartite(h) else 0)


def gm_real(g: Multigraph, sign: int) -> int:
    """Geometric multiplicity of ``+1`` or ``-1``."""
    _check_sign(sign)
    return sum(_real_count(c.graph, sign) for c in core_components(g))


def am_real(g: Multigraph, sign: int) -> int:
    """Algebraic multiplicity of ``+1`` or ``-1``.

    It coincides with the geometric multiplicity on every 2-core component,
    circles included (the NB matrix of a circle is a sum of two cyclic
    permutations), so the same count applies.
    """
    _check_sign(sign)
    return sum(_real_count(c.graph, sign) for c in core_components(g))


@dataclass(frozen=True)
class ComponentTerm:
    """Contribution of one component ``S_q`` to the multiplicity of order ``q``."""

    component: ChainComponent
    q: int
    divides: bool          # q | r(S_q)
    collapse_bipartite: bool | None
    value: int


def component_terms(h: Multigraph, q: int) -> list[ComponentTerm]:
    """Per-``S_q`` summands for a connected min-degree-2 non-circle graph."""
    terms = []
    for s in chain_components(h, q):
        excess = s.m - s.n
        coll_bip = None
        divides = s.r % q == 0
        if q % 2 == 1 or divides:
            value = excess + 1
        else:
            coll_bip = bipartite(collapse(s.subgraph.graph, q // 2).graph)
            value = excess + (1 if coll_bip else 0)
        assert value >= 0, "negative summand"
        terms.append(ComponentTerm(s, q, divides, coll_bip, value))
    return terms


def _unitary_count(h: Multigraph, q: int) -> int:
    rho = as_circle(h)
    if rho is not None:
        return 2 if rho % q == 0 else 0
    return sum(t.value for t in component_terms(h, q))


def gm_unitary(g: Multigraph, q: int) -> int:
    """Geometric multiplicity of a primitive ``q``-th root of unity, ``q > 2``."""
    if q <= 2:
        raise ValueError("order must exceed 2; use gm_real for +1 and -1")
    return sum(_unitary_count(c.graph, q) for c in core_components(g))


def gm(g: Multigraph, q: int) -> int:
    """Geometric multiplicity of any order ``q >= 1``."""
    if q < 1:
        raise ValueError("order must be positive")
    if q == 1:
        return gm_real(g, 1)
    if q == 2:
        return gm_real(g, -1)
    return gm_unitary(g, q)


def _divisors(x: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= x:
        if x % d == 0:
            small.append(d)
            if d * d != x:
                large.append(x // d)
        d += 1
    return small + large[::-1]


def candidate_orders(g: Multigraph) -> list[int]:
    """Orders that can possibly carry a unitary eigenvalue.

    ``{1, 2}``, every divisor above 2 of ``2p`` for each chain length ``p``
    and every divisor of each circle-component length.
    """
    orders = {1, 2}
    for c in core_components(g):
        structure = enumerate_chains(c.graph)
        if structure.is_circle:
            orders.update(_divisors(structure.circle))
        else:
            for p in set(structure.lengths()):
                orders.update(d for d in _divisors(2 * p) if d > 2)
    return sorted(orders)


@dataclass(frozen=True)
class OrderEntry:
    q: int
    gm: int
    am: int | None = None


@dataclass(frozen=True)
class ComponentReport:
    nodes: tuple[int, ...]
    n: int
    m: int
    circle: int | None
    orders: tuple[OrderEntry, ...]


@dataclass(frozen=True)
class SpectrumReport:
    orders: tuple[OrderEntry, ...]
    components: tuple[ComponentReport, ...] = field(default=())

    def as_dict(self) -> dict[int, int]:
        return {e.q: e.gm for e in self.orders}


def unitary_spectrum(g: Multigraph) -> SpectrumReport:
    """Every order with non-zero multiplicity, overall and per 2-core component."""
    totals: dict[int, int] = {}
    am_totals = {1: 0, 2: 0}
    comps = []
    for c in core_components(g):
        h = c.graph
        entries = []
        for q in candidate_orders(h):
            if q <= 2:
                value = _real_count(h, 1 if q == 1 else -1)
                am_totals[q] += value
            else:
                value = _unitary_count(h, q)
            if value:
                totals[q] = totals.get(q, 0) + value
                entries.append(OrderEntry(q, value, value if q <= 2 else None))
        comps.append(ComponentReport(c.nodes, h.n, h.m, as_circle(h), tuple(entries)))
    orders = tuple(OrderEntry(q, totals[q], am_totals[q] if q <= 2 else None)
                   for q in sorted(totals))
    return SpectrumReport(orders, tuple(comps))


def gluing_sites(g: Multigraph, q: int) -> set[int]:
    """Nodes at which an order-``q`` eigenfunction has zero inflow.

    For ``q`` in ``{1, 2}`` this is every node.  On a circle of length
    ``rho`` divisible by ``q`` the answer depends on the eigenfunction; the
    representative one vanishing into the lowest node ``w`` is used, giving
    the nodes at distance ``j`` from ``w`` with ``2j`` divisible by ``q``.
    Otherwise every node is a site except the interior chain nodes at
    position ``j`` with ``2j`` not divisible by ``q`` on chains that carry
    an eigenfunction.  An empty set is returned (with a warning) when the
    multiplicity is zero.
    """
    if q < 1:
        raise ValueError("order must be positive")
    if g.m == 0 or g.min_degree() < 2 or not is_connected(g):
        raise GraphError("gluing sites need a connected min-degree-2 graph")
    if gm(g, q) == 0:
        warnings.warn(f"order {q} is not an eigenvalue order of this graph; "
                      "no gluing sites", stacklevel=2)
        return set()
    if q <= 2:
        return set(range(g.n))
    rho = as_circle(g)
    if rho is not None:
        # walk the circle from node 0 along its forward traversal
        order = [0]
        o = g.out_edges[0][0]
        while len(order) < rho:
            v = g.target(o)
            order.append(v)
            x, y = g.out_edges[v]
            o = y if x == o ^ 1 else x
        return {v for j, v in enumerate(order) if (2 * j) % q == 0}
    sites = set(range(g.n))
    for t in component_terms(g, q):
        if t.value == 0:
            continue
        sub = t.component.subgraph
        core_edges = {sub.edges[e] for e in two_core(sub.graph).edges}
        for c in t.component.chains:
            if c.edges[0] >> 1 not in core_edges:
                continue  # dangling chains carry no eigenfunction
            for j, v in enumerate(c.interior, start=1):
                if (2 * j) % q:
                    sites.discard(v)
    return sites
