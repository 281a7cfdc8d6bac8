"""Explicit eigenfunctions for unitary non-backtracking eigenvalues.

Bases for ``+1`` and ``-1`` come from fundamental cycles of a spanning tree
(or, for ``-1`` on non-bipartite graphs, from an exact rational null-space
computation).  Nonreal orders are reached by collapsing each supporting
component, taking a ``+1``/``-1`` basis there and lifting it back along the
subdivision paths.
"""

from __future__ import annotations

import cmath
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .chains import collapse
from .graph import (GraphError, Multigraph, Subgraph, as_circle, bipartite,
                    cycle_graph, two_core)
from .multiplicity import component_terms, core_components
from .nb_operator import DEFAULT_TOL, apply_nb, inflow, leaky_nodes


@dataclass
class EigenBasis:
    """Eigenfunctions of one eigenvalue ``lam`` of order ``q``.

    ``pivots[i]`` is an oriented edge on which function ``i`` is non-zero
    and every other function vanishes, which certifies independence.
    ``supports[i]`` lists the edge ids of the component function ``i``
    was built on.
    """

    q: int
    lam: complex
    functions: list[np.ndarray] = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)
    supports: list[tuple[int, ...]] = field(default_factory=list)

    def __len__(self):
        return len(self.functions)

    def matrix(self, size: int | None = None) -> np.ndarray:
        if not self.functions:
            return np.zeros((0, size or 0), dtype=complex)
        return np.vstack(self.functions)

    def pivots_certified(self, tol: float = DEFAULT_TOL) -> bool:
        M = self.matrix()
        for i, o in enumerate(self.pivots):
            col = np.abs(M[:, o])
            if col[i] <= tol or np.delete(col, i).max(initial=0.0) > tol:
                return False
        return True


class CircleBasis(NamedTuple):
    forward: np.ndarray
    backward: np.ndarray
    # backward - forward: zero inflow at the base node
    combination: np.ndarray


class Verification(NamedTuple):
    residual: float
    leaky: set[int] | None


def root_of_unity(q: int, j: int = 1) -> complex:
    return cmath.exp(2j * cmath.pi * j / q)


def _omap(sub: Subgraph) -> np.ndarray:
    """Parent oriented-edge index of each oriented edge of ``sub``."""
    edges = np.asarray(sub.edges, dtype=np.int64)
    out = np.empty(2 * len(edges), dtype=np.int64)
    out[0::2] = 2 * edges
    out[1::2] = 2 * edges + 1
    return out


def _spanning_tree(g: Multigraph):
    """BFS tree: (oriented edge from parent into each node, depth, tree edge ids)."""
    parent_edge = [-1] * g.n
    depth = [-1] * g.n
    tree = set()
    for s in range(g.n):
        if depth[s] >= 0:
            continue
        depth[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for o in g.out_edges[v]:
                w = g.target(o)
                if depth[w] < 0:
                    depth[w] = depth[v] + 1
                    parent_edge[w] = o
                    tree.add(o >> 1)
                    queue.append(w)
    return parent_edge, depth, tree


def _fundamental_cycles(g: Multigraph) -> list[tuple[int, list[int]]]:
    """For each non-tree edge ``e``: ``(e, cycle)`` with the cycle as oriented
    edges starting with ``e`` in its forward direction."""
    parent_edge, depth, tree = _spanning_tree(g)
    cycles = []
    for e, (a, b) in enumerate(g.edges):
        if e in tree:
            continue
        up, down = [], []
        x, y = b, a
        while x != y:
            if depth[x] >= depth[y]:
                up.append(parent_edge[x] ^ 1)
                x = g.source(parent_edge[x])
            else:
                down.append(parent_edge[y])
                y = g.source(parent_edge[y])
        cycles.append((e, [2 * e] + up + down[::-1]))
    return cycles


def _require_two_cycles(g: Multigraph) -> None:
    if g.m == 0 or as_circle(g) is not None:
        raise GraphError("needs a graph with at least two cycles; "
                         "use circle_basis for circles")


def plus_one_basis(g: Multigraph) -> EigenBasis:
    """Cycle basis for the eigenvalue ``+1``: ``+1`` around each fundamental
    cycle, ``-1`` on the reversed orientations."""
    _require_two_cycles(g)
    basis = EigenBasis(1, 1.0 + 0j)
    for e, cycle in _fundamental_cycles(g):
        v = np.zeros(2 * g.m, dtype=complex)
        for o in cycle:
            v[o] += 1
            v[o ^ 1] -= 1
        basis.functions.append(v)
        basis.pivots.append(2 * e)
        basis.supports.append(tuple(sorted({o >> 1 for o in cycle})))
    return basis


def _unsigned_incidence_nullspace(g: Multigraph) -> list[tuple[int, list[Fraction]]]:
    """Exact null space of the node-edge unsigned incidence matrix.

    Returns ``(free edge, vector)`` pairs from the reduced row echelon form.
    """
    rows = [[Fraction(0)] * g.m for _ in range(g.n)]
    for e, (a, b) in enumerate(g.edges):
        rows[a][e] += 1
        rows[b][e] += 1
    pivot_cols = []
    r = 0
    for c in range(g.m):
        p = next((i for i in range(r, g.n) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(g.n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    free = [c for c in range(g.m) if c not in set(pivot_cols)]
    out = []
    for f in free:
        vec = [Fraction(0)] * g.m
        vec[f] = Fraction(1)
        for i, c in enumerate(pivot_cols):
            vec[c] = -rows[i][f]
        out.append((f, vec))
    return out


def minus_one_basis(g: Multigraph) -> EigenBasis:
    """Basis for the eigenvalue ``-1``: functions symmetric on each edge with
    zero inflow at every node.

    Bipartite graphs use alternating signs around fundamental cycles; other
    graphs get an exact null-space basis of the unsigned incidence matrix.
    """
    _require_two_cycles(g)
    basis = EigenBasis(2, -1.0 + 0j)
    if bipartite(g):
        for e, cycle in _fundamental_cycles(g):
            v = np.zeros(2 * g.m, dtype=complex)
            for i, o in enumerate(cycle):
                v[o] = v[o ^ 1] = (-1) ** i
            basis.functions.append(v)
            basis.pivots.append(2 * e)
            basis.supports.append(tuple(sorted({o >> 1 for o in cycle})))
        return basis
    for f, vec in _unsigned_incidence_nullspace(g):
        w = np.array([float(x) for x in vec])
        v = np.repeat(w, 2).astype(complex)
        basis.functions.append(v)
        basis.pivots.append(2 * f)
        basis.supports.append(tuple(int(e) for e in np.flatnonzero(w)))
    return basis


def _circle_pair(traversal: Sequence[int], size: int, lam: complex):
    """Forward and backward circle eigenfunctions for a cyclic traversal
    given as oriented edges leaving the base node first."""
    r = len(traversal)
    powers = lam ** -np.arange(r)
    fwd = np.zeros(size, dtype=complex)
    back = np.zeros(size, dtype=complex)
    fwd[np.asarray(traversal)] = powers
    back[np.asarray(traversal[::-1]) ^ 1] = powers
    return fwd, back


def _circle_traversal(g: Multigraph, start: int) -> list[int]:
    o = g.out_edges[start][0]
    walk = [o]
    while g.target(o) != start:
        x, y = g.out_edges[g.target(o)]
        o = y if x == o ^ 1 else x
        walk.append(o)
    return walk


def circle_basis(r: int, q: int, j: int = 1) -> CircleBasis:
    """The two eigenfunctions of ``cycle_graph(r)`` for ``exp(2 pi i j / q)``,
    based at node 0, plus the combination with zero inflow there."""
    if r % q:
        raise ValueError(f"order {q} does not divide the circle length {r}")
    g = cycle_graph(r)
    fwd, back = _circle_pair(_circle_traversal(g, 0), 2 * r, root_of_unity(q, j))
    return CircleBasis(fwd, back, back - fwd)


def _lift(u: np.ndarray, paths: np.ndarray, lam: complex, size: int) -> np.ndarray:
    r = paths.shape[1]
    powers = lam ** -np.arange(r)
    v = np.zeros(size, dtype=complex)
    v[paths] = u[0::2, None] * powers
    v[paths[:, ::-1] ^ 1] = u[1::2, None] * powers
    return v


def lift_through_subdivision(u, g: Multigraph, r: int, lam: complex,
                             tol: float = DEFAULT_TOL) -> np.ndarray:
    """Carry an eigenfunction of ``g`` (eigenvalue ``lam**r``) to an
    eigenfunction of ``subdivide(g, r)`` with eigenvalue ``lam``.

    Along each subdivided edge the value decays by ``lam**-1`` per step,
    starting from the value of ``u`` on the original orientation.
    """
    u = np.asarray(u, dtype=complex)
    scale = np.abs(u).max(initial=0.0)
    if scale == 0 or np.abs(apply_nb(g, u) - lam ** r * u).max() > tol * scale:
        raise ValueError("input is not an eigenfunction for lam**r")
    if r == 1:
        return u.copy()
    paths = 2 * (np.arange(g.m)[:, None] * r + np.arange(r)[None, :])
    return _lift(u, paths, lam, 2 * g.m * r)


def _lifted_pivot(o: int, paths: np.ndarray) -> int:
    e = o >> 1
    return int(paths[e, 0]) if o % 2 == 0 else int(paths[e, -1] ^ 1)


def _extend_into_trees(g: Multigraph, v: np.ndarray, lam: complex,
                       core_nodes: frozenset) -> None:
    """Fill in the values on edges pointing away from the 2-core so that
    ``Bv = lam v`` holds on the trees hanging off it.  Edges pointing back
    towards the core keep the value zero."""
    into = inflow(g, v)
    seen = set(core_nodes)
    queue = deque(sorted(core_nodes))
    while queue:
        k = queue.popleft()
        for o in g.out_edges[k]:
            l = g.target(o)
            if l in seen:
                continue
            seen.add(l)
            v[o] = into[k] / lam
            into[l] += v[o]
            queue.append(l)


def unitary_basis(g: Multigraph, q: int, j: int = 1) -> EigenBasis:
    """Basis of the eigenspace of ``exp(2 pi i j / q)`` for ``gcd(j, q) = 1``.

    Circle components contribute their two circle functions.  For ``q > 2``
    each supporting component is stripped of dangling chains, collapsed to
    the graph it subdivides, given a ``+1`` or ``-1`` basis there, lifted
    back and zero-extended over the rest of the 2-core.  Trees hanging off
    the 2-core get the values forced by ``Bv = lam v`` on their outward
    edges.
    """
    if q < 1:
        raise ValueError("order must be positive")
    lam = root_of_unity(q, j)
    size = 2 * g.m
    basis = EigenBasis(q, lam)
    core = two_core(g)
    has_trees = core.graph.m < g.m
    core_nodes = frozenset(core.nodes)

    def add(local: np.ndarray, omap: np.ndarray, pivot: int):
        v = np.zeros(size, dtype=complex)
        v[omap] = local
        if has_trees:
            _extend_into_trees(g, v, lam, core_nodes)
        basis.functions.append(v)
        basis.pivots.append(int(omap[pivot]))
        basis.supports.append(tuple(sorted(set((omap >> 1).tolist()))))

    for comp in core_components(g):
        h = comp.graph
        hmap = _omap(comp)
        rho = as_circle(h)
        if rho is not None:
            if rho % q:
                continue
            walk = _circle_traversal(h, 0)
            fwd, back = _circle_pair(walk, 2 * h.m, lam)
            add(fwd, hmap, walk[0])
            add(back, hmap, walk[-1] ^ 1)
            continue
        if q <= 2:
            sub = plus_one_basis(h) if q == 1 else minus_one_basis(h)
            for v, p in zip(sub.functions, sub.pivots):
                add(v, hmap, p)
            continue
        for term in component_terms(h, q):
            if term.value == 0:
                continue
            s = term.component.subgraph
            core = two_core(s.graph)
            t = core.graph
            tmap = hmap[_omap(s)[_omap(core)]]
            if as_circle(t) is not None:
                # base the single function at a node that is a hub of h
                base = min(i for i in range(t.n) if h.degrees[s.nodes[core.nodes[i]]] > 2)
                walk = _circle_traversal(t, base)
                fwd, back = _circle_pair(walk, 2 * t.m, lam)
                add(back - fwd, tmap, walk[0])
                continue
            if q % 2 == 1 or term.divides:
                coll = collapse(t, q)
                sub = plus_one_basis(coll.graph)
            else:
                coll = collapse(t, q // 2)
                sub = minus_one_basis(coll.graph)
            paths = np.asarray(coll.paths, dtype=np.int64)
            for u, p in zip(sub.functions, sub.pivots):
                add(_lift(u, paths, lam, 2 * t.m), tmap, _lifted_pivot(p, paths))
    return basis


def verify_eigenfunction(g: Multigraph, v, lam: complex,
                         tol: float = DEFAULT_TOL) -> Verification:
    """Relative residual ``|Bv - lam v|_inf / |v|_inf``; leaky nodes are
    reported too when ``|lam| = 1``."""
    v = np.asarray(v, dtype=complex)
    scale = np.abs(v).max(initial=0.0)
    if scale == 0:
        raise ValueError("the zero function has no defined residual")
    residual = float(np.abs(apply_nb(g, v) - lam * v).max() / scale)
    leaky = leaky_nodes(g, v, tol) if abs(abs(lam) - 1) <= tol else None
    return Verification(residual, leaky)


def export_basis(basis: EigenBasis, tol: float = 0.0) -> dict:
    """JSON-ready form: nonzero ``[edge_id, dir, re, im]`` entries per
    function, ``dir`` 0 for the forward orientation and 1 for the reverse."""
    functions = []
    for v in basis.functions:
        entries = [[int(o >> 1), int(o & 1), float(v[o].real), float(v[o].imag)]
                   for o in np.flatnonzero(np.abs(v) > tol)]
        functions.append({"support_edges": entries})
    return {"q": basis.q, "functions": functions}
