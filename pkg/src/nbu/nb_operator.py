"""Oriented edges and the non-backtracking operator.

Edge functions are complex numpy arrays of length ``2m`` indexed by the
canonical oriented-edge index ``2*edge_id + (0 if forward else 1)``, so the
reversal of ``o`` is ``o ^ 1``.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

from .graph import GraphError, Multigraph

DEFAULT_DENSE_CAP = 4096
DEFAULT_TOL = 1e-9

# Incremented on every dense 2m x 2m allocation; the combinatorial code
# paths are expected to leave it untouched.
_dense_allocations = 0


def dense_allocation_count() -> int:
    return _dense_allocations


def _count_dense_allocation() -> None:
    global _dense_allocations
    _dense_allocations += 1


def dense_cap(cap: int | None = None) -> int:
    """Resolve the dense-size cap: explicit value, ``NBU_DENSE_CAP``, default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("NBU_DENSE_CAP")
    return int(env) if env else DEFAULT_DENSE_CAP


class DenseCapError(GraphError):
    pass


class OrientedEdge(NamedTuple):
    edge_id: int
    forward: bool
    source: int
    target: int

    @property
    def index(self) -> int:
        return 2 * self.edge_id + (0 if self.forward else 1)


def oriented_edges(g: Multigraph) -> tuple[list[OrientedEdge], np.ndarray]:
    """All ``2m`` oriented edges in canonical order, plus the reversal map."""
    out = []
    for e, (a, b) in enumerate(g.edges):
        out.append(OrientedEdge(e, True, a, b))
        out.append(OrientedEdge(e, False, b, a))
    return out, np.arange(2 * g.m) ^ 1


def endpoint_arrays(g: Multigraph) -> tuple[np.ndarray, np.ndarray]:
    """Source and target node of every oriented edge, as integer arrays."""
    ends = np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)
    src = np.empty(2 * g.m, dtype=np.int64)
    tgt = np.empty(2 * g.m, dtype=np.int64)
    src[0::2], src[1::2] = ends[:, 0], ends[:, 1]
    tgt[0::2], tgt[1::2] = ends[:, 1], ends[:, 0]
    return src, tgt


def build_nb_matrix(g: Multigraph, cap: int | None = None) -> np.ndarray:
    """Dense 0/1 matrix with ``B[f, e] = 1`` iff ``e`` feeds into ``f``
    without backtracking."""
    size = 2 * g.m
    if size > dense_cap(cap):
        raise DenseCapError(f"2m = {size} exceeds the dense cap {dense_cap(cap)}")
    _count_dense_allocation()
    src, tgt = endpoint_arrays(g)
    idx = np.arange(size)
    B = (src[:, None] == tgt[None, :]) & (idx[:, None] != (idx ^ 1)[None, :])
    return B.astype(np.int8)


def _check(g: Multigraph, v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.shape != (2 * g.m,):
        raise ValueError(f"edge function has shape {v.shape}, expected ({2 * g.m},)")
    return v


def _node_sums(g: Multigraph, v: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    re = np.bincount(nodes, weights=v.real, minlength=g.n)
    im = np.bincount(nodes, weights=v.imag, minlength=g.n)
    return re + 1j * im


def inflow(g: Multigraph, v) -> np.ndarray:
    """``v`` into ``k`` for every node ``k``."""
    v = _check(g, v)
    return _node_sums(g, v, endpoint_arrays(g)[1])


def outflow(g: Multigraph, v) -> np.ndarray:
    """``v`` from ``k`` for every node ``k``."""
    v = _check(g, v)
    return _node_sums(g, v, endpoint_arrays(g)[0])


def v_into(g: Multigraph, v, k: int) -> complex:
    v = _check(g, v)
    return complex(sum(v[o ^ 1] for o in g.out_edges[k]))


def v_from(g: Multigraph, v, k: int) -> complex:
    v = _check(g, v)
    return complex(sum(v[o] for o in g.out_edges[k]))


def apply_nb(g: Multigraph, v, adjoint: bool = False) -> np.ndarray:
    """Matrix-free action of ``B`` (or ``B*``) on an edge function.

    ``(Bv)[k->l] = into(k) - v[l->k]`` and ``(B*v)[k->l] = from(l) - v[l->k]``.
    """
    v = _check(g, v)
    src, tgt = endpoint_arrays(g)
    rev = v.reshape(-1, 2)[:, ::-1].reshape(-1)
    if adjoint:
        return _node_sums(g, v, src)[tgt] - rev
    return _node_sums(g, v, tgt)[src] - rev


def leaky_nodes(g: Multigraph, v, tol: float = DEFAULT_TOL) -> set[int]:
    """Nodes ``k`` with ``|(d_k - 2) into(k)| > tol * max|v|``."""
    v = _check(g, v)
    scale = np.abs(v).max(initial=0.0)
    if scale == 0:
        return set()
    deg = np.asarray(g.degrees, dtype=float)
    leak = np.abs((deg - 2) * inflow(g, v))
    return set(np.flatnonzero(leak > tol * scale).tolist())
