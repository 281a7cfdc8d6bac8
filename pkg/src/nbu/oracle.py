"""Dense linear-algebra ground truth for small graphs.

Everything here forms explicit matrices and uses Gaussian elimination with
full pivoting over complex scalars.  It exists to check the combinatorial
code, not to be fast.
"""

from __future__ import annotations

import cmath
from typing import NamedTuple

import numpy as np

from .graph import Multigraph, subdivide
from .multiplicity import candidate_orders
from .nb_operator import DEFAULT_TOL, DenseCapError, build_nb_matrix, dense_cap


class RankResult(NamedTuple):
    nullity: int
    rank: int
    min_pivot: float
    threshold: float
    marginal: bool


def _full_pivot(M: np.ndarray, threshold: float):
    """Eliminate ``M`` in place; returns (pivots, swap parity, largest rejected)."""
    M = np.array(M, dtype=complex)
    size = M.shape[0]
    pivots = []
    parity = 0
    rejected = 0.0
    for k in range(size):
        sub = np.abs(M[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        best = sub[i, j]
        if best <= threshold:
            rejected = float(best)
            break
        i += k
        j += k
        if i != k:
            M[[k, i], :] = M[[i, k], :]
            parity ^= 1
        if j != k:
            M[:, [k, j]] = M[:, [j, k]]
            parity ^= 1
        p = M[k, k]
        pivots.append(p)
        if k + 1 < size:
            factors = M[k + 1:, k] / p
            M[k + 1:, k:] -= np.outer(factors, M[k, k:])
    return pivots, parity, rejected


def rank_nullity(M: np.ndarray, rel_tol: float = DEFAULT_TOL,
                 scale: float | None = None) -> RankResult:
    """Numerical rank of a square matrix by full-pivot elimination.

    Pivots at or below ``rel_tol * size * scale`` count as zero, where
    ``scale`` defaults to ``max|M|``.
    """
    M = np.asarray(M, dtype=complex)
    size = M.shape[0]
    if size == 0:
        return RankResult(0, 0, float("inf"), 0.0, False)
    if scale is None:
        scale = float(np.abs(M).max())
    threshold = rel_tol * size * scale
    pivots, _, rejected = _full_pivot(M, threshold)
    rank = len(pivots)
    min_pivot = min((abs(p) for p in pivots), default=float("inf"))
    marginal = min_pivot < 10 * threshold or rejected > threshold / 10
    return RankResult(size - rank, rank, min_pivot, threshold, marginal)


def determinant(M: np.ndarray) -> complex:
    """Determinant by full-pivot elimination."""
    M = np.asarray(M, dtype=complex)
    if M.shape[0] == 0:
        return 1.0 + 0j
    pivots, parity, _ = _full_pivot(M, 0.0)
    if len(pivots) < M.shape[0]:
        return 0j
    det = complex(np.prod(pivots))
    return -det if parity else det


def primitive_root(q: int, j: int = 1) -> complex:
    return cmath.exp(2j * cmath.pi * j / q)


def gm_dense(g: Multigraph, lam: complex, rel_tol: float = DEFAULT_TOL,
             cap: int | None = None) -> RankResult:
    """Nullity of ``B - lam I``."""
    B = build_nb_matrix(g, cap).astype(complex)
    # entries of B and lam*I are the natural scale, even when B - lam*I ~ 0
    return rank_nullity(B - lam * np.eye(2 * g.m), rel_tol, max(1.0, abs(lam)))


def _check_cap(size: int, cap: int | None) -> None:
    if size > dense_cap(cap):
        raise DenseCapError(f"matrix size {size} exceeds the dense cap {dense_cap(cap)}")


def adjacency_matrix(g: Multigraph) -> np.ndarray:
    """Adjacency counts; a self-loop adds 2 to its diagonal entry."""
    A = np.zeros((g.n, g.n))
    for a, b in g.edges:
        A[a, b] += 1
        A[b, a] += 1
    return A


def ihara_determinants(g: Multigraph, t: complex,
                       cap: int | None = None) -> tuple[complex, complex]:
    """Both sides of the Ihara determinant identity at ``t``."""
    _check_cap(2 * g.m, cap)
    B = build_nb_matrix(g, cap)
    lhs = determinant(np.eye(2 * g.m) - t * B)
    A = adjacency_matrix(g)
    D = np.diag(np.asarray(g.degrees, dtype=float))
    I = np.eye(g.n)
    rhs = (1 - t * t) ** (g.m - g.n) * determinant(I - t * A + t * t * (D - I))
    return lhs, rhs


def ihara_residual(g: Multigraph, t: complex, cap: int | None = None) -> float:
    lhs, rhs = ihara_determinants(g, t, cap)
    return abs(lhs - rhs)


def subdivision_charpoly_sides(g: Multigraph, r: int, t: complex,
                               cap: int | None = None) -> tuple[complex, complex]:
    """``det(tI - B_H)`` and ``det(t^r I - B_G)`` for ``H`` the ``r``-subdivision."""
    h = subdivide(g, r).graph
    _check_cap(2 * h.m, cap)
    BH = build_nb_matrix(h, cap)
    BG = build_nb_matrix(g, cap)
    lhs = determinant(t * np.eye(2 * h.m) - BH)
    rhs = determinant(t ** r * np.eye(2 * g.m) - BG)
    return lhs, rhs


def subdivision_charpoly_residual(g: Multigraph, r: int, t: complex,
                                  cap: int | None = None) -> float:
    lhs, rhs = subdivision_charpoly_sides(g, r, t, cap)
    return abs(lhs - rhs)


def brute_spectrum(g: Multigraph, max_order: int | None = None,
                   rel_tol: float = DEFAULT_TOL,
                   cap: int | None = None) -> list[tuple[int, int]]:
    """Non-zero nullities of ``B - exp(2 pi i / q) I`` over candidate orders.

    With ``max_order`` every order ``1..max_order`` is scanned as well.
    """
    B = build_nb_matrix(g, cap).astype(complex)
    I = np.eye(2 * g.m)
    orders = set(candidate_orders(g))
    if max_order:
        orders.update(range(1, max_order + 1))
    out = []
    for q in sorted(orders):
        nullity = rank_nullity(B - primitive_root(q) * I, rel_tol, 1.0).nullity
        if nullity:
            out.append((q, nullity))
    return out
