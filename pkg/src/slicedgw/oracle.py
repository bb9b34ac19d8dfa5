"""
Brute-force reference solvers for small instances.

These evaluate the Gromov-Wasserstein objective directly (quadruple sum over a
coupling) and enumerate permutations exhaustively. They are slow by design and
independent of the closed-form 1D solver they are used to check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import as_cloud, make_rng

__all__ = [
    "MAX_ENUM_N",
    "Coupling",
    "CostMatrix",
    "cost_matrix",
    "gw_cost",
    "gm_objectives",
    "gm_bruteforce",
    "qap_objectives",
    "qap_bruteforce",
    "permutation_coupling",
    "sinkhorn_project",
    "coupling_search",
]

MAX_ENUM_N = 9
_MARGINAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Coupling:
    """Transport plan with uniform marginals ``1/n`` (rows) and ``1/m`` (columns)."""

    matrix: np.ndarray

    def __post_init__(self):
        P = np.array(self.matrix, dtype=np.float64)
        if P.ndim != 2:
            raise ValueError("coupling must be a matrix")
        n, m = P.shape
        if np.any(P < 0):
            raise ValueError("coupling has negative entries")
        if (np.abs(P.sum(1) - 1 / n).max() > _MARGINAL_TOL
                or np.abs(P.sum(0) - 1 / m).max() > _MARGINAL_TOL):
            raise ValueError("coupling marginals are not uniform")
        object.__setattr__(self, "matrix", P)


@dataclass(frozen=True, eq=False)
class CostMatrix:
    """Pairwise squared Euclidean distances within one cloud."""

    matrix: np.ndarray


def cost_matrix(cloud) -> CostMatrix:
    X = as_cloud(cloud).points
    D = ((X[:, None, :] - X[None, :, :]) ** 2).sum(-1)
    return CostMatrix(D)


def gw_cost(pi, cx, cy) -> float:
    """``sum_{i,j,k,l} (cx[i,k] - cy[j,l])^2 pi[i,j] pi[k,l]``, evaluated term by term."""
    P = pi.matrix if isinstance(pi, Coupling) else Coupling(pi).matrix
    A = getattr(cx, "matrix", cx)
    B = getattr(cy, "matrix", cy)
    n, m = P.shape
    if A.shape != (n, n) or B.shape != (m, m):
        raise ValueError("cost matrices do not match the coupling shape")
    # axes (i, j, k, l)
    diff = (A[:, None, :, None] - B[None, :, None, :]) ** 2
    return float(np.einsum("ijkl,ij,kl->", diff, P, P))


def _check_small(xs, ys):
    xs = np.asarray(xs, dtype=np.float64).ravel()
    ys = np.asarray(ys, dtype=np.float64).ravel()
    if xs.shape != ys.shape:
        raise ValueError("length mismatch")
    if xs.size > MAX_ENUM_N:
        raise ValueError(f"enumeration limited to n <= {MAX_ENUM_N}, got {xs.size}")
    return xs, ys


def _all_perms(n):
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


def _over_perms(perms, f, B, chunk=40320):
    out = np.empty(len(perms))
    for s in range(0, len(perms), chunk):
        P = perms[s:s + chunk]
        # B permuted on both axes for each sigma: B[s(i), s(j)]
        out[s:s + chunk] = f(B[P[:, :, None], P[:, None, :]])
    return out


def gm_objectives(xs, ys):
    """Every permutation of ``range(n)`` (lexicographic order) with its
    Gromov-Monge objective ``1/n^2 sum_{i,j} ((x_i-x_j)^2 - (y_s(i)-y_s(j))^2)^2``."""
    xs, ys = _check_small(xs, ys)
    n = xs.size
    perms = _all_perms(n)
    A = (xs[:, None] - xs[None, :]) ** 2
    B = (ys[:, None] - ys[None, :]) ** 2
    vals = _over_perms(perms, lambda Bp: ((A[None] - Bp) ** 2).sum(axis=(1, 2)) / n**2, B)
    return perms, vals


def gm_bruteforce(xs, ys):
    """Minimum of the Gromov-Monge objective over all ``n!`` permutations.

    Returns ``(cost, perm)``; on ties the lexicographically smallest permutation.
    """
    perms, vals = gm_objectives(xs, ys)
    k = int(np.argmin(vals))
    return float(vals[k]), tuple(int(i) for i in perms[k])


def qap_objectives(xs, ys):
    """Every permutation with ``Z(s) = sum_{i,j} (x_i-x_j)^2 (y_s(i)-y_s(j))^2``."""
    xs, ys = _check_small(xs, ys)
    perms = _all_perms(xs.size)
    A = (xs[:, None] - xs[None, :]) ** 2
    B = (ys[:, None] - ys[None, :]) ** 2
    return perms, _over_perms(perms, lambda Bp: (A[None] * Bp).sum(axis=(1, 2)), B)


def qap_bruteforce(xs, ys):
    """Maximum of ``Z`` over all permutations, returned as ``(value, perm)``."""
    perms, vals = qap_objectives(xs, ys)
    k = int(np.argmax(vals))
    return float(vals[k]), tuple(int(i) for i in perms[k])


def permutation_coupling(perm) -> np.ndarray:
    perm = np.asarray(perm)
    n = perm.size
    P = np.zeros((n, n))
    P[np.arange(n), perm] = 1.0 / n
    return P


def sinkhorn_project(K, tol=1e-10, max_iter=10_000) -> np.ndarray:
    """Alternate row and column normalization of a positive square matrix until
    it is doubly stochastic to ``tol``; returns the result scaled by ``1/n``."""
    P = np.array(K, dtype=np.float64)
    n = P.shape[0]
    for _ in range(max_iter):
        P /= P.sum(1, keepdims=True)
        P /= P.sum(0, keepdims=True)
        if np.abs(P.sum(1) - 1).max() < tol:
            break
    return P / n


def coupling_search(xs, ys, trials: int = 2000, seed: int = 0) -> float:
    """
    Smallest GW objective found over a random sample of couplings.

    The sample always contains the ``n!`` permutation couplings; each trial
    then adds one random Sinkhorn-normalized matrix ``exp(G)`` with Gaussian
    ``G`` and one random convex combination of permutation couplings.
    """
    xs, ys = np.asarray(xs, float).ravel(), np.asarray(ys, float).ravel()
    n = xs.size
    if n > 6:
        raise ValueError("coupling_search is limited to n <= 6")
    cx = (xs[:, None] - xs[None, :]) ** 2
    cy = (ys[:, None] - ys[None, :]) ** 2
    perms = _all_perms(n)
    perm_couplings = [permutation_coupling(s) for s in perms]
    best = min(gw_cost(P, cx, cy) for P in perm_couplings)
    rng = make_rng(seed)
    for _ in range(trials):
        P = sinkhorn_project(np.exp(rng.standard_normal((n, n))))
        best = min(best, gw_cost(P, cx, cy))
        k = int(rng.integers(2, min(len(perms), 4) + 1)) if len(perms) > 1 else 1
        idx = rng.choice(len(perms), size=k, replace=False)
        weights = rng.dirichlet(np.ones(k))
        P = sum(w * perm_couplings[i] for w, i in zip(weights, idx))
        best = min(best, gw_cost(P, cx, cy))
    return float(best)
