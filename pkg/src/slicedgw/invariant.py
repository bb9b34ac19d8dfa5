"""
Rotation-invariant sliced discrepancies.

RISGW minimizes SGW_Δ over the frames Δ of the Stiefel manifold by Riemannian
gradient descent with a QR retraction and a backtracking line search; RISW
does the same for the sliced Wasserstein objective.

The objective is piecewise polynomial in Δ: it is smooth as long as the sort
order of every projected cloud and the identity/anti-identity choice of every
direction stay the same. The gradient is taken on the current piece with
those assignments frozen, and they are recomputed at each iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import as_cloud, make_rng
from .gw1d import solve_sorted_rows
from .sliced import DEFAULT_L, _mean, prepare, sliced_costs
from .stiefel import StiefelFrame, random_frame, retract, tangent_projection

__all__ = [
    "RisgwConfig",
    "OptTrace",
    "FixedAssignments",
    "compute_assignments",
    "fixed_assignment_objective",
    "euclidean_gradient",
    "riemannian_gradient",
    "risgw",
    "risw",
]


@dataclass(frozen=True)
class RisgwConfig:
    """Optimizer settings.

    ``step0`` is the length (Frobenius norm) of the first trial step along the
    negative Riemannian gradient; each failed trial multiplies it by
    ``backtrack_factor``. ``restarts`` adds that many extra runs from
    Haar-random frames drawn with ``seed``.
    """

    max_iters: int = 30
    step0: float = 1.0
    backtrack_factor: float = 0.5
    rel_tol: float = 1e-6
    max_backtracks: int = 20
    restarts: int = 0
    seed: int = 0


@dataclass(frozen=True, eq=False)
class OptTrace:
    objective_per_iter: np.ndarray
    final_frame: StiefelFrame
    iters: int
    converged: bool
    restarts: list = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class FixedAssignments:
    """Per direction: sort order of both projected clouds and the matching."""

    order_u: np.ndarray
    order_v: np.ndarray
    anti: np.ndarray


def compute_assignments(mu, nu, frame, dirs, metric="gw") -> FixedAssignments:
    X, Y, frame, dirs = prepare(mu, nu, frame, dirs)
    T = dirs.directions
    U = T @ X.T
    V = T @ Y.T
    order_u = np.argsort(U, axis=1, kind="stable")
    order_v = np.argsort(V, axis=1, kind="stable")
    if metric == "gw":
        Us = np.take_along_axis(U, order_u, axis=1)
        Vs = np.take_along_axis(V, order_v, axis=1)
        anti = solve_sorted_rows(Us, Vs)[1]
    else:
        anti = np.zeros(T.shape[0], dtype=bool)
    return FixedAssignments(order_u, order_v, anti)


def _paired(U, V, asg):
    """Sorted-position arrays ``u`` and partner ``w`` under frozen assignments."""
    u = np.take_along_axis(U, asg.order_u, axis=1)
    w = np.take_along_axis(V, asg.order_v, axis=1)
    w = np.where(asg.anti[:, None], w[:, ::-1], w)
    return u, w


def fixed_assignment_objective(mu, nu, frame_matrix, dirs, asg, metric="gw") -> float:
    """Objective on the piece selected by ``asg``, evaluated at any ``q x p``
    matrix (orthonormal or not) by the direct double sum."""
    mu, nu = as_cloud(mu), as_cloud(nu)
    F = np.asarray(frame_matrix, dtype=np.float64)
    T = np.asarray(getattr(dirs, "directions", dirs))
    U = T @ (mu.points @ F.T).T
    V = T @ nu.points.T
    u, w = _paired(U, V, asg)
    n = u.shape[1]
    if metric == "w":
        return float(((u - w) ** 2).mean(axis=1).mean())
    du = (u[:, :, None] - u[:, None, :]) ** 2
    dw = (w[:, :, None] - w[:, None, :]) ** 2
    return float(((du - dw) ** 2).sum(axis=(1, 2)).mean() / n**2)


def _grad_wrt_projections(u, w, metric):
    n = u.shape[1]
    if metric == "w":
        return 2.0 / n * (u - w)
    # identical matched rows sit at a zero of the objective
    same = np.all(u == w, axis=1, keepdims=True)
    u = u - u.mean(axis=1, keepdims=True)
    w = w - w.mean(axis=1, keepdims=True)
    s1u = u.sum(1, keepdims=True)
    s2u = (u * u).sum(1, keepdims=True)
    s3u = (u**3).sum(1, keepdims=True)
    s1w = w.sum(1, keepdims=True)
    s2w = (w * w).sum(1, keepdims=True)
    swu = (w * u).sum(1, keepdims=True)
    sw2u = (w * w * u).sum(1, keepdims=True)
    # sum_k (u_i - u_k)^3
    a = n * u**3 - 3 * u**2 * s1u + 3 * u * s2u - s3u
    # sum_k (w_i - w_k)^2 (u_i - u_k)
    b = n * w**2 * u - w**2 * s1u - 2 * w * u * s1w + 2 * w * swu + u * s2w - sw2u
    return np.where(same, 0.0, 8.0 / n**2 * (a - b))


def euclidean_gradient(mu, nu, frame, dirs, fixed_assignments=None, metric="gw") -> np.ndarray:
    """
    Gradient in Δ of the frozen-assignment objective.

    Parameters
    ----------
    mu, nu : point clouds of dimensions p <= q
    frame : StiefelFrame or array, shape (q, p)
    dirs : DirectionSet
    fixed_assignments : FixedAssignments, optional
        Computed at ``frame`` when omitted.
    metric : {"gw", "w"}

    Returns
    -------
    ndarray, shape (q, p)
    """
    mu, nu = as_cloud(mu), as_cloud(nu)
    F = np.asarray(getattr(frame, "matrix", frame), dtype=np.float64)
    if fixed_assignments is None:
        fixed_assignments = compute_assignments(mu, nu, frame, dirs, metric)
    T = np.asarray(getattr(dirs, "directions", dirs))
    X0 = mu.points
    U = T @ (X0 @ F.T).T
    V = T @ nu.points.T
    u, w = _paired(U, V, fixed_assignments)
    gs = _grad_wrt_projections(u, w, metric)
    g = np.empty_like(gs)
    np.put_along_axis(g, fixed_assignments.order_u, gs, axis=1)
    return T.T @ (g @ X0) / T.shape[0]


def riemannian_gradient(mu, nu, frame, dirs, fixed_assignments=None, metric="gw"):
    G = euclidean_gradient(mu, nu, frame, dirs, fixed_assignments, metric)
    return tangent_projection(frame, G)


def _descend(metric, mu, nu, X0, Y, dirs, frame, cfg):
    thetas = dirs.directions

    def objective(fr):
        return _mean(sliced_costs(X0 @ fr.matrix.T, Y, thetas, metric))

    f = objective(frame)
    history = [f]
    converged = f == 0.0
    for _ in range(cfg.max_iters):
        if converged:
            break
        GR = riemannian_gradient(mu, nu, frame, dirs, metric=metric)
        if not np.all(np.isfinite(GR)):
            raise FloatingPointError("non-finite gradient")
        gnorm = np.linalg.norm(GR)
        if gnorm == 0.0:
            converged = True
            break
        eta = cfg.step0 / gnorm
        accepted = None
        for _ in range(cfg.max_backtracks + 1):
            cand = retract(frame.matrix - eta * GR)
            fc = objective(cand)
            if accepted is not None and fc >= accepted[1]:
                break
            if fc < f:
                accepted = (cand, fc)
            eta *= cfg.backtrack_factor
        if accepted is None:
            # no decrease down to the smallest trial step: stationary at this resolution
            converged = True
            break
        rel = (f - accepted[1]) / f
        frame, f = accepted
        history.append(f)
        if rel < cfg.rel_tol or f == 0.0:
            converged = True
    return OptTrace(np.array(history), frame, len(history) - 1, converged)


def _minimize(metric, mu, nu, dirs, cfg, L, seed):
    cfg = cfg or RisgwConfig()
    mu, nu = as_cloud(mu), as_cloud(nu)
    X, Y, frame0, dirs = prepare(mu, nu, None, dirs, L, seed)
    starts = [frame0]
    rng = make_rng(cfg.seed)
    starts += [random_frame(mu.d, nu.d, rng) for _ in range(cfg.restarts)]
    traces = [_descend(metric, mu, nu, mu.points, Y, dirs, fr, cfg) for fr in starts]
    best = min(range(len(traces)), key=lambda i: (traces[i].objective_per_iter[-1], i))
    tr = traces[best]
    if len(traces) > 1:
        tr = OptTrace(tr.objective_per_iter, tr.final_frame, tr.iters, tr.converged,
                      [t.objective_per_iter[-1] for t in traces])
    return float(tr.objective_per_iter[-1]), tr


def risgw(mu, nu, dirs=None, cfg: RisgwConfig | None = None, *, L=DEFAULT_L, seed=0):
    """
    Rotation-invariant SGW: ``min over frames Δ of SGW_Δ(mu, nu)``.

    Descent starts from the zero-padding frame (identity when p == q), so the
    result never exceeds ``sgw(mu, nu, dirs=dirs).value``. The direction set is
    kept fixed across iterations.

    Returns
    -------
    value : float
        Best objective reached.
    trace : OptTrace
    """
    return _minimize("gw", mu, nu, dirs, cfg, L, seed)


def risw(mu, nu, dirs=None, cfg: RisgwConfig | None = None, *, L=DEFAULT_L, seed=0):
    """Rotation-invariant sliced Wasserstein; see :func:`risgw`."""
    return _minimize("w", mu, nu, dirs, cfg, L, seed)
