"""
Experiment drivers: rotated spirals, runtime scaling and pairwise distance
matrices. The CLI is a thin layer over these functions.
"""

from __future__ import annotations

import time

import numpy as np

from .core import make_rng, sample_directions
from .io import normalize_cloud, subsample
from .invariant import risgw, risw
from .sliced import sgw, sw_delta

__all__ = [
    "METRICS",
    "make_spiral",
    "rotation_matrix",
    "compute_metric",
    "default_angles",
    "spiral_study",
    "spiral_rows",
    "flatness",
    "bench",
    "loglog_slope",
    "pairwise_matrix",
]

METRICS = ("sgw", "risgw", "sw", "risw")


def make_spiral(n=100, noise=0.05, seed=0) -> np.ndarray:
    """Two-arm planar spiral.

    Parameters ``t`` are drawn i.i.d. uniform on ``[0, 4 pi]``; point ``i``
    lies on arm ``i % 2`` at radius ``t / (4 pi)`` and angle ``t + pi * arm``,
    then gets i.i.d. ``N(0, noise^2)`` jitter on both coordinates. The stream
    comes from ``make_rng(seed)``: first the ``n`` uniforms, then the ``2n``
    normals.
    """
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    t = rng.uniform(0.0, 4 * np.pi, n)
    arm = np.arange(n) % 2
    r = t / (4 * np.pi)
    ang = t + np.pi * arm
    X = np.column_stack([r * np.cos(ang), r * np.sin(ang)])
    return X + noise * rng.standard_normal((n, 2))


def rotation_matrix(angle) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def compute_metric(metric, mu, nu, dirs, cfg=None):
    """Value of ``metric`` and, for the optimized ones, the optimizer trace."""
    if metric == "sgw":
        return sgw(mu, nu, dirs=dirs).value, None
    if metric == "sw":
        return sw_delta(mu, nu, dirs=dirs).value, None
    if metric == "risgw":
        return risgw(mu, nu, dirs=dirs, cfg=cfg)
    if metric == "risw":
        return risw(mu, nu, dirs=dirs, cfg=cfg)
    raise ValueError(f"unknown metric {metric!r}; choose from {METRICS}")


def default_angles(steps=8):
    return [np.pi * k / steps for k in range(steps + 1)]


def spiral_study(n=100, L=20, angles=None, seed=0, trials=10, cfg=None,
                 metrics=("sgw", "risgw")):
    """
    SGW and RISGW between a spiral and an independently drawn, rotated spiral.

    For trial ``t`` the source uses seed ``[seed, t, 0]``, the unrotated target
    ``[seed, t, 1]`` and the directions seed ``seed + t``; the same three are
    reused for every angle.

    Returns
    -------
    angles : list of float
    values : dict metric -> ndarray, shape (len(angles), trials)
    """
    angles = default_angles() if angles is None else list(angles)
    values = {m: np.zeros((len(angles), trials)) for m in metrics}
    for t in range(trials):
        src = make_spiral(n, seed=[seed, t, 0])
        tgt = make_spiral(n, seed=[seed, t, 1])
        dirs = sample_directions(L, 2, seed + t)
        for a, ang in enumerate(angles):
            rot = tgt @ rotation_matrix(ang).T
            for m in metrics:
                values[m][a, t] = compute_metric(m, src, rot, dirs, cfg)[0]
    return angles, values


def spiral_rows(angles, values):
    """CSV rows ``angle, mean_sgw, mean_risgw, sgw_p20, sgw_p80, risgw_p20, risgw_p80``."""
    s, r = values["sgw"], values["risgw"]
    rows = []
    for a, ang in enumerate(angles):
        rows.append([
            ang, s[a].mean(), r[a].mean(),
            np.percentile(s[a], 20), np.percentile(s[a], 80),
            np.percentile(r[a], 20), np.percentile(r[a], 80),
        ])
    return rows


def flatness(curve) -> float:
    """``(max - min) / mean`` of a curve."""
    curve = np.asarray(curve)
    return float((curve.max() - curve.min()) / curve.mean())


def bench(sizes, L=50, seed=0, repeats=1, n_jobs=1):
    """Wall-clock of :func:`sgw` on i.i.d. Gaussian 2D clouds.

    The timed region covers direction sampling, projection, sorting and the
    cost; cloud generation is excluded. With ``repeats > 1`` the fastest run
    is kept.

    Returns a list of ``(n, milliseconds, value)``.
    """
    rows = []
    for n in sizes:
        rng = make_rng([seed, int(n)])
        X = rng.standard_normal((n, 2))
        Y = rng.standard_normal((n, 2))
        best = np.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            value = sgw(X, Y, L=L, seed=seed, n_jobs=n_jobs).value
            best = min(best, time.perf_counter() - t0)
        rows.append((int(n), best * 1e3, value))
    return rows


def loglog_slope(ns, times) -> float:
    return float(np.polyfit(np.log(ns), np.log(times), 1)[0])


def pairwise_matrix(clouds, metric="sgw", L=50, seed=0, n=None, normalize=True, cfg=None):
    """
    Symmetric matrix of ``metric`` between every pair of clouds.

    Every cloud is subsampled to a common size (``n`` or the smallest cloud;
    cloud ``k`` uses seed ``[seed, k]``) and optionally normalized. Each
    unordered pair is computed once, with the lower-dimensional cloud as the
    source.
    """
    k = len(clouds)
    if k < 2:
        raise ValueError("need at least two clouds")
    m = min(len(c) for c in clouds) if n is None else n
    prepared = []
    for i, c in enumerate(clouds):
        c = subsample(c, m, [seed, i])
        prepared.append(normalize_cloud(c) if normalize else np.asarray(c, dtype=np.float64))
    q = max(c.shape[1] for c in prepared)
    dirs = sample_directions(L, q, seed)
    D = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            a, b = prepared[i], prepared[j]
            if a.shape[1] > b.shape[1]:
                a, b = b, a
            # directions live in the target's dimension
            d = dirs if b.shape[1] == q else sample_directions(L, b.shape[1], seed)
            D[i, j] = D[j, i] = compute_metric(metric, a, b, d, cfg)[0]
    return D
