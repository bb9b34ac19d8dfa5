"""
Point clouds, linear uplifts and random directions on the hypersphere.

Every measure handled by this package is an empirical measure with uniform
weights ``1/n`` over the rows of an ``(n, d)`` array. The weights are never
stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DimensionError",
    "PointCloud",
    "DirectionSet",
    "ProjectedCloud",
    "as_cloud",
    "make_rng",
    "pad_frame",
    "pad_uplift",
    "apply_frame",
    "project",
    "sample_directions",
]

_UNIT_TOL = 1e-9


class DimensionError(ValueError):
    """Raised when array shapes or dimensions are incompatible."""


def _frozen(a):
    a = np.array(a, dtype=np.float64, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Uniformly weighted empirical measure on R^d.

    Parameters
    ----------
    points : array-like, shape (n, d)
        Support points. A 1D array is read as ``n`` points in R^1.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DimensionError(f"points must have shape (n>=1, d>=1), got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        object.__setattr__(self, "points", _frozen(pts))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.n


def as_cloud(x) -> PointCloud:
    """Return ``x`` unchanged if it is a PointCloud, wrap it otherwise."""
    return x if isinstance(x, PointCloud) else PointCloud(x)


@dataclass(frozen=True, eq=False)
class DirectionSet:
    """``L`` unit vectors of R^q stored row-wise."""

    directions: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        dirs = np.asarray(self.directions, dtype=np.float64)
        if dirs.ndim != 2 or dirs.shape[0] < 1 or dirs.shape[1] < 1:
            raise DimensionError(f"directions must have shape (L>=1, q>=1), got {dirs.shape}")
        norms = np.linalg.norm(dirs, axis=1)
        if np.any(np.abs(norms - 1.0) > _UNIT_TOL):
            raise ValueError("every direction must have unit norm")
        object.__setattr__(self, "directions", _frozen(dirs))

    @property
    def L(self) -> int:
        return self.directions.shape[0]

    @property
    def q(self) -> int:
        return self.directions.shape[1]

    def rotated(self, Q) -> "DirectionSet":
        """Directions ``{Q^T theta}``; pairs with rotating the clouds by ``Q``."""
        Q = np.asarray(Q, dtype=np.float64)
        return DirectionSet(self.directions @ Q, seed=self.seed)


@dataclass(frozen=True, eq=False)
class ProjectedCloud:
    """Values ``<x_i, theta>`` of a cloud projected on one direction."""

    values: np.ndarray
    sorted_flag: bool = False

    def __post_init__(self):
        vals = _frozen(np.ravel(self.values))
        if self.sorted_flag and np.any(np.diff(vals) < 0):
            raise ValueError("sorted_flag set but values are not nondecreasing")
        object.__setattr__(self, "values", vals)


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator; the stream for a given integer seed is fixed by NumPy's
    documented PCG64 + SeedSequence algorithms and is platform independent."""
    return np.random.Generator(np.random.PCG64(seed))


def pad_frame(p: int, q: int) -> np.ndarray:
    """Matrix of the zero-padding uplift R^p -> R^q (first ``p`` columns of I_q)."""
    if q < p:
        raise DimensionError(f"cannot uplift dimension {p} into {q}")
    return np.eye(q, p)


def pad_uplift(cloud, q: int) -> PointCloud:
    """Append ``q - p`` zero coordinates to every point."""
    cloud = as_cloud(cloud)
    p = cloud.d
    if q < p:
        raise DimensionError(f"cannot uplift dimension {p} into {q}")
    out = np.zeros((cloud.n, q))
    out[:, :p] = cloud.points
    return PointCloud(out)


def apply_frame(cloud, frame) -> PointCloud:
    """Push ``cloud`` forward through the linear map ``x -> frame @ x``.

    ``frame`` may be a :class:`~slicedgw.risgw.StiefelFrame` or any ``(q, p)``
    array; orthonormality is not required here.
    """
    cloud = as_cloud(cloud)
    F = np.asarray(getattr(frame, "matrix", frame), dtype=np.float64)
    if F.ndim != 2 or F.shape[1] != cloud.d:
        raise DimensionError(
            f"frame of shape {F.shape} cannot act on points of dimension {cloud.d}"
        )
    return PointCloud(cloud.points @ F.T)


def project(cloud, direction, sort: bool = False) -> ProjectedCloud:
    """Inner products of every point with a unit ``direction``."""
    cloud = as_cloud(cloud)
    theta = np.asarray(direction, dtype=np.float64).ravel()
    if theta.shape[0] != cloud.d:
        raise DimensionError(f"direction of length {theta.shape[0]} for dimension {cloud.d}")
    if abs(np.linalg.norm(theta) - 1.0) > _UNIT_TOL:
        raise ValueError("direction must have unit norm")
    vals = cloud.points @ theta
    if sort:
        vals = np.sort(vals, kind="stable")
    return ProjectedCloud(vals, sorted_flag=sort)


def sample_directions(L: int, q: int, seed: int = 0) -> DirectionSet:
    """Draw ``L`` directions uniformly on S^{q-1}.

    Each row is a vector of ``q`` standard normals from ``make_rng(seed)``
    divided by its norm; rows with norm below 1e-12 are redrawn in order.
    """
    if L < 1 or q < 1:
        raise ValueError("L and q must be positive")
    rng = make_rng(seed)
    dirs = rng.standard_normal((L, q))
    norms = np.linalg.norm(dirs, axis=1)
    for i in np.flatnonzero(norms < 1e-12):
        while norms[i] < 1e-12:
            dirs[i] = rng.standard_normal(q)
            norms[i] = np.linalg.norm(dirs[i])
    return DirectionSet(dirs / norms[:, None], seed=seed)
