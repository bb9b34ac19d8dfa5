"""Orthonormal frames: the Stiefel manifold V_p(R^q) of q x p matrices with Δ^T Δ = I_p."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DimensionError, make_rng, pad_frame

__all__ = ["StiefelFrame", "retract", "tangent_projection", "initial_frame", "random_frame"]

ORTHO_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class StiefelFrame:
    matrix: np.ndarray

    def __post_init__(self):
        M = np.array(self.matrix, dtype=np.float64, copy=True)
        if M.ndim == 1:
            M = M[:, None]
        if M.ndim != 2 or M.shape[0] < M.shape[1]:
            raise DimensionError(f"frame must be q x p with q >= p, got {M.shape}")
        err = np.abs(M.T @ M - np.eye(M.shape[1])).max()
        if err > ORTHO_TOL:
            raise ValueError(f"columns are not orthonormal (max deviation {err:.3e})")
        M.flags.writeable = False
        object.__setattr__(self, "matrix", M)

    @property
    def q(self) -> int:
        return self.matrix.shape[0]

    @property
    def p(self) -> int:
        return self.matrix.shape[1]


def retract(M) -> StiefelFrame:
    """QR retraction: the Q factor of ``M`` with R's diagonal made positive.

    Raises ``ValueError`` when the columns of ``M`` are (numerically) linearly
    dependent.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] < M.shape[1]:
        raise DimensionError(f"cannot retract a matrix of shape {M.shape}")
    Q, R = np.linalg.qr(M)
    d = np.diag(R)
    scale = max(np.abs(M).max(), np.finfo(float).tiny)
    if np.any(np.abs(d) <= 1e-12 * scale * max(M.shape)):
        raise ValueError("rank-deficient matrix cannot be retracted onto the Stiefel manifold")
    Q = Q * np.where(d < 0, -1.0, 1.0)
    return StiefelFrame(Q)


def tangent_projection(frame, G) -> np.ndarray:
    """Project a Euclidean gradient onto the tangent space at ``frame``:
    ``G - Δ sym(Δ^T G)``."""
    D = np.asarray(getattr(frame, "matrix", frame))
    DtG = D.T @ G
    return G - D @ (0.5 * (DtG + DtG.T))


def initial_frame(p: int, q: int) -> StiefelFrame:
    """Zero-padding uplift, the identity when ``p == q``."""
    return StiefelFrame(pad_frame(p, q))


def random_frame(p: int, q: int, rng) -> StiefelFrame:
    """Haar-distributed frame from the QR of a Gaussian matrix."""
    rng = rng if isinstance(rng, np.random.Generator) else make_rng(rng)
    return retract(rng.standard_normal((q, p)))
