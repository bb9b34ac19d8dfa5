"""Classical (Torgerson) multidimensional scaling with a cyclic Jacobi eigensolver."""

import numpy as np

__all__ = ["jacobi_eigh", "classical_mds"]


def jacobi_eigh(A, tol=1e-10, max_sweeps=100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * ||A||_F``.

    Returns
    -------
    w : ndarray, shape (n,)
        Eigenvalues in descending order.
    V : ndarray, shape (n, n)
        Matching unit eigenvectors as columns.
    """
    A = np.array(A, dtype=np.float64)
    n = A.shape[0]
    if A.shape != (n, n) or not np.allclose(A, A.T, rtol=0, atol=1e-12 * max(1, np.abs(A).max())):
        raise ValueError("jacobi_eigh needs a symmetric matrix")
    V = np.eye(n)
    scale = np.linalg.norm(A)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                diff = A[q, q] - A[p, p]
                if abs(apq) < 1e-150 * abs(diff):
                    # rotation angle underflows; tau**2 would overflow
                    t = apq / diff
                else:
                    tau = diff / (2 * apq)
                    t = np.sign(tau) / (abs(tau) + np.sqrt(1 + tau * tau)) if tau != 0 else 1.0
                c = 1 / np.sqrt(1 + t * t)
                s = t * c
                # A <- J^T A J with J the (p, q) Givens rotation
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def classical_mds(D, k=2):
    """Embed ``n`` objects in R^k from a symmetric dissimilarity matrix ``D``.

    ``B = -1/2 J D^2 J`` with ``J`` the centering matrix; coordinates are the
    top ``k`` eigenvectors of ``B`` scaled by the square roots of their
    eigenvalues, negative eigenvalues clamped to zero.
    """
    D = np.asarray(D, dtype=np.float64)
    n = D.shape[0]
    J = np.eye(n) - 1.0 / n
    B = -0.5 * J @ (D**2) @ J
    B = 0.5 * (B + B.T)
    w, V = jacobi_eigh(B)
    w = np.maximum(w[:k], 0.0)
    coords = V[:, :k] * np.sqrt(w)
    if coords.shape[1] < k:
        coords = np.hstack([coords, np.zeros((n, k - coords.shape[1]))])
    return coords
