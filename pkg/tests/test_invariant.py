import numpy as np
import pytest

from slicedgw.core import sample_directions
from slicedgw.experiments import make_spiral, rotation_matrix
from slicedgw.invariant import (
    RisgwConfig,
    compute_assignments,
    euclidean_gradient,
    fixed_assignment_objective,
    riemannian_gradient,
    risgw,
    risw,
)
from slicedgw.sliced import sgw, sw_delta
from slicedgw.stiefel import StiefelFrame, random_frame, retract, tangent_projection


def rand_orth(q, rng):
    Q, R = np.linalg.qr(rng.standard_normal((q, q)))
    return Q * np.sign(np.diag(R))


def central_differences(f, M, h=1e-5):
    G = np.zeros_like(M)
    for idx in np.ndindex(M.shape):
        E = np.zeros_like(M)
        E[idx] = h
        G[idx] = (f(M + E) - f(M - E)) / (2 * h)
    return G


def test_retract():
    rng = np.random.default_rng(0)
    F = random_frame(2, 3, rng)
    np.testing.assert_allclose(retract(F.matrix).matrix, F.matrix, atol=1e-12)
    np.testing.assert_allclose(retract(2 * np.eye(3)).matrix, np.eye(3), atol=1e-15)
    R = retract(rng.normal(size=(3, 2))).matrix
    np.testing.assert_allclose(R.T @ R, np.eye(2), atol=1e-12)
    with pytest.raises(ValueError):
        retract([[1.0, 2.0], [2.0, 4.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        StiefelFrame([[1.0, 1.0], [0.0, 1.0]])


def test_tangent_projection_is_tangent():
    rng = np.random.default_rng(1)
    F = random_frame(2, 4, rng).matrix
    T = tangent_projection(F, rng.normal(size=(4, 2)))
    # tangent vectors satisfy F^T T + T^T F = 0
    np.testing.assert_allclose(F.T @ T + T.T @ F, 0, atol=1e-12)


@pytest.mark.parametrize("metric", ["gw", "w"])
def test_gradient_matches_finite_differences(metric):
    rng = np.random.default_rng(2)
    for _ in range(10):
        mu, nu = rng.normal(size=(6, 2)), rng.normal(size=(6, 3))
        D = random_frame(2, 3, rng)
        dirs = sample_directions(3, 3, int(rng.integers(1 << 30)))
        asg = compute_assignments(mu, nu, D, dirs, metric)
        G = euclidean_gradient(mu, nu, D, dirs, asg, metric)
        fd = central_differences(
            lambda M: fixed_assignment_objective(mu, nu, M, dirs, asg, metric), D.matrix
        )
        assert np.abs(G - fd).max() <= 1e-5 * (1 + np.linalg.norm(G))


def test_gradient_zero_cases():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(15, 2))
    dirs = sample_directions(8, 2, 0)
    np.testing.assert_array_equal(euclidean_gradient(x, x, np.eye(2), dirs), 0.0)
    # exact rotation: R itself minimizes the frozen objective at value zero
    R = rotation_matrix(0.9)
    GR = riemannian_gradient(x, x @ R.T, R, dirs)
    assert np.linalg.norm(GR) < 1e-6


def test_risgw_self_is_zero():
    x = np.random.default_rng(4).normal(size=(20, 2))
    value, tr = risgw(x, x)
    assert value == 0.0 and tr.iters == 0 and tr.converged


def test_risgw_never_above_start():
    rng = np.random.default_rng(5)
    mu, nu = rng.normal(size=(25, 2)), rng.normal(size=(25, 3))
    dirs = sample_directions(30, 3, 1)
    value, tr = risgw(mu, nu, dirs=dirs)
    assert value <= sgw(mu, nu, dirs=dirs).value
    assert np.all(np.diff(tr.objective_per_iter) <= 0)
    F = tr.final_frame.matrix
    np.testing.assert_allclose(F.T @ F, np.eye(2), atol=1e-10)


def test_zero_iterations_returns_start_value():
    rng = np.random.default_rng(6)
    mu, nu = rng.normal(size=(25, 2)), rng.normal(size=(25, 2))
    dirs = sample_directions(30, 2, 2)
    value, tr = risgw(mu, nu, dirs=dirs, cfg=RisgwConfig(max_iters=0))
    assert value == sgw(mu, nu, dirs=dirs).value
    assert tr.iters == 0


def test_algebraic_rotation_identity():
    rng = np.random.default_rng(7)
    for _ in range(5):
        mu, nu = rng.normal(size=(20, 2)), rng.normal(size=(20, 3))
        D = random_frame(2, 3, rng).matrix
        Q = rand_orth(2, rng)
        dirs = sample_directions(15, 3, 4)
        a = sgw(mu @ Q.T, nu, frame=D, dirs=dirs).value
        b = sgw(mu, nu, frame=D @ Q, dirs=dirs).value
        assert a == pytest.approx(b, abs=1e-10)


def test_risgw_flat_across_rotations():
    src = make_spiral(100, seed=1)
    tgt = make_spiral(100, seed=2)
    dirs = sample_directions(20, 2, 0)
    s, r = [], []
    for ang in (0.0, np.pi / 4, np.pi / 2):
        rot = tgt @ rotation_matrix(ang).T
        s.append(sgw(src, rot, dirs=dirs).value)
        r.append(risgw(src, rot, dirs=dirs)[0])
    assert np.ptp(r) / np.mean(r) < np.ptp(s) / np.mean(s)


def test_risw_basics():
    rng = np.random.default_rng(8)
    x = rng.normal(size=(30, 2))
    assert risw(x, x)[0] == 0.0
    y = x @ rotation_matrix(1.0).T
    dirs = sample_directions(20, 2, 0)
    value, tr = risw(x, y, dirs=dirs)
    assert value <= sw_delta(x, y, dirs=dirs).value
    assert value < 1e-3 * sw_delta(x, y, dirs=dirs).value


def test_restarts_keep_best():
    rng = np.random.default_rng(9)
    mu, nu = rng.normal(size=(20, 2)), rng.normal(size=(20, 2))
    dirs = sample_directions(20, 2, 0)
    v0, _ = risgw(mu, nu, dirs=dirs)
    v3, tr = risgw(mu, nu, dirs=dirs, cfg=RisgwConfig(restarts=3))
    assert v3 <= v0
    assert len(tr.restarts) == 4 and v3 == min(tr.restarts)


def test_deterministic():
    rng = np.random.default_rng(10)
    mu, nu = rng.normal(size=(20, 2)), rng.normal(size=(20, 3))
    a = risgw(mu, nu, L=10, seed=3)
    b = risgw(mu, nu, L=10, seed=3)
    assert a[0] == b[0]
    assert a[1].final_frame.matrix.tobytes() == b[1].final_frame.matrix.tobytes()
