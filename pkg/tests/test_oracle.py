import itertools

import numpy as np
import pytest

from slicedgw.gw1d import Kind, solve_gw1d
from slicedgw.oracle import (
    Coupling,
    coupling_search,
    cost_matrix,
    gm_bruteforce,
    gm_objectives,
    gw_cost,
    permutation_coupling,
    qap_bruteforce,
    qap_objectives,
    sinkhorn_project,
)


def test_cost_matrix_examples():
    np.testing.assert_array_equal(cost_matrix([[0.0, 0.0], [3.0, 4.0]]).matrix, [[0, 25], [25, 0]])
    np.testing.assert_array_equal(cost_matrix([[1.0, 2.0]]).matrix, [[0]])
    X = np.random.default_rng(0).normal(size=(5, 3))
    sq = (X**2).sum(1)
    expanded = sq[:, None] + sq[None, :] - 2 * X @ X.T
    D = cost_matrix(X).matrix
    np.testing.assert_allclose(D, expanded, atol=1e-10)
    assert np.all(np.diag(D) == 0) and np.allclose(D, D.T, atol=1e-12)


def test_gw_cost_examples():
    cx = cost_matrix([0.0, 1.0])
    assert gw_cost(np.eye(3) / 3, cost_matrix([0.0, 1.0, 5.0]), cost_matrix([0.0, 1.0, 5.0])) == 0.0
    # 16 terms; only (i,k) = (0,1), (1,0) with matching (j,l) survive: 2 * (1 - 4)^2 / 4
    assert gw_cost(np.diag([0.5, 0.5]), cx, cost_matrix([0.0, 2.0])) == pytest.approx(4.5)
    P = sinkhorn_project(np.exp(np.random.default_rng(1).normal(size=(4, 4))))
    assert gw_cost(P, np.zeros((4, 4)), np.zeros((4, 4))) == 0.0
    with pytest.raises(ValueError):
        gw_cost(np.eye(2), cx, cx)


def test_coupling_validation():
    with pytest.raises(ValueError):
        Coupling([[0.5, 0.0], [0.0, 0.6]])
    with pytest.raises(ValueError):
        Coupling([[0.75, -0.25], [-0.25, 0.75]])
    P = sinkhorn_project(np.exp(np.random.default_rng(2).normal(size=(5, 5))))
    Coupling(P)


def test_permutation_coupling_links_gw_and_gm():
    rng = np.random.default_rng(3)
    x, y = rng.normal(size=5), rng.normal(size=5)
    perms, vals = gm_objectives(x, y)
    cx, cy = cost_matrix(x), cost_matrix(y)
    for s, v in zip(perms[::17], vals[::17]):
        assert gw_cost(permutation_coupling(s), cx, cy) == pytest.approx(v, rel=1e-9, abs=1e-12)


def test_gm_bruteforce_examples():
    x = [0.3, 0.1, 0.7]
    assert gm_bruteforce(x, x) == (0.0, (0, 1, 2))
    with pytest.raises(ValueError):
        gm_bruteforce(np.arange(10.0), np.arange(10.0))
    rng = np.random.default_rng(4)
    x, y = rng.normal(size=6), rng.normal(size=6)
    base = gm_bruteforce(x, y)[0]
    assert gm_bruteforce(rng.permutation(x), y)[0] == pytest.approx(base, rel=1e-12)


def test_argmin_contains_id_or_anti():
    rng = np.random.default_rng(5)
    for _ in range(100):
        n = int(rng.integers(2, 8))
        x, y = np.sort(rng.uniform(size=n)), np.sort(rng.uniform(size=n))
        perms, vals = gm_objectives(x, y)
        best = vals.min()
        ident, anti = tuple(range(n)), tuple(range(n - 1, -1, -1))
        cands = {tuple(p): v for p, v in zip(perms, vals)}
        assert min(cands[ident], cands[anti]) <= best + 1e-12


def test_qap_examples():
    perms, vals = qap_objectives([0.0, 1.0], [0.0, 3.0])
    assert vals[0] == vals[1]
    rng = np.random.default_rng(6)
    for _ in range(30):
        n = int(rng.integers(2, 7))
        x, y = np.sort(rng.uniform(size=n)), np.sort(rng.uniform(size=n))
        z, zperm = qap_bruteforce(x, y)
        ident, anti = tuple(range(n)), tuple(range(n - 1, -1, -1))
        _, zvals = qap_objectives(x, y)
        d = dict(zip(map(tuple, perms_of(n)), zvals))
        assert max(d[ident], d[anti]) >= z - 1e-12 * (1 + z)
        # maximizing Z and minimizing GM select the same permutations
        _, gvals = gm_objectives(x, y)
        zset = set(np.flatnonzero(zvals >= zvals.max() - 1e-12 * (1 + zvals.max())))
        gset = set(np.flatnonzero(gvals <= gvals.min() + 1e-12 * (1 + gvals.min())))
        assert zset == gset


def perms_of(n):
    return list(itertools.permutations(range(n)))


def test_coupling_search():
    rng = np.random.default_rng(7)
    x, y = rng.uniform(size=4), rng.uniform(size=4)
    gm = gm_bruteforce(x, y)[0]
    assert coupling_search(x, y, trials=0) == pytest.approx(gm, rel=1e-12, abs=1e-15)
    assert coupling_search(x, y, trials=200, seed=1) >= gm - 1e-7
    assert coupling_search(x, x, trials=10) == 0.0
    with pytest.raises(ValueError):
        coupling_search(np.arange(7.0), np.arange(7.0))


def test_bruteforce_agrees_with_closed_form():
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        x, y = rng.uniform(size=n), rng.uniform(size=n)
        r = solve_gw1d(x, y)
        assert r.cost == pytest.approx(gm_bruteforce(x, y)[0], abs=1e-9)
        assert r.kind in (Kind.IDENTITY, Kind.ANTI_IDENTITY)
