import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slicedgw.io import (
    CloudFormatError,
    fmt,
    normalize_cloud,
    read_cloud,
    read_csv_cloud,
    read_off,
    subsample,
    write_csv,
)
from slicedgw.mds import classical_mds, jacobi_eigh


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_csv_with_and_without_header(tmp_path):
    a = read_csv_cloud(_write(tmp_path, "a.csv", "x,y\n1,2\n3.5,-4e-1\n"))
    b = read_csv_cloud(_write(tmp_path, "b.csv", "1,2\n3.5,-0.4\n\n"))
    np.testing.assert_array_equal(a, [[1, 2], [3.5, -0.4]])
    np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize(
    "text, where",
    [("1,2\n3\n", ":2:"), ("x,y\n1,2\n1,zz\n", ":3:"), ("1,nan\n", ":1:"), ("x,y\n", "no data")],
)
def test_csv_errors(tmp_path, text, where):
    with pytest.raises(CloudFormatError, match=where):
        read_csv_cloud(_write(tmp_path, "bad.csv", text))


def test_off_reads_vertices_only(tmp_path):
    text = "OFF\n# comment\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n"
    np.testing.assert_array_equal(read_off(_write(tmp_path, "t.off", text)), [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    inline = read_cloud(_write(tmp_path, "u.OFF", "OFF 2 0 0\n1 2 3\n4 5 6\n"))
    assert inline.shape == (2, 3)


@pytest.mark.parametrize(
    "text, where",
    [
        ("COFF\n1 0 0\n0 0 0\n", ":1:"),
        ("OFF\n1 0\n0 0 0\n", ":2:"),
        ("OFF\n2 0 0\n0 0 0\n", "expected 2 vertex lines"),
        ("OFF\n1 0 0\n0 0\n", ":3:"),
        ("OFF\n1 0 0\n0 a 0\n", ":3:"),
        ("", ":1:"),
    ],
)
def test_off_errors_are_line_numbered(tmp_path, text, where):
    with pytest.raises(CloudFormatError, match=where):
        read_off(_write(tmp_path, "bad.off", text))


def test_normalize_and_subsample():
    X = np.random.default_rng(0).normal(size=(40, 3)) * 7 + 3
    Z = normalize_cloud(X)
    np.testing.assert_allclose(Z.mean(0), 0, atol=1e-12)
    assert np.sqrt((Z**2).sum(1).mean()) == pytest.approx(1.0)
    np.testing.assert_array_equal(normalize_cloud(np.ones((4, 2))), 0)
    S = subsample(X, 10, [0, 1])
    assert S.shape == (10, 3)
    np.testing.assert_array_equal(S, subsample(X, 10, [0, 1]))
    np.testing.assert_array_equal(subsample(X, 40, 5), X)
    with pytest.raises(ValueError):
        subsample(X, 41, 0)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trips(v):
    assert float(fmt(v)) == v


def test_write_csv():
    assert write_csv(["a", "b"], [[1, 0.5]]) == "a,b\n1,0.5\n"


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**6))
def test_jacobi_matches_numpy(n, seed):
    M = np.random.default_rng(seed).normal(size=(n, n))
    A = M + M.T
    w, V = jacobi_eigh(A)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(A)[::-1], atol=1e-8 * (1 + np.abs(w).max()))
    np.testing.assert_allclose(V.T @ V, np.eye(n), atol=1e-9)
    np.testing.assert_allclose(A @ V, V * w, atol=1e-8 * (1 + np.abs(w).max()))


def test_jacobi_rejects_asymmetric():
    with pytest.raises(ValueError):
        jacobi_eigh([[1.0, 2.0], [0.0, 1.0]])


def test_mds_recovers_planar_distances():
    P = np.random.default_rng(1).normal(size=(8, 2))
    D = np.sqrt(((P[:, None] - P[None]) ** 2).sum(-1))
    C = classical_mds(D, 2)
    Dc = np.sqrt(((C[:, None] - C[None]) ** 2).sum(-1))
    np.testing.assert_allclose(Dc, D, atol=1e-8)
    np.testing.assert_allclose(classical_mds(np.zeros((3, 3))), 0)
