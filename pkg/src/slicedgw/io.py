"""Reading point clouds from CSV or OFF files and writing CSV tables."""

from __future__ import annotations

import csv
import io
import os

import numpy as np

from .core import make_rng

__all__ = [
    "CloudFormatError",
    "read_csv_cloud",
    "read_off",
    "read_cloud",
    "list_cloud_files",
    "normalize_cloud",
    "subsample",
    "fmt",
    "write_csv",
]

CLOUD_SUFFIXES = (".csv", ".off")


class CloudFormatError(ValueError):
    """Malformed cloud file. The message names the offending line."""


def _parse_floats(tokens, path, lineno):
    try:
        vals = [float(t) for t in tokens]
    except ValueError:
        raise CloudFormatError(f"{path}:{lineno}: expected numbers, got {tokens!r}") from None
    if not all(np.isfinite(vals)):
        raise CloudFormatError(f"{path}:{lineno}: non-finite value")
    return vals


def _is_number(tok):
    try:
        float(tok)
    except ValueError:
        return False
    return True


def read_csv_cloud(path) -> np.ndarray:
    """One point per row. A first row holding any non-numeric token is a header."""
    with open(path, newline="") as f:
        rows = [(i, r) for i, r in enumerate(csv.reader(f), start=1) if any(t.strip() for t in r)]
    if rows and not all(_is_number(t) for t in rows[0][1]):
        rows = rows[1:]
    if not rows:
        raise CloudFormatError(f"{path}: no data rows")
    width = len(rows[0][1])
    pts = []
    for lineno, r in rows:
        if len(r) != width:
            raise CloudFormatError(f"{path}:{lineno}: expected {width} columns, got {len(r)}")
        pts.append(_parse_floats([t.strip() for t in r], path, lineno))
    return np.array(pts, dtype=np.float64)


def read_off(path) -> np.ndarray:
    """Vertices of an OFF mesh as an ``(V, 3)`` array. Faces are not read."""
    with open(path) as f:
        lines = [
            (i, ln.split("#", 1)[0].split())
            for i, ln in enumerate(f, start=1)
        ]
    lines = [(i, toks) for i, toks in lines if toks]
    if not lines or lines[0][1][0] != "OFF":
        where = lines[0][0] if lines else 1
        raise CloudFormatError(f"{path}:{where}: missing 'OFF' header")
    lineno, head = lines[0]
    rest = lines[1:]
    counts = head[1:]
    if not counts:
        if not rest:
            raise CloudFormatError(f"{path}:{lineno}: missing counts line")
        lineno, counts = rest[0]
        rest = rest[1:]
    if len(counts) != 3 or not all(c.isdigit() for c in counts):
        raise CloudFormatError(f"{path}:{lineno}: counts line must be 'V F E'")
    nv = int(counts[0])
    if len(rest) < nv:
        raise CloudFormatError(f"{path}: expected {nv} vertex lines, found {len(rest)}")
    pts = []
    for lineno, toks in rest[:nv]:
        if len(toks) != 3:
            raise CloudFormatError(f"{path}:{lineno}: vertex line must hold 3 numbers")
        pts.append(_parse_floats(toks, path, lineno))
    if not pts:
        raise CloudFormatError(f"{path}: mesh has no vertices")
    return np.array(pts, dtype=np.float64)


def read_cloud(path) -> np.ndarray:
    """Dispatch on the file suffix: ``.off`` is a mesh, anything else CSV."""
    if str(path).lower().endswith(".off"):
        return read_off(path)
    return read_csv_cloud(path)


def list_cloud_files(directory):
    names = sorted(n for n in os.listdir(directory) if n.lower().endswith(CLOUD_SUFFIXES))
    return [os.path.join(directory, n) for n in names]


def normalize_cloud(X) -> np.ndarray:
    """Center and divide by the root-mean-square point norm."""
    X = np.asarray(X, dtype=np.float64)
    Xc = X - X.mean(axis=0)
    rms = np.sqrt((Xc**2).sum(axis=1).mean())
    return Xc / rms if rms > 0 else Xc


def subsample(X, n, seed) -> np.ndarray:
    """``n`` rows drawn uniformly without replacement, kept in file order."""
    X = np.asarray(X)
    if n > len(X):
        raise ValueError(f"cannot subsample {n} points from {len(X)}")
    if n == len(X):
        return X
    idx = np.sort(make_rng(seed).choice(len(X), size=n, replace=False))
    return X[idx]


def fmt(v) -> str:
    """17 significant digits, enough to round-trip any float64."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return f"{float(v):.17g}"


def write_csv(header, rows, out=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
