import numpy as np
import pytest


def write_corpus(directory, k=5, n=40, seed=0):
    """``k`` small clouds: CSV files in 2D and OFF meshes in 3D, unequal sizes."""
    rng = np.random.default_rng(seed)
    paths = []
    for i in range(k):
        m = n + 3 * i
        if i % 2 == 0:
            X = rng.normal(size=(m, 2)) * [1.0, 0.3 + 0.2 * i]
            p = directory / f"cloud{i}.csv"
            p.write_text("x,y\n" + "".join(f"{float(a)!r},{float(b)!r}\n" for a, b in X))
        else:
            X = rng.normal(size=(m, 3)) * [1.0, 0.5, 0.1 * i]
            p = directory / f"mesh{i}.off"
            p.write_text(f"OFF\n{m} 0 0\n" + "".join(f"{float(a)!r} {float(b)!r} {float(c)!r}\n" for a, b, c in X))
        paths.append(str(p))
    return paths


@pytest.fixture
def corpus(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    write_corpus(d)
    return d
