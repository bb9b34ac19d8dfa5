"""Pairwise SGW over a small shape collection, embedded with classical MDS.

Clouds of different dimensions are compared directly: each pair puts the
lower-dimensional cloud in the source slot. Every cloud is centered and
scaled to unit RMS norm, then subsampled to a common size. Equivalent CLI:
``slicedgw pairwise DIR --mds``.
"""

import numpy as np

from slicedgw.experiments import pairwise_matrix
from slicedgw.mds import classical_mds

rng = np.random.default_rng(2)
t = rng.uniform(0, 2 * np.pi, size=300)
shapes = {
    "circle": np.c_[np.cos(t), np.sin(t)],
    "ellipse": np.c_[2 * np.cos(t), np.sin(t)],
    "segment": np.c_[t, np.zeros_like(t)],
    "circle3d_tilted": np.c_[np.cos(t), np.sin(t) / np.sqrt(2), np.sin(t) / np.sqrt(2)],
    "helix": np.c_[np.cos(3 * t), np.sin(3 * t), t / 3],
}
names = list(shapes)
D = pairwise_matrix([shapes[k] for k in names], metric="sgw", L=100, seed=0)
print("pairwise sgw")
for name, row in zip(names, D):
    print(f"{name:>16s} " + " ".join(f"{v:7.4f}" for v in row))

# the tilted circle is a rotated copy of the planar one; risgw finds the rotation
R = pairwise_matrix([shapes["circle"], shapes["circle3d_tilted"]], metric="risgw", L=100, seed=0)
print("circle vs tilted circle: sgw %.4f, risgw %.4f" % (D[0, 3], R[0, 1]))

for name, (x, y) in zip(names, classical_mds(D, 2)):
    print(f"{name:>16s}  ({x:+.3f}, {y:+.3f})")
