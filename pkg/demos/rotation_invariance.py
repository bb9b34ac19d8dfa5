"""Rotating a spiral: SGW moves, RISGW stays put.

SGW compares clouds in fixed coordinates, so rotating one of them changes
its value. RISGW also optimizes over an orthonormal frame by Riemannian
gradient descent on the Stiefel manifold, and recovers the rotation.
The same table is produced by ``slicedgw spiral``.
"""

import numpy as np

from slicedgw.experiments import default_angles, flatness, make_spiral, rotation_matrix, spiral_study
from slicedgw import risgw, sample_directions, sgw

angles, values = spiral_study(n=100, L=20, angles=default_angles(), seed=0, trials=10)
print(" angle   mean sgw   mean risgw")
for a, s, r in zip(angles, values["sgw"].mean(1), values["risgw"].mean(1)):
    print(f"{a:6.3f}  {s:9.5f}  {r:11.5f}")
print("flatness (max-min)/mean: sgw %.3f, risgw %.3f"
      % (flatness(values["sgw"].mean(1)), flatness(values["risgw"].mean(1))))

# a single run, with its optimizer trace
mu = make_spiral(100, seed=3)
nu = mu @ rotation_matrix(np.pi / 3).T
dirs = sample_directions(50, 2, seed=0)
value, trace = risgw(mu, nu, dirs=dirs)
print("sgw", sgw(mu, nu, dirs=dirs).value, "-> risgw", value, "in", trace.iters, "iterations")
F = trace.final_frame.matrix
print("recovered angle %.4f (true %.4f)" % (np.arctan2(F[1, 0], F[0, 0]), np.pi / 3))
