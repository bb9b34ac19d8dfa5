"""Runtime of SGW against the number of points.

Each direction costs one sort plus a handful of dot products, so time grows
like n log n. ``slicedgw bench`` writes the same table as CSV.
"""

import numpy as np

from slicedgw.experiments import bench, loglog_slope

rows = bench([2**k for k in range(12, 19)], L=50, seed=0)
for n, ms, value in rows:
    print(f"n={n:8d}  {ms:9.1f} ms  sgw={value:.5f}")
ns, ms = np.array([r[0] for r in rows]), np.array([r[1] for r in rows])
print("log-log slope: %.3f" % loglog_slope(ns, ms))
