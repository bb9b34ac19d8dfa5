"""Sliced Gromov-Wasserstein discrepancies and the exact 1D GW solver they rest on."""

from .core import (
    DimensionError,
    DirectionSet,
    PointCloud,
    ProjectedCloud,
    apply_frame,
    pad_uplift,
    project,
    sample_directions,
)
from .gw1d import Assignment1D, Kind, gm_cost_for_perm, gm_cost_naive, solve_gw1d
from .invariant import OptTrace, RisgwConfig, euclidean_gradient, risgw, risw
from .sliced import SgwResult, sgw, sw_delta
from .stiefel import StiefelFrame, retract

__version__ = "0.1.0"
