"""Parseval frames from arbitrary finite frames via polar decomposition.

Also builds Fourier frames from points on Archimedean spirals, reconstructs
signals from frame measurements, and evaluates truncation error bounds.
"""
__version__ = "0.1.0"

from ._backend import DEFAULT as BACKEND
from .errors import *  # noqa: F401,F403
from .frames import (
    Frame,
    FrameBounds,
    ParsevalResult,
    canonical_tight_frame,
    frame_bounds,
    frame_operator,
    gram_matrix,
    subframe_parseval_union,
    symmetric_distance,
    synthesis_matrix,
    to_parseval,
    transfer_coefficients,
)
from .linalg import (
    gram_schmidt,
    herm_inv_sqrt,
    is_partial_isometry,
    polar_decompose,
    svd,
)
from .recon import (
    ErrorBoundReport,
    TruncationBoundInput,
    fourier_decay_bound,
    highdim_decay_bound,
    reconstruct,
    tail_sum,
    truncate_split,
    truncation_bound,
)
from .spiral import (
    DiskGrid,
    SamplePointSet,
    SpiralSpec,
    arc_length,
    covering_radius,
    disk_grid_frame,
    interval_exponential_frame,
    select_spiral_points,
    spiral_point,
)
