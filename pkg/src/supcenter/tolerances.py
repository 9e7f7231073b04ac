"""Shared numeric tolerances and desk-scale limits.

Every comparison in the package funnels through a single absolute tolerance
so that callers can tighten or relax the whole stack coherently.
"""

# Absolute tolerance for feasibility, optimality and set-membership checks.
DEFAULT_TOL = 1e-9

# Vertices closer than this (coordinate-wise) are considered duplicates.
DEDUP_TOL = 1e-7

# Largest number of active-set subsets the exhaustive vertex search will visit
# before switching to the polar-dual route.
EXHAUSTIVE_BUDGET = 50_000

# Simplex pivot guards.
PIVOT_EPS = 1e-10
LP_MAX_ITER = 50_000

# Side of the bounding box used when optimizing over an unbounded affine
# subspace, as a multiple of the data magnitude.
BOX_FACTOR = 10.0
