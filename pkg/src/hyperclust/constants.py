"""Numeric tolerance policy, stated once and imported everywhere.

Set-function identities (cuts, splitting penalties, extensions) are compared
with an absolute tolerance; iterative solvers are cross-checked with a
relative one.
"""

# Absolute tolerance for set-function identities.
SET_FN_ATOL = 1e-9

# Relative tolerance for solver cross-checks.
SOLVER_RTOL = 1e-7

# An inner dual residual below this (scaled by max(1, |g|)) is treated as
# exactly zero: the primal optimum is 0 and the zero vector is returned.
DEGENERATE_RESIDUAL = 1e-12

# Entries this close to zero are ambiguous when thresholding a prox solution.
THRESHOLD_ATOL = 1e-9

# Denominator used when ingested vertex weights are rounded to rationals so
# the balanced-split dynamic program stays exact.
QUANTIZE_DENOMINATOR = 1 << 20
