"""Numerical tolerances shared by every module."""

EPS_ORTHO = 1e-10  # orthogonality / rotation residuals
EPS_RANK = 1e-10   # relative singular-value cut for rank-one detection
EPS_SET = 1e-12    # equality band for assumption checks and set membership
EPS_UNIT = 1e-12   # allowed deviation of a unit vector's norm from 1
EPS_DET = 1e-14    # smallest determinant accepted as invertible
