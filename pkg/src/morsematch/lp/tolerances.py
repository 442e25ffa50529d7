"""Shared numerical tolerances for both simplex kernels."""

FEAS_TOL = 1e-7     # primal feasibility on bounds and rows
OPT_TOL = 1e-6      # reduced-cost optimality
PIV_TOL = 1e-9      # smallest pivot magnitude accepted
RATIO_TIE_TOL = 1e-9
DEGEN_LIMIT = 100   # consecutive degenerate pivots before Bland's rule
REFACTOR_EVERY = 50  # basis changes between refactorizations

# kernel status codes
OPTIMAL = 0
INFEASIBLE = 1
ITERATION_LIMIT = 2
SINGULAR = 3
NOT_FEASIBLE_START = 4
NUMERICAL = 5
