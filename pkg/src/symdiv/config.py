"""Tolerances and size caps shared across the package.

Module-level values are the defaults; functions accept keyword overrides.
"""

TOL = 1e-9
D2_SLACK = 1e-12

# LP tolerance hierarchy
PIVOT_TOL = 1e-10
FEAS_TOL = 1e-7
REPORT_TOL = 1e-6

EXHAUSTIVE_CAP = 8
MOBIUS_CAP = 16
EXACT_MOBIUS_CAP = 12
DENSE_CAP = 24
LP_CAP = 8
TSP_CAP = 13
STEINER_CAP = 10
EMBED_CAP = 20

CERTIFIED_BOUND = 40
