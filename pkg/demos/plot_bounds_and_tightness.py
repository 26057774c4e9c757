"""
Bounds on the marked block
==========================

Entrywise lower and upper bounds on ``M̂[S,S]`` built from graphs derived
from ``X``.  The lower bound is exact when the unmarked neighbourhoods of the
marked vertices are walk-equitable in ``X \\ S``.
"""

import numpy as np

from qwalkmix import complete, cycle, hypercube, petersen
from qwalkmix.analysis import mss_lower_bound, mss_upper_bound, neighborhoods_walk_equitable, return_probability_bounds

cases = [
    ("C5", cycle(5), [0, 1]),
    ("C6", cycle(6), [0, 3]),
    ("C6", cycle(6), [0, 1, 3]),
    ("K4", complete(4), [0, 1]),
    ("Q3", hypercube(3), [0, 7]),
    ("Petersen", petersen(), [0, 5]),
]

# %%
# Gaps between the bounds and the true block.
print(f"{'graph':10s}{'S':12s}{'equitable':>10s}{'lower gap':>12s}{'upper gap':>12s}")
for name, g, S in cases:
    lo, up = mss_lower_bound(g, S), mss_upper_bound(g, S)
    eq = neighborhoods_walk_equitable(g, S).equitable
    print(f"{name:10s}{str(S):12s}{str(eq):>10s}{lo.max_gap:12.2e}{up.max_gap:12.2e}")

# %%
# For C6 with {0,1,3} marked, vertex 2 sees nothing while vertex 4 sees 5,
# so the neighbourhoods are not walk-equitable and the lower bound is loose.
print(neighborhoods_walk_equitable(cycle(6), [0, 1, 3]).witness)

# %%
# With a single marked vertex the return probability is squeezed between two
# numbers; the upper one is reached only by K2.
for name, g in [("K2", complete(2)), ("C5", cycle(5)), ("Petersen", petersen())]:
    rp = return_probability_bounds(g, 0)
    lo, up = rp
    print(f"{name:9s} {lo.bound[0, 0]:.4f} <= {lo.target[0, 0]:.4f} <= {up.bound[0, 0]:.4f}")
