"""
Average mixing of a walk with marked vertices
=============================================

Build the transition matrix of the Grover walk on the 4-cycle with two
opposite vertices marked, then compute the average vertex mixing matrix
by brute-force time averaging, by summing over eigenprojections, and from
the closed form.
"""

import numpy as np

from qwalkmix import cycle, mixing_closed_form, mixing_projection_sum, mixing_time_average, transition_matrix

np.set_printoptions(precision=4, suppress=True)

g = cycle(4)
S = [0, 2]

# %%
# The walk lives on arcs.  Marked vertices reflect every arc leaving them,
# unmarked ones apply the Grover coin, and then each arc is reversed.
tm = transition_matrix(g, S)
print("arcs:", g.arcs)
print("U^T U = I up to", tm.orthogonality_residual())

# %%
# A long time average converges like 1/T towards the limit.
for T in (10, 100, 1000):
    err = np.abs(mixing_time_average(g, S, T).Mhat - mixing_closed_form(g, S).Mhat).max()
    print(f"T={T:5d}  max deviation {err:.2e}")

# %%
# The projection sum and the closed form agree to rounding.
closed = mixing_closed_form(g, S).Mhat
print(closed)
print("closed vs projection sum:", np.abs(closed - mixing_projection_sum(g, S).Mhat).max())

# %%
# Removing {0, 2} splits the cycle into the isolated vertices 1 and 3, and
# the walk never carries probability from one to the other.
print("M[3, 1] =", closed[3, 1])
