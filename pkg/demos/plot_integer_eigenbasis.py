"""
Integer eigenvectors for eigenvalues 1 and -1
=============================================

The 1- and (-1)-eigenspaces of the transition matrix have dimension
``|E| - |V| + |S|`` and are spanned by lifts of small integer vectors on
edges: oriented cycles and paths for one, alternating ones for the other.
"""

import numpy as np

from qwalkmix import ker_B_basis, ker_C_basis, lift_basis, petersen, walk_eigensystem
from qwalkmix.spectral import column_space_projection, projection_distance

g = petersen()
S = [0, 5]

kc, kb = ker_C_basis(g, S), ker_B_basis(g, S)
print("dimension", g.m - g.n + len(S), "->", len(kc), len(kb))

# %%
# Each vector is listed by its edge support.
for lab, v in zip(kb.labels, kb.vectors):
    print(f"{lab:16s}", {g.edges[j]: int(v[j]) for j in np.flatnonzero(v)})

# %%
# Lifting to arcs lands exactly in the eigenspaces.
sysm = walk_eigensystem(g, S)
for kbasis, F in ((kc, sysm.F1), (kb, sysm.Fm1)):
    lifted = lift_basis(kbasis, g.incidence)
    P = column_space_projection(lifted.vectors.T.astype(float))
    print(lifted.space, "subspace distance", projection_distance(P, F))
