"""
When is the marked block symmetric or uniform?
==============================================

For walk-equitable marked sets, ``M̂[S,S]`` is symmetric exactly when the
set is degree-separating, and with two marked vertices it is a multiple of
``J`` exactly for bipartite graphs or odd cycles whose marked neighbourhoods
are strongly cospectral.
"""

from qwalkmix import complete, cycle, hypercube
from qwalkmix.analysis import automorphism_check, classify_mss

for name, g, S in [
    ("C4", cycle(4), [0, 2]),
    ("C5", cycle(5), [0, 1]),
    ("C6", cycle(6), [0, 3]),
    ("K4", complete(4), [0, 1]),
    ("Q3", hypercube(3), [0, 7]),
]:
    cl = classify_mss(g, S)
    print(f"{name} {S}: symmetric={cl.symmetric} psd={cl.psd} uniform={cl.uniform} "
          f"walk-equitable={cl.walk_equitable} consistent={cl.theorem_consistent}")

# %%
# Symmetries of the graph that fix S also fix the mixing matrix.
print(automorphism_check(cycle(6), [0, 3], [(v + 3) % 6 for v in range(6)]))
