"""Average vertex mixing of the Grover walk with marked vertices."""

from .errors import *  # noqa: F401,F403
from .graph import (
    Graph,
    IncidenceSet,
    MarkedPartition,
    build_graph,
    complete,
    complete_bipartite,
    cycle,
    hypercube,
    incidence_set,
    marked_partition,
    parse_edgelist,
    parse_graph6,
    path,
    petersen,
    preset,
    read_graph,
    to_graph6,
)
from .spectral import SpectralDecomposition, eig_projections, pinv_diag, schur_complement
from .walk import (
    MixingMatrix,
    TransitionMatrix,
    WalkEigensystem,
    closed_form_terms,
    mixing_closed_form,
    mixing_matrix,
    mixing_projection_sum,
    mixing_time_average,
    transition_matrix,
    walk_eigensystem,
)
from .eigenbasis import KernelBasis, ker_B_basis, ker_C_basis, lift_basis, spanning_structures

__version__ = "0.1.0"
