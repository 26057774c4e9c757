"""Symmetric / PSD / uniform classification of ``M̂[S,S]`` and automorphism checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from ..errors import DoesNotFixS, InvalidVertex, NotAutomorphism
from ..graph import Graph, components, marked_partition
from ..walk import MixingMatrix, require_marked, mixing_closed_form
from .equitable import WalkEquitReport, neighborhood_strongly_cospectral, neighborhoods_walk_equitable

CLASSIFY_TOL = 1e-9


def degree_separating(g: Graph, S: Iterable[int]) -> bool:
    """Marked vertices with different unmarked-degree have unmarked
    neighbourhoods in different components of ``X \\ S``."""
    part = marked_partition(g, S)
    Sset = set(part.S)
    comp_of = {}
    for c, comp in enumerate(components(g.n, g.edges, part.Sbar)):
        for v in comp:
            comp_of[v] = c
    nbr = {a: [w for w in g.neighbors[a] if w not in Sset] for a in part.S}
    for u, v in combinations(part.S, 2):
        if len(nbr[u]) != len(nbr[v]):
            if {comp_of[w] for w in nbr[u]} & {comp_of[w] for w in nbr[v]}:
                return False
    return True


def is_odd_cycle(g: Graph) -> bool:
    return g.k == 2 and g.n % 2 == 1


@dataclass(frozen=True)
class MssClassification:
    symmetric: bool
    psd: bool
    uniform: bool
    degree_separating: bool
    walk_equitable: bool
    neighborhood_strongly_cospectral: bool
    odd_cycle_or_bipartite: bool
    theorem_consistent: bool
    equitability: WalkEquitReport
    min_eigenvalue: float
    asymmetry: float


def classify_mss(g: Graph, S: Iterable[int], mixing: MixingMatrix | None = None, tol: float = CLASSIFY_TOL) -> MssClassification:
    part, _ = require_marked(g, S)
    if mixing is None:
        mixing = mixing_closed_form(g, part.S)
    M = mixing.SS
    asym = float(np.abs(M - M.T).max())
    symmetric = asym <= tol
    min_eig = float(np.linalg.eigvalsh((M + M.T) / 2).min())
    psd = symmetric and min_eig >= -tol
    uniform = float(M.max() - M.min()) <= tol

    sep = degree_separating(g, part.S)
    eq = neighborhoods_walk_equitable(g, part.S)
    nsc = all(neighborhood_strongly_cospectral(g, part.S, a, b) for a, b in combinations(part.S, 2))
    shape = is_odd_cycle(g) or g.is_bipartite

    consistent = True
    if eq.equitable:
        consistent = symmetric == sep and psd == sep
        if part.s >= 2:
            consistent = consistent and uniform == (part.s == 2 and shape and nsc)
    return MssClassification(
        symmetric=symmetric, psd=psd, uniform=uniform, degree_separating=sep, walk_equitable=eq.equitable,
        neighborhood_strongly_cospectral=nsc, odd_cycle_or_bipartite=shape, theorem_consistent=consistent,
        equitability=eq, min_eigenvalue=min_eig, asymmetry=asym,
    )


@dataclass(frozen=True)
class AutomorphismResult:
    commutes: bool
    witness: tuple[int, int] | None = None  # (u, v) with M̂[p(u), p(v)] != M̂[u, v]
    deviation: float = 0.0

    def __bool__(self) -> bool:
        return self.commutes


def automorphism_check(
    g: Graph, S: Iterable[int], perm: Sequence[int], mixing: MixingMatrix | None = None, tol: float = 1e-10
) -> AutomorphismResult:
    """Check that ``M̂`` commutes with the permutation ``v -> perm[v]``.

    Raises ``NotAutomorphism`` if ``perm`` does not preserve adjacency and
    ``DoesNotFixS`` if it does not map ``S`` onto itself.
    """
    p = [int(x) for x in perm]
    if sorted(p) != list(range(g.n)):
        raise InvalidVertex("perm is not a bijection on the vertex set")
    A = g.adjacency
    idx = np.asarray(p)
    if not np.array_equal(A[np.ix_(idx, idx)], A):
        raise NotAutomorphism("perm does not preserve adjacency")
    S = marked_partition(g, S).S
    if {p[v] for v in S} != set(S):
        raise DoesNotFixS("perm does not map the marked set onto itself")
    if mixing is None:
        mixing = mixing_closed_form(g, S)
    M = mixing.Mhat
    diff = np.abs(M[np.ix_(idx, idx)] - M)
    worst = float(diff.max())
    if worst <= tol:
        return AutomorphismResult(True, None, worst)
    u, v = np.unravel_index(int(diff.argmax()), diff.shape)
    return AutomorphismResult(False, (int(u), int(v)), worst)
