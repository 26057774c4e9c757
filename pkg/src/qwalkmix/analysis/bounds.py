"""Entrywise bounds on blocks of the average vertex mixing matrix.

All ``[S, S]`` quantities are indexed by ``sorted(S)``; ``[S̄, S̄]``
quantities by ``sorted(S̄)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from ..errors import MarkedSetError
from ..graph import Graph, MarkedPartition
from ..spectral import SpectralDecomposition, eig_projections, inverse, pinv_diag, schur_complement
from ..walk import MixingMatrix, require_marked, mixing_closed_form
from .equitable import neighborhoods_walk_equitable

TIGHT_TOL = 1e-8
SLACK_TOL = 1e-10


@dataclass(frozen=True)
class BoundReport:
    """``gap = target - bound``; a lower bound holds when ``gap >= 0``, an
    upper bound when ``gap <= 0``."""

    name: str
    side: str
    bound: np.ndarray
    target: np.ndarray
    predicted_tight: bool
    tol: float = TIGHT_TOL
    components: dict = field(default_factory=dict, repr=False)

    @property
    def gap(self) -> np.ndarray:
        return self.target - self.bound

    @property
    def slack(self) -> np.ndarray:
        return self.gap if self.side == "lower" else -self.gap

    @property
    def max_gap(self) -> float:
        return float(np.abs(self.gap).max(initial=0.0))

    @property
    def tight(self) -> bool:
        return self.max_gap <= self.tol

    def holds(self, slack_tol: float = SLACK_TOL) -> bool:
        return bool(self.slack.min(initial=0.0) >= -slack_tol)


class _Setup:
    """Everything the bounds share for one ``(g, S)``."""

    def __init__(self, g: Graph, S: Iterable[int], mixing: MixingMatrix | None = None):
        part, k = require_marked(g, S)
        self.g, self.part, self.k = g, part, k
        self.H = part.H.astype(float)
        self.Delta = part.DeltaSSbar.astype(float)
        self.Dpinv = pinv_diag(part.DeltaSSbar)
        self.dec: SpectralDecomposition = eig_projections(part.A_Sbar)
        self.Linv = inverse(part.L_Sbar)
        self.Qinv = inverse(part.Q_Sbar)
        self.mixing = mixing if mixing is not None else mixing_closed_form(g, part.S)

    def block_matrix(self, top_left: np.ndarray, off: np.ndarray, bottom_right: np.ndarray) -> np.ndarray:
        return np.block([[top_left, off], [off.T, bottom_right]]).astype(float)

    @property
    def trailing(self) -> range:
        return range(self.part.s, self.g.n)


def mss_lower_bound(g: Graph, S: Iterable[int], mixing: MixingMatrix | None = None) -> BoundReport:
    """Lower bound on ``M̂[S,S]`` from ``X[S]``, ``X \\ S`` and ``X - E(S)``.

    Equal to ``M̂[S,S]`` exactly when ``S`` has walk-equitable neighbourhoods
    in ``X \\ S``.
    """
    st = _Setup(g, S, mixing)
    k, H, Dp, part = st.k, st.H, st.Dpinv, st.part
    A_S = part.A_S.astype(float)
    induced_Q = np.diag(A_S.sum(axis=1)) + A_S

    # Laplacian and signless Laplacian of X - E(S), in (S, S̄) order
    Lp = st.block_matrix(st.Delta, -H, part.L_Sbar)
    Qp = st.block_matrix(st.Delta, H, part.Q_Sbar)
    L_schur = schur_complement(Lp, st.trailing)
    Q_schur = schur_complement(Qp, st.trailing)

    spectral = sum(
        (k / (2 * (k * k - lam * lam) ** 2) * (H @ G @ H.T) ** 2 for lam, G in st.dec),
        np.zeros((part.s, part.s)),
    )
    comps = {
        "induced": induced_Q / (2 * k),
        "spectral": Dp @ spectral,
        "laplacian": Dp @ L_schur**2 / (4 * k),
        "signless": Dp @ Q_schur**2 / (4 * k),
        "per_eigenvalue": [Dp @ (k / (2 * (k * k - lam * lam) ** 2) * (H @ G @ H.T) ** 2) for lam, G in st.dec],
        "L_schur": L_schur,
        "Q_schur": Q_schur,
    }
    bound = comps["induced"] + comps["spectral"] + comps["laplacian"] + comps["signless"]
    predicted = neighborhoods_walk_equitable(g, part.S).equitable
    return BoundReport("mss-lower", "lower", bound, st.mixing.SS, predicted, components=comps)


def mss_upper_bound(g: Graph, S: Iterable[int], mixing: MixingMatrix | None = None) -> BoundReport:
    """Upper bound on ``M̂[S,S]``; tight exactly when every marked vertex has
    at most one unmarked neighbour."""
    st = _Setup(g, S, mixing)
    k, H, part = st.k, st.H, st.part
    n_order = np.asarray(part.order)
    L = (np.diag(g.degrees) - g.adjacency)[np.ix_(n_order, n_order)]
    Q = (np.diag(g.degrees) + g.adjacency)[np.ix_(n_order, n_order)]
    L_schur = schur_complement(L, st.trailing)
    Q_schur = schur_complement(Q, st.trailing)

    diag_part = np.diag(np.diag(L_schur + Q_schur)) / (2 * k) - part.L_S.astype(float) / (2 * k)
    Gsq = sum((G**2 / (k * k - lam * lam) ** 2 for lam, G in st.dec), np.zeros_like(st.Linv))
    spectral = k / 2 * H @ Gsq @ H.T @ st.Delta
    inverses = H @ (st.Linv**2 + st.Qinv**2) @ H.T @ st.Delta / (4 * k)
    bound = diag_part + spectral + inverses
    predicted = bool((part.DeltaSSbar.diagonal() <= 1).all())
    comps = {"diagonal": diag_part, "spectral": spectral, "inverses": inverses, "L_schur": L_schur, "Q_schur": Q_schur}
    return BoundReport("mss-upper", "upper", bound, st.mixing.SS, predicted, components=comps)


@dataclass(frozen=True)
class ReturnProbabilityBounds:
    """Bounds on ``M̂[a,a]`` for a single marked vertex ``a``.

    ``lower_forms`` holds three algebraically equal expressions of the lower
    bound.  ``upper_forms`` holds the sharp upper bound and two simplified
    expressions that omit its ``-1/2`` diagonal term (see ``upper``).
    """

    a: int
    bipartite: bool
    lower: BoundReport
    upper: BoundReport
    lower_forms: dict
    upper_forms: dict
    simplified_lower: float

    def __iter__(self) -> Iterator[BoundReport]:
        return iter((self.lower, self.upper))


def return_probability_bounds(g: Graph, a: int, mixing: MixingMatrix | None = None) -> ReturnProbabilityBounds:
    st = _Setup(g, [a], mixing)
    if st.part.S != (a,):
        raise MarkedSetError("exactly one marked vertex is required")
    k, dec = st.k, st.dec
    z = st.H[0]
    J = np.ones_like(st.Linv)
    bip = g.is_bipartite

    Q_order = (np.diag(g.degrees) + g.adjacency)[np.ix_(st.part.order, st.part.order)]
    q_schur = float(schur_complement(Q_order, st.trailing)[0, 0])  # = 1 / (Q^{-1})_{aa}
    extra = 0.0 if bip else q_schur**2 / (4 * k * k)

    def elsm(X: np.ndarray) -> float:
        return float(z @ X @ z)

    GJG = sum((G @ J @ G for _, G in dec), np.zeros_like(J))
    lower_forms = {
        "eigenvalue": 0.5 * sum(elsm(G) ** 2 / (k * k - lam * lam) ** 2 for lam, G in dec) + extra,
        "GJG": 0.5 * sum(elsm(G @ J @ G) / (k + lam) ** 2 for lam, G in dec) + extra,
        "inverse": 0.5 * elsm(st.Qinv @ GJG @ st.Qinv) + extra,
    }
    simplified = elsm(GJG) / (8 * k * k) + extra

    general = mss_lower_bound(g, [a], st.mixing)
    lower = BoundReport(
        "return-lower", "lower", np.array([[lower_forms["eigenvalue"]]]), general.target,
        general.predicted_tight, components={"general": general.bound},
    )

    sharp = mss_upper_bound(g, [a], st.mixing)
    Gsq = sum((G**2 / (k * k - lam * lam) ** 2 for lam, G in dec), np.zeros_like(J))
    LQG = sum((((st.Linv @ st.Qinv @ G) ** 2) for _, G in dec), np.zeros_like(J))
    if bip:
        first = 0.5 * elsm(k * k * Gsq + st.Linv**2)
        second = 0.5 * elsm(k * k * LQG + st.Linv**2)
    else:
        first = 0.25 * elsm(2 * k * k * Gsq + st.Linv**2 + st.Qinv**2) + 1 / (2 * k) * q_schur
        second = 0.5 * elsm(k * k * LQG + st.Linv**2) + 1 / (2 * k) * q_schur
    upper_forms = {"sharp": float(sharp.bound[0, 0]), "simplified": first, "simplified_no_eigenvalues": second}
    upper = BoundReport(
        "return-upper", "upper", sharp.bound, sharp.target, sharp.predicted_tight, components=sharp.components,
    )
    return ReturnProbabilityBounds(a, bip, lower, upper, lower_forms, upper_forms, simplified)


def msbar_lower_bound(g: Graph, S: Iterable[int], mixing: MixingMatrix | None = None) -> BoundReport:
    """Lower bound on ``M̂[S̄,S̄]``, tight exactly when ``X \\ S`` is a disjoint
    union of edges and isolated vertices."""
    st = _Setup(g, S, mixing)
    k, part = st.k, st.part
    sb = len(part.Sbar)
    Dp = pinv_diag(part.DeltaSbarSbar)
    bound = np.zeros((sb, sb))
    for lam, G in st.dec:
        bound += ((k * k - 2 * lam * lam) * np.eye(sb) + k * lam * lam * Dp) @ G**2 / (k * k - lam * lam)
    bound /= 2
    predicted = bool((part.DeltaSbarSbar.diagonal() <= 1).all())
    return BoundReport("msbar-lower", "lower", bound, st.mixing.SbarSbar, predicted)


def msbar_displayed_tight_form(g: Graph, S: Iterable[int], isolated_value: float | None = None) -> np.ndarray:
    """Block form of ``M̂[S̄,S̄]`` for ``X \\ S`` a matching plus isolated vertices:
    ``(k+2)/(4(k+1)) J`` on each edge and ``isolated_value`` on isolated
    vertices (default ``1/(2k^2)``, the value in the published display)."""
    part, k = require_marked(g, S)
    if (part.DeltaSbarSbar.diagonal() > 1).any():
        raise ValueError("X \\ S is not a disjoint union of edges and isolated vertices")
    if isolated_value is None:
        isolated_value = 1 / (2 * k * k)
    A = part.A_Sbar
    out = np.zeros(A.shape)
    for i in range(A.shape[0]):
        if A[i].sum() == 0:
            out[i, i] = isolated_value
        else:
            j = int(np.flatnonzero(A[i])[0])
            out[i, i] = out[i, j] = (k + 2) / (4 * (k + 1))
    return out


def schur_square_sandwich(g: Graph, S: Iterable[int]) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Per eigenprojection ``G_r`` of ``A(X \\ S)``, the triple
    ``(Δ† (H G H^T)^{∘2}, H (G H^T)^{∘2}, H G^{∘2} H^T Δ)`` which is
    entrywise non-decreasing."""
    part, _ = require_marked(g, S)
    H = part.H.astype(float)
    D = part.DeltaSSbar.astype(float)
    Dp = pinv_diag(part.DeltaSSbar)
    return [(Dp @ (H @ G @ H.T) ** 2, H @ (G @ H.T) ** 2, H @ G**2 @ H.T @ D) for _, G in eig_projections(part.A_Sbar)]
