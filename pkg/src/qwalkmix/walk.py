"""Transition matrix of the marked-vertex walk, its eigensystem, and the
average vertex mixing matrix computed three ways.

Arc-space states are indexed by ``Graph.arcs``.  The walk starting at
vertex ``v`` begins in ``deg(v)^{-1/2} Dt^T e_v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import linalg

from .errors import EmptyMarkedSet, FullMarkedSet, NotRegular
from .graph import Graph, MarkedPartition, marked_partition
from .spectral import SpectralDecomposition, eig_projections, inverse

ROUTES = ("time-average", "projection-sum", "closed-form")


@dataclass(frozen=True)
class TransitionMatrix:
    U: np.ndarray
    g: Graph
    S: tuple[int, ...]
    coin_projection: np.ndarray  # P2; the coin is 2 P2 - I

    @property
    def reversal_projection(self) -> np.ndarray:
        return (np.eye(self.U.shape[0]) + self.g.incidence.R) / 2

    def orthogonality_residual(self) -> float:
        U = self.U
        return float(np.abs(U.T @ U - np.eye(U.shape[0])).max())


def transition_matrix(g: Graph, S: Iterable[int] = (), form: str | None = None) -> TransitionMatrix:
    """``U = R (2 Dt^T Δ^{-1/2} O_S Δ^{-1/2} Dt - I)``.

    ``form="regular"`` insists on a regular graph and uses ``(2/k) Dt^T O_S Dt``;
    ``form="general"`` accepts any degrees.  The default picks whichever applies.
    """
    part = marked_partition(g, S)
    inc = g.incidence
    if form is None:
        form = "regular" if g.is_regular else "general"
    if form == "regular":
        k = g.require_regular()
        P2 = inc.Dt.T @ part.O_S @ inc.Dt / k
    elif form == "general":
        scale = np.diag(1.0 / np.sqrt(g.degrees))
        P2 = inc.Dt.T @ scale @ part.O_S @ scale @ inc.Dt
    else:
        raise ValueError(f"unknown form {form!r}")
    coin = 2 * P2 - np.eye(2 * g.m)
    U = inc.R @ coin
    return TransitionMatrix(U=U, g=g, S=part.S, coin_projection=P2)


@dataclass(frozen=True)
class Eigenspace:
    theta: float  # eigenvalue of U is exp(i theta)
    projection: np.ndarray
    rank: int
    source: int | None = None  # index into the A(X \ S) decomposition, None for ±1

    @property
    def phase(self) -> complex:
        if self.theta == 0.0:
            return 1.0 + 0j
        if self.theta == np.pi:
            return -1.0 + 0j
        return complex(np.exp(1j * self.theta))


@dataclass(frozen=True)
class WalkEigensystem:
    part: MarkedPartition
    k: int
    adjacency_decomposition: SpectralDecomposition  # of A(X \ S)
    spaces: tuple[Eigenspace, ...]

    @property
    def F1(self) -> np.ndarray:
        return self.spaces[0].projection

    @property
    def Fm1(self) -> np.ndarray:
        return self.spaces[1].projection

    def resolution_of_identity(self) -> np.ndarray:
        return sum(sp.projection for sp in self.spaces)

    def reconstruct(self) -> np.ndarray:
        return sum(sp.phase * sp.projection for sp in self.spaces)


def require_marked(g: Graph, S: Iterable[int]) -> tuple[MarkedPartition, int]:
    k = g.require_regular()
    part = marked_partition(g, S)
    if not part.S:
        raise EmptyMarkedSet("at least one vertex must be marked")
    if not part.Sbar:
        raise FullMarkedSet("at least one vertex must be unmarked")
    return part, k


def _embed_sbar(part: MarkedPartition, block: np.ndarray) -> np.ndarray:
    """``n × n`` matrix equal to ``block`` on ``[S̄, S̄]`` and zero elsewhere."""
    n = part.g.n
    out = np.zeros((n, n), dtype=block.dtype)
    idx = np.asarray(part.Sbar)
    out[np.ix_(idx, idx)] = block
    return out


def walk_eigensystem(g: Graph, S: Iterable[int], group_tol: float | None = None) -> WalkEigensystem:
    """Eigenprojections of ``U`` assembled from the blocks of ``L``, ``Q`` and
    the spectral decomposition of ``A(X \\ S)``.

    Spaces come in the order ``+1``, ``-1``, then ``e^{+iθ_r}, e^{-iθ_r}`` for
    each eigenvalue ``λ_r`` of ``A(X \\ S)`` (descending), ``θ_r = arccos(λ_r/k)``.
    """
    part, k = require_marked(g, S)
    inc = g.incidence
    Dt = inc.Dt.astype(float)
    Dh = inc.Dh.astype(float)
    R = inc.R.astype(float)
    I = np.eye(2 * g.m)
    rank_pm = g.m - g.n + part.s

    Dminus = Dt - Dh
    Dplus = Dt + Dh
    F1 = (I - R) / 2 - Dminus.T @ _embed_sbar(part, inverse(part.L_Sbar)) @ Dminus / 2
    Fm1 = (I + R) / 2 - Dplus.T @ _embed_sbar(part, inverse(part.Q_Sbar)) @ Dplus / 2
    spaces = [
        Eigenspace(0.0, (F1 + F1.T) / 2, rank_pm),
        Eigenspace(float(np.pi), (Fm1 + Fm1.T) / 2, rank_pm),
    ]

    dec = eig_projections(part.A_Sbar, group_tol)
    for r, (lam, G) in enumerate(dec):
        theta = float(np.arccos(np.clip(lam / k, -1.0, 1.0)))
        Gfull = _embed_sbar(part, G)
        norm = 2 * k * np.sin(theta) ** 2
        for sign in (1, -1):
            w = np.exp(sign * 1j * theta)
            left = (Dt - w * Dh).T
            right = Dt - np.conj(w) * Dh
            F = left @ Gfull @ right / norm
            spaces.append(Eigenspace(sign * theta, (F + F.conj().T) / 2, dec.multiplicities[r], r))
    return WalkEigensystem(part=part, k=k, adjacency_decomposition=dec, spaces=tuple(spaces))


def numerical_eigensystem(U: np.ndarray, phase_tol: float = 1e-7) -> list[tuple[float, np.ndarray]]:
    """Eigenprojections of an orthogonal matrix straight from a complex Schur
    decomposition, grouped by eigenphase.  Used only as a cross-check."""
    T, Z = linalg.schur(U.astype(complex), output="complex")
    phases = np.angle(np.diag(T))
    order = np.argsort(phases)
    groups: list[list[int]] = []
    for i in order:
        if groups and abs(np.exp(1j * phases[i]) - np.exp(1j * phases[groups[-1][-1]])) <= phase_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    # phases near ±π may wrap around
    if len(groups) > 1 and abs(np.exp(1j * phases[groups[0][0]]) - np.exp(1j * phases[groups[-1][-1]])) <= phase_tol:
        groups[0] = groups.pop() + groups[0]
    out = []
    for g in groups:
        V = Z[:, g]
        out.append((float(np.angle(np.exp(1j * phases[g]).mean())), V @ V.conj().T))
    return out


@dataclass(frozen=True)
class MixingMatrix:
    Mhat: np.ndarray
    route: str
    S: tuple[int, ...]
    Sbar: tuple[int, ...]

    def block(self, rows: Iterable[int], cols: Iterable[int]) -> np.ndarray:
        return self.Mhat[np.ix_(list(rows), list(cols))]

    @property
    def SS(self) -> np.ndarray:
        return self.block(self.S, self.S)

    @property
    def SSbar(self) -> np.ndarray:
        return self.block(self.S, self.Sbar)

    @property
    def SbarS(self) -> np.ndarray:
        return self.block(self.Sbar, self.S)

    @property
    def SbarSbar(self) -> np.ndarray:
        return self.block(self.Sbar, self.Sbar)

    def column_sum_error(self) -> float:
        return float(np.abs(self.Mhat.sum(axis=0) - 1).max())


def mixing_time_average(g: Graph, S: Iterable[int], T: int) -> MixingMatrix:
    """Cesàro average over ``t = 0..T-1`` of vertex-level probabilities.

    All ``n`` starting vertices evolve together; ``U`` is real so the
    arithmetic stays real.
    """
    if T < 1:
        raise ValueError("horizon T must be at least 1")
    tm = transition_matrix(g, S)
    part = marked_partition(g, S)
    Dt = g.incidence.Dt.astype(float)
    X = Dt.T / np.sqrt(g.degrees)[None, :]
    acc = np.zeros_like(X)
    U = tm.U
    for _ in range(T):
        acc += X * X
        X = U @ X
    return MixingMatrix(Dt @ acc / T, "time-average", part.S, part.Sbar)


def instantaneous_probabilities(g: Graph, S: Iterable[int], t_max: int) -> np.ndarray:
    """Array ``P[t, u, v]`` of the probability of sitting on ``u``'s outgoing
    arcs at time ``t`` after starting at ``v``."""
    tm = transition_matrix(g, S)
    Dt = g.incidence.Dt.astype(float)
    X = Dt.T / np.sqrt(g.degrees)[None, :]
    out = np.empty((t_max + 1, g.n, g.n))
    for t in range(t_max + 1):
        out[t] = Dt @ (X * X)
        X = tm.U @ X
    return out


def mixing_projection_sum(g: Graph, S: Iterable[int], system: WalkEigensystem | None = None) -> MixingMatrix:
    """``M̂ = (1/k) Dt Σ_θ |F_θ Dt^T|^{∘2}`` from the eigenprojections of ``U``."""
    if system is None:
        system = walk_eigensystem(g, S)
    Dt = g.incidence.Dt.astype(float)
    acc = np.zeros((2 * g.m, g.n))
    for sp in system.spaces:
        Y = sp.projection @ Dt.T
        acc += (Y * np.conj(Y)).real
    return MixingMatrix(Dt @ acc / system.k, "projection-sum", system.part.S, system.part.Sbar)


@dataclass(frozen=True)
class ClosedFormTerms:
    """Contributions to ``M̂`` in ``(S, S̄)`` order: the ``+1`` and ``-1``
    eigenspaces, and one term per eigenvalue of ``A(X \\ S)``."""

    part: MarkedPartition
    k: int
    decomposition: SpectralDecomposition
    plus: np.ndarray
    minus: np.ndarray
    per_eigenvalue: tuple[np.ndarray, ...]

    def total(self) -> np.ndarray:
        return self.plus + self.minus + sum(self.per_eigenvalue, np.zeros_like(self.plus))


def closed_form_terms(g: Graph, S: Iterable[int], group_tol: float | None = None) -> ClosedFormTerms:
    part, k = require_marked(g, S)
    s, sb = part.s, len(part.Sbar)
    H = part.H.astype(float)
    Q_S = part.Q_S.astype(float)
    L_Sbar = part.L_Sbar.astype(float)
    Linv = inverse(L_Sbar)
    Qinv = inverse(part.Q_Sbar)

    def pm_term(Xinv: np.ndarray) -> np.ndarray:
        Y = Xinv @ H.T
        out = np.zeros((s + sb, s + sb))
        out[:s, :s] = Q_S + H @ Y**2 - 2 * np.diag(np.diag(H @ Y))
        out[s:, :s] = H.T - L_Sbar @ Y**2
        return out / (4 * k)

    plus = pm_term(Linv)
    minus = pm_term(Qinv)

    dec = eig_projections(part.A_Sbar, group_tol)
    A_Sbar = part.A_Sbar.astype(float)
    terms = []
    for lam, G in dec:
        d = k * k - lam * lam
        left = np.vstack([k * H, (k * k - 2 * lam * lam) * np.eye(sb) + k * A_Sbar])
        right = np.hstack([(G @ H.T) ** 2 / d, G**2])
        terms.append(left @ right / (2 * d))
    return ClosedFormTerms(part, k, dec, plus, minus, tuple(terms))


def mixing_closed_form(g: Graph, S: Iterable[int], group_tol: float | None = None) -> MixingMatrix:
    """``M̂`` from the block formulas in ``H``, ``L_S̄^{-1}``, ``Q_S̄^{-1}`` and the
    eigenprojections of ``A(X \\ S)``.  This is the production route."""
    terms = closed_form_terms(g, S, group_tol)
    part = terms.part
    return MixingMatrix(part.to_vertex_order(terms.total()), "closed-form", part.S, part.Sbar)


def mixing_matrix(g: Graph, S: Iterable[int], route: str = "closed-form", T: int = 20000) -> MixingMatrix:
    if route == "closed-form":
        return mixing_closed_form(g, S)
    if route == "projection-sum":
        return mixing_projection_sum(g, S)
    if route == "time-average":
        return mixing_time_average(g, S, T)
    raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
