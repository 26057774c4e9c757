"""Grouped eigenprojections of real symmetric matrices and Schur complements."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from scipy import linalg

from .errors import NotSymmetric, SingularBlock

SYMMETRY_TOL = 1e-12
SINGULAR_COND = 1e12


@dataclass(frozen=True)
class SpectralDecomposition:
    """``M = sum_r eigenvalues[r] * projections[r]`` with eigenvalues descending."""

    eigenvalues: np.ndarray
    projections: tuple[np.ndarray, ...]
    multiplicities: tuple[int, ...]
    group_tol: float

    def __len__(self) -> int:
        return len(self.projections)

    def __iter__(self) -> Iterator[tuple[float, np.ndarray]]:
        return iter(zip(self.eigenvalues.tolist(), self.projections))

    def reconstruct(self) -> np.ndarray:
        return sum(lam * G for lam, G in self)

    def apply(self, f) -> np.ndarray:
        """``f(M)`` for a scalar function ``f`` of the eigenvalues."""
        return sum(f(lam) * G for lam, G in self)


def default_group_tol(Msym: np.ndarray) -> float:
    scale = float(np.abs(Msym).max()) if Msym.size else 0.0
    return 1e-8 * max(1.0, scale)


def eig_projections(Msym: np.ndarray, group_tol: float | None = None) -> SpectralDecomposition:
    """Spectral decomposition of a real symmetric matrix, grouped by eigenvalue.

    Consecutive sorted eigenvalues closer than ``group_tol`` are merged
    into one eigenspace; the reported eigenvalue is the group mean.
    """
    Msym = np.asarray(Msym, dtype=float)
    if Msym.ndim != 2 or Msym.shape[0] != Msym.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {Msym.shape}")
    if Msym.size and np.abs(Msym - Msym.T).max() > SYMMETRY_TOL * max(1.0, np.abs(Msym).max()):
        raise NotSymmetric("matrix is not symmetric")
    if group_tol is None:
        group_tol = default_group_tol(Msym)
    if group_tol <= 0:
        raise ValueError("group_tol must be positive")
    if Msym.size == 0:
        return SpectralDecomposition(np.zeros(0), (), (), group_tol)

    w, V = linalg.eigh((Msym + Msym.T) / 2)
    w, V = w[::-1], V[:, ::-1]
    groups: list[list[int]] = [[0]]
    for i in range(1, len(w)):
        if w[groups[-1][-1]] - w[i] <= group_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    eigenvalues = np.array([w[g].mean() for g in groups])
    projections = []
    for g in groups:
        Vg = V[:, g]
        P = Vg @ Vg.T
        projections.append((P + P.T) / 2)
    return SpectralDecomposition(
        eigenvalues=eigenvalues,
        projections=tuple(projections),
        multiplicities=tuple(len(g) for g in groups),
        group_tol=group_tol,
    )


def schur_complement(N: np.ndarray, split: Iterable[int], return_cond: bool = False):
    """Schur complement ``N/D = A - B D^{-1} C`` of the block ``D = N[split, split]``.

    ``A`` is indexed by the complement of ``split`` in ascending order.  ``D``
    is never inverted explicitly.  Raises ``SingularBlock`` when ``D`` is
    numerically singular.
    """
    N = np.asarray(N, dtype=float)
    n = N.shape[0]
    d = sorted(set(int(i) for i in split))
    a = [i for i in range(n) if i not in set(d)]
    A = N[np.ix_(a, a)]
    if not d:
        return (A.copy(), 1.0) if return_cond else A.copy()
    B = N[np.ix_(a, d)]
    C = N[np.ix_(d, a)]
    D = N[np.ix_(d, d)]
    cond = float(np.linalg.cond(D))
    if not np.isfinite(cond) or cond > SINGULAR_COND:
        raise SingularBlock(f"trailing block is singular (condition number {cond:.3g})")
    out = A - B @ linalg.solve(D, C) if a else A
    return (out, cond) if return_cond else out


def inverse(D: np.ndarray) -> np.ndarray:
    """Inverse of a well-conditioned block, raising ``SingularBlock`` otherwise."""
    D = np.asarray(D, dtype=float)
    if D.size == 0:
        return D.copy()
    cond = float(np.linalg.cond(D))
    if not np.isfinite(cond) or cond > SINGULAR_COND:
        raise SingularBlock(f"block is singular (condition number {cond:.3g})")
    return linalg.solve(D, np.eye(D.shape[0]))


def pinv_diag(D: np.ndarray) -> np.ndarray:
    """Moore-Penrose inverse of a diagonal matrix."""
    d = np.diag(D).astype(float)
    out = np.zeros_like(d)
    nz = d != 0
    out[nz] = 1.0 / d[nz]
    return np.diag(out)


def projection_distance(P1: np.ndarray, P2: np.ndarray) -> float:
    """Spectral-norm distance between two orthogonal projections."""
    return float(np.linalg.norm(P1 - P2, 2)) if P1.size else 0.0


def column_space_projection(V: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Orthogonal projection onto ``col(V)`` (complex or real)."""
    if V.shape[1] == 0:
        return np.zeros((V.shape[0], V.shape[0]), dtype=V.dtype)
    U, s, _ = np.linalg.svd(V, full_matrices=False)
    r = int((s > tol * max(1.0, s[0])).sum())
    Ur = U[:, :r]
    return Ur @ Ur.conj().T


def numerical_rank(M: np.ndarray, tol: float = 1e-9) -> int:
    if M.size == 0:
        return 0
    return int((np.linalg.svd(M, compute_uv=False) > tol).sum())
