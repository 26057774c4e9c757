"""Walk-equitable collections and strong cospectrality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvalidVertex
from ..graph import Graph, marked_partition
from ..spectral import SpectralDecomposition, eig_projections

COSPECTRAL_TOL = 1e-9
EXACT_LIMIT = 25


def adjacency_of(Y) -> np.ndarray:
    if isinstance(Y, Graph):
        return Y.adjacency
    A = np.asarray(Y)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square adjacency matrix, got shape {A.shape}")
    return A


def _indicator(n: int, T: Iterable[int]) -> np.ndarray:
    z = np.zeros(n, dtype=np.int64)
    for v in T:
        if not 0 <= v < n:
            raise InvalidVertex(f"vertex {v} not in 0..{n - 1}")
        z[v] = 1
    return z


def walk_matrix(Y, T: Iterable[int]) -> np.ndarray:
    """``(z, Az, ..., A^{n-1} z)`` for the indicator ``z`` of ``T``, in exact integers.

    The result has ``dtype=object`` holding Python ints so that long walks
    never overflow.
    """
    A = adjacency_of(Y)
    n = A.shape[0]
    z = _indicator(n, T)
    Aint = [[int(x) for x in row] for row in A.tolist()]
    cols = [[int(x) for x in z]]
    for _ in range(1, n):
        prev = cols[-1]
        cols.append([sum(a * p for a, p in zip(row, prev)) for row in Aint])
    W = np.empty((n, n), dtype=object)
    for m, col in enumerate(cols):
        W[:, m] = col
    return W


@dataclass(frozen=True)
class Witness:
    """Vertices ``u`` and ``u2`` of ``collection[source]`` that see
    ``collection[target]`` differently: by walk counts of length ``m``, or
    (eigenprojection method) through eigenprojection number ``r``."""

    u: int
    u2: int
    source: int
    target: int
    values: tuple
    m: int | None = None
    r: int | None = None


@dataclass(frozen=True)
class WalkEquitReport:
    collection: tuple[tuple[int, ...], ...]
    equitable: bool
    method: str
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.equitable


def is_walk_equitable(
    Y,
    collection: Sequence[Iterable[int]],
    method: str = "eigenprojection",
    labels: Sequence[int] | None = None,
    tol: float = COSPECTRAL_TOL,
    decomposition: SpectralDecomposition | None = None,
) -> WalkEquitReport:
    """Do walk counts from ``u ∈ S_i`` into ``S_j`` depend only on ``(i, j, m)``?

    ``method="walk-matrix"`` checks every length ``m < n`` with exact integers
    (refused above ``n = 25``); ``"eigenprojection"`` checks that ``E_r z_j``
    is constant on every ``S_i``.  Vertices in ``collection`` and in the
    witness are indices of ``Y``, or entries of ``labels`` when given.
    """
    A = adjacency_of(Y)
    n = A.shape[0]
    if labels is not None:
        pos = {v: i for i, v in enumerate(labels)}
        try:
            sets = [sorted(pos[v] for v in set(Si)) for Si in collection]
        except KeyError as exc:
            raise InvalidVertex(f"vertex {exc.args[0]} is not in the graph") from None
        name = list(labels)
    else:
        sets = [sorted(set(int(v) for v in Si)) for Si in collection]
        name = list(range(n))
    if not sets:
        raise ValueError("collection must be nonempty")
    zs = [_indicator(n, Si) for Si in sets]
    coll = tuple(tuple(name[v] for v in Si) for Si in sets)

    if method == "walk-matrix":
        if n > EXACT_LIMIT:
            raise ValueError(f"exact walk-matrix method is limited to n <= {EXACT_LIMIT}")
        Ws = [walk_matrix(A, Si) for Si in sets]
        for m in range(n):
            for j, W in enumerate(Ws):
                col = W[:, m]
                for i, Si in enumerate(sets):
                    for u in Si[1:]:
                        if col[u] != col[Si[0]]:
                            w = Witness(name[Si[0]], name[u], i, j, (col[Si[0]], col[u]), m=m)
                            return WalkEquitReport(coll, False, method, w)
        return WalkEquitReport(coll, True, method)

    if method == "eigenprojection":
        dec = decomposition if decomposition is not None else eig_projections(A)
        for r, (_, E) in enumerate(dec):
            for j, z in enumerate(zs):
                col = E @ z
                for i, Si in enumerate(sets):
                    for u in Si[1:]:
                        if abs(col[u] - col[Si[0]]) > tol:
                            w = Witness(name[Si[0]], name[u], i, j, (float(col[Si[0]]), float(col[u])), r=r)
                            return WalkEquitReport(coll, False, method, w)
        return WalkEquitReport(coll, True, method)

    raise ValueError(f"unknown method {method!r}")


def unmarked_neighborhoods(g: Graph, S: Iterable[int]) -> list[tuple[int, ...]]:
    Sset = set(S)
    return [tuple(w for w in g.neighbors[a] if w not in Sset) for a in sorted(Sset)]


def neighborhoods_walk_equitable(g: Graph, S: Iterable[int], method: str = "eigenprojection") -> WalkEquitReport:
    """Walk-equitability of ``{N(a) \\ S : a ∈ S}`` in ``X \\ S`` (vertex labels of ``g``)."""
    part = marked_partition(g, S)
    return is_walk_equitable(part.A_Sbar, unmarked_neighborhoods(g, part.S), method=method, labels=part.Sbar)


def _pm_equal(x: np.ndarray, y: np.ndarray, tol: float) -> bool:
    return bool(np.abs(x - y).max(initial=0.0) <= tol or np.abs(x + y).max(initial=0.0) <= tol)


def strongly_cospectral(Y, u: int, v: int, tol: float = COSPECTRAL_TOL) -> bool:
    """``E_r e_u = ± E_r e_v`` for every eigenprojection ``E_r`` of ``Y``."""
    A = adjacency_of(Y)
    n = A.shape[0]
    for x in (u, v):
        if not 0 <= x < n:
            raise InvalidVertex(f"vertex {x} not in 0..{n - 1}")
    if u == v:
        return True
    return all(_pm_equal(E[:, u], E[:, v], tol) for _, E in eig_projections(A))


def neighborhood_strongly_cospectral(g: Graph, S: Iterable[int], a: int, b: int, tol: float = COSPECTRAL_TOL) -> bool:
    """``G_r H^T e_a = ± G_r H^T e_b`` for every eigenprojection of ``A(X \\ S)``."""
    part = marked_partition(g, S)
    for x in (a, b):
        if x not in part.S:
            raise InvalidVertex(f"vertex {x} is not marked")
    if a == b:
        return True
    ia, ib = part.S.index(a), part.S.index(b)
    H = part.H.astype(float)
    return all(_pm_equal(G @ H[ia], G @ H[ib], tol) for _, G in eig_projections(part.A_Sbar))
