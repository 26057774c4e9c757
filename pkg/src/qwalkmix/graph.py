"""Canonical graphs, incidence matrices and marked-set blocks.

Vertices are ``0..n-1``.  Edges are stored as ``(u, v)`` with ``u < v`` and
sorted lexicographically; edge ``j`` is oriented from its smaller endpoint to
its larger one.  Edge ``j`` owns arcs ``2j = (u, v)`` and ``2j + 1 = (v, u)``,
so the arc-reversal matrix is a perfect pairing swap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyGraph, InvalidVertex, NotConnected, NotRegular, NotSimple


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph with canonical orderings."""

    n: int
    edges: tuple[tuple[int, int], ...]
    k: int | None = None  # common degree, None when irregular

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_regular(self) -> bool:
        return self.k is not None

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        out = []
        for u, v in self.edges:
            out.append((u, v))
            out.append((v, u))
        return tuple(out)

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1
        return _frozen(A)

    @cached_property
    def degrees(self) -> np.ndarray:
        return _frozen(self.adjacency.sum(axis=1))

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: j for j, e in enumerate(self.edges)}

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[(min(u, v), max(u, v))]

    @cached_property
    def bipartition(self) -> np.ndarray | None:
        """0/1 colouring if bipartite, else None."""
        colour = -np.ones(self.n, dtype=np.int64)
        colour[0] = 0
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self.neighbors[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
        return _frozen(colour)

    @property
    def is_bipartite(self) -> bool:
        return self.bipartition is not None

    @cached_property
    def incidence(self) -> "IncidenceSet":
        return incidence_set(self)

    def require_regular(self) -> int:
        if self.k is None:
            raise NotRegular(f"graph with degrees {sorted(set(self.degrees.tolist()))} is not regular")
        return self.k

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return build_graph([(perm[u], perm[v]) for u, v in self.edges], self.n)


def build_graph(edge_list: Iterable[Sequence[int]], n: int) -> Graph:
    """Validate an edge list and return the canonical :class:`Graph`.

    Raises ``EmptyGraph`` for ``n < 1`` or no edges, ``InvalidVertex`` for
    labels outside ``0..n-1``, ``NotSimple`` for loops or repeated edges and
    ``NotConnected`` when the graph has more than one component.
    """
    if n < 1:
        raise EmptyGraph("graph has no vertices")
    seen: set[tuple[int, int]] = set()
    for pair in edge_list:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidVertex(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise NotSimple(f"loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise NotSimple(f"repeated edge {e}")
        seen.add(e)
    if not seen:
        raise EmptyGraph("graph has no edges")
    edges = tuple(sorted(seen))

    deg = np.zeros(n, dtype=np.int64)
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if len(components(n, edges)) != 1:
        raise NotConnected(f"graph on {n} vertices is not connected")
    k = int(deg[0]) if np.all(deg == deg[0]) else None
    return Graph(n=n, edges=edges, k=k)


def components(n: int, edges: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of the graph induced on ``vertices`` (default: all)."""
    keep = set(range(n)) if vertices is None else set(vertices)
    nb: dict[int, list[int]] = {v: [] for v in keep}
    for u, v in edges:
        if u in keep and v in keep:
            nb[u].append(v)
            nb[v].append(u)
    comps = []
    unseen = set(keep)
    for start in sorted(keep):
        if start not in unseen:
            continue
        unseen.discard(start)
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in nb[u]:
                if w in unseen:
                    unseen.discard(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class IncidenceSet:
    """Integer incidence matrices of a graph (rows/cols in canonical order)."""

    Dt: np.ndarray
    Dh: np.ndarray
    R: np.ndarray
    M: np.ndarray
    N: np.ndarray
    B: np.ndarray
    C: np.ndarray
    A: np.ndarray
    Delta: np.ndarray

    def identities(self) -> dict[str, bool]:
        """Exact integer check of the standard incidence identities."""
        Dt, Dh, R, M, N, B, C = self.Dt, self.Dh, self.R, self.M, self.N, self.B, self.C
        I = np.eye(R.shape[0], dtype=np.int64)
        eq = np.array_equal
        return {
            "DtR=Dh": eq(Dt @ R, Dh),
            "DhR=Dt": eq(Dh @ R, Dt),
            "RM=M": eq(R @ M, M),
            "RN=-N": eq(R @ N, -N),
            "MMt=I+R": eq(M @ M.T, I + R),
            "NNt=I-R": eq(N @ N.T, I - R),
            "DtDtt=Delta": eq(Dt @ Dt.T, self.Delta),
            "DhDht=Delta": eq(Dh @ Dh.T, self.Delta),
            "DtDht=A": eq(Dt @ Dh.T, self.A),
            "DhDtt=A": eq(Dh @ Dt.T, self.A),
            "DtM=B": eq(Dt @ M, B),
            "DhM=B": eq(Dh @ M, B),
            "DtN=C": eq(Dt @ N, C),
            "-DhN=C": eq(-Dh @ N, C),
        }


def incidence_set(g: Graph) -> IncidenceSet:
    n, m = g.n, g.m
    Dt = np.zeros((n, 2 * m), dtype=np.int64)
    Dh = np.zeros((n, 2 * m), dtype=np.int64)
    R = np.zeros((2 * m, 2 * m), dtype=np.int64)
    M = np.zeros((2 * m, m), dtype=np.int64)
    N = np.zeros((2 * m, m), dtype=np.int64)
    B = np.zeros((n, m), dtype=np.int64)
    C = np.zeros((n, m), dtype=np.int64)
    for j, (u, v) in enumerate(g.edges):
        fwd, back = 2 * j, 2 * j + 1
        Dt[u, fwd] = Dh[v, fwd] = 1
        Dt[v, back] = Dh[u, back] = 1
        R[fwd, back] = R[back, fwd] = 1
        M[fwd, j] = M[back, j] = 1
        N[fwd, j], N[back, j] = 1, -1
        B[u, j] = B[v, j] = 1
        C[u, j], C[v, j] = 1, -1
    return IncidenceSet(
        Dt=_frozen(Dt), Dh=_frozen(Dh), R=_frozen(R), M=_frozen(M), N=_frozen(N),
        B=_frozen(B), C=_frozen(C), A=g.adjacency, Delta=_frozen(np.diag(g.degrees)),
    )


def _check_subset(g: Graph, S: Iterable[int]) -> tuple[int, ...]:
    S = tuple(sorted({int(v) for v in S}))
    bad = [v for v in S if not 0 <= v < g.n]
    if bad:
        raise InvalidVertex(f"vertices {bad} not in 0..{g.n - 1}")
    return S


@dataclass(frozen=True)
class MarkedPartition:
    """All ``(S, S̄)`` blocks of a graph's matrices.

    ``order`` lists ``S`` then ``S̄``; block matrices are indexed in that
    order, i.e. ``A[order][:, order] == [[A_S, H], [H.T, A_Sbar]]``.
    """

    g: Graph
    S: tuple[int, ...]
    Sbar: tuple[int, ...]
    A_S: np.ndarray
    H: np.ndarray
    A_Sbar: np.ndarray
    L_S: np.ndarray
    Q_S: np.ndarray
    L_Sbar: np.ndarray
    Q_Sbar: np.ndarray
    B_Sbar: np.ndarray
    C_Sbar: np.ndarray
    DeltaSSbar: np.ndarray
    DeltaSbarSbar: np.ndarray
    O_S: np.ndarray
    order: tuple[int, ...] = field(repr=False, default=())

    @property
    def s(self) -> int:
        return len(self.S)

    def to_vertex_order(self, block: np.ndarray) -> np.ndarray:
        """Undo the ``(S, S̄)`` permutation of a full ``n × n`` block matrix."""
        out = np.empty_like(block)
        idx = np.asarray(self.order)
        out[np.ix_(idx, idx)] = block
        return out

    def from_vertex_order(self, mat: np.ndarray) -> np.ndarray:
        idx = np.asarray(self.order)
        return mat[np.ix_(idx, idx)]


def marked_partition(g: Graph, S: Iterable[int]) -> MarkedPartition:
    S = _check_subset(g, S)
    Sset = set(S)
    Sbar = tuple(v for v in range(g.n) if v not in Sset)
    s, sb = list(S), list(Sbar)
    A = g.adjacency
    Delta = np.diag(g.degrees)
    L = Delta - A
    Q = Delta + A
    inc = g.incidence
    H = A[np.ix_(s, sb)]
    A_Sbar = A[np.ix_(sb, sb)]
    O_S = np.eye(g.n, dtype=np.int64)
    O_S[s, s] = 0
    return MarkedPartition(
        g=g,
        S=S,
        Sbar=Sbar,
        A_S=_frozen(A[np.ix_(s, s)]),
        H=_frozen(H),
        A_Sbar=_frozen(A_Sbar),
        L_S=_frozen(L[np.ix_(s, s)]),
        Q_S=_frozen(Q[np.ix_(s, s)]),
        L_Sbar=_frozen(L[np.ix_(sb, sb)]),
        Q_Sbar=_frozen(Q[np.ix_(sb, sb)]),
        B_Sbar=_frozen(inc.B[sb, :]),
        C_Sbar=_frozen(inc.C[sb, :]),
        DeltaSSbar=_frozen(np.diag(H.sum(axis=1))),
        DeltaSbarSbar=_frozen(np.diag(A_Sbar.sum(axis=1))),
        O_S=_frozen(O_S),
        order=tuple(s + sb),
    )


# ---------------------------------------------------------------- input formats

def parse_edgelist(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``.

    Blank lines and ``#`` comments are ignored.
    """
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise EmptyGraph("empty edge-list input")
    try:
        header = [int(x) for x in rows[0]]
        body = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise ValueError(f"malformed edge list: {exc}") from None
    if len(header) != 2:
        raise ValueError("edge-list header must be 'n m'")
    n, m = header
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    return build_graph(body, n)


def parse_graph6(text: str) -> Graph:
    import networkx as nx

    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    G = nx.from_graph6_bytes(s.encode("ascii"))
    return build_graph(G.edges(), G.number_of_nodes())


def to_graph6(g: Graph) -> str:
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return nx.to_graph6_bytes(G, header=False).decode("ascii").strip()


def read_graph(path: str, fmt: str = "edgelist") -> Graph:
    with open(path, encoding="ascii") as fh:
        text = fh.read()
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "graph6":
        return parse_graph6(text.splitlines()[0] if text.strip() else text)
    raise ValueError(f"unknown graph format {fmt!r}")


# ---------------------------------------------------------------- named graphs

def cycle(n: int) -> Graph:
    return build_graph([(i, (i + 1) % n) for i in range(n)], n)


def path(n: int) -> Graph:
    return build_graph([(i, i + 1) for i in range(n - 1)], n)


def complete(n: int) -> Graph:
    return build_graph([(i, j) for i in range(n) for j in range(i + 1, n)], n)


def hypercube(d: int) -> Graph:
    n = 1 << d
    return build_graph([(u, u ^ (1 << i)) for u in range(n) for i in range(d) if u < u ^ (1 << i)], n)


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph([(i, a + j) for i in range(a) for j in range(b)], a + b)


def petersen() -> Graph:
    """Outer 5-cycle ``0..4``, spokes ``i - i+5``, inner pentagram on ``5..9``."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(outer + spokes + inner, 10)


def preset(spec: str) -> Graph:
    """Named graph: ``cycle:N``, ``path:N``, ``complete:N``, ``hypercube:D``,
    ``bipartite:A,B``, ``cube`` or ``petersen``."""
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    try:
        if name == "cycle":
            return cycle(int(arg))
        if name == "path":
            return path(int(arg))
        if name == "complete":
            return complete(int(arg))
        if name == "hypercube":
            return hypercube(int(arg))
        if name == "bipartite":
            a, b = (int(x) for x in arg.split(","))
            return complete_bipartite(a, b)
    except ValueError:
        raise ValueError(f"bad preset argument in {spec!r}") from None
    if name == "cube":
        return hypercube(3)
    if name == "petersen":
        return petersen()
    raise ValueError(f"unknown preset {spec!r}")
