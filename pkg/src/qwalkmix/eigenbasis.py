"""Integer bases of ker(C_S̄) and ker(B_S̄) and their lifts to the ±1
eigenspaces of the transition matrix.

Every vector is built from signed walks in a BFS spanning tree rooted at a
marked anchor vertex:

* kerC vectors follow a closed walk (fundamental cycle) or an anchor-to-b
  tree path, with sign +1 where the edge orientation agrees with the walk.
* kerB vectors alternate +1/-1 along a closed walk of even length, or
  along an open walk whose only defect sits at its end points.  Repeated
  edges of the walk accumulate, which produces the ±2 entries.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BipartiteNoOddCycle, EmptyMarkedSet, InvalidVertex, WrongSpaceTag
from .graph import Graph, IncidenceSet, marked_partition

SPACES = ("kerC", "kerB", "eig(+1)", "eig(-1)")


@dataclass(frozen=True)
class SpanningStructure:
    anchor: int
    parent: tuple[int, ...]  # parent[root] == -1
    depth: tuple[int, ...]
    tree: tuple[int, ...]  # edge ids
    odd_edge: int | None  # non-tree edge closing the odd cycle of the unicyclic subgraph
    odd_unicyclic: tuple[int, ...] | None

    def tree_path(self, u: int, v: int) -> list[int]:
        """Vertex sequence of the tree path from ``u`` to ``v``."""
        up, down = [u], [v]
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
            up.append(a)
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
            down.append(b)
        while a != b:
            a, b = self.parent[a], self.parent[b]
            up.append(a)
            down.append(b)
        return up + down[-2::-1]

    def fundamental_cycle(self, g: Graph, e: int) -> list[int]:
        """Closed vertex walk ``u, v, ..., u`` around the cycle of non-tree edge ``e``.

        The walk leaves along ``e`` in its own orientation, then returns to the
        tail of ``e`` through the tree.
        """
        u, v = g.edges[e]
        return [u] + self.tree_path(v, u)


def spanning_structures(g: Graph, S: Iterable[int], a: int | None = None, odd_unicyclic: bool | None = None) -> SpanningStructure:
    """BFS spanning tree from the anchor ``a`` (default ``min(S)``), and for
    non-bipartite graphs the odd unicyclic subgraph formed by adding the first
    non-tree edge (in edge order) that closes an odd cycle.

    ``odd_unicyclic=True`` on a bipartite graph raises ``BipartiteNoOddCycle``;
    the default builds it exactly when the graph is non-bipartite.
    """
    S = sorted(set(S))
    if not S:
        raise EmptyMarkedSet("spanning structures need a marked anchor")
    if a is None:
        a = S[0]
    if a not in S:
        raise InvalidVertex(f"anchor {a} is not marked")
    if odd_unicyclic is None:
        odd_unicyclic = not g.is_bipartite
    if odd_unicyclic and g.is_bipartite:
        raise BipartiteNoOddCycle("bipartite graph has no odd cycle")

    parent = [-1] * g.n
    depth = [-1] * g.n
    depth[a] = 0
    tree = []
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                tree.append(g.edge_id(u, w))
                queue.append(w)
    tree_set = set(tree)

    odd_edge = None
    uni = None
    if odd_unicyclic:
        # in a BFS tree a non-tree edge closes an odd cycle iff its ends have equal depth
        odd_edge = next(j for j, (u, v) in enumerate(g.edges) if j not in tree_set and depth[u] == depth[v])
        uni = tuple(sorted(tree_set | {odd_edge}))
    return SpanningStructure(
        anchor=a,
        parent=tuple(parent),
        depth=tuple(depth),
        tree=tuple(sorted(tree)),
        odd_edge=odd_edge,
        odd_unicyclic=uni,
    )


@dataclass(frozen=True)
class KernelBasis:
    vectors: np.ndarray  # one integer vector per row
    alphabet: tuple[int, ...]
    space: str
    labels: tuple[str, ...] = ()

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def entries_in_alphabet(self) -> bool:
        return bool(np.isin(self.vectors, self.alphabet).all())

    def gram_determinant(self) -> int:
        """Exact determinant of the integer Gram matrix (Bareiss elimination)."""
        V = [[int(x) for x in row] for row in self.vectors.tolist()]
        G = [[sum(p * q for p, q in zip(r, s)) for s in V] for r in V]
        return _bareiss_det(G)


def _bareiss_det(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    M = [row[:] for row in M]
    sign, prev = 1, 1
    for i in range(n - 1):
        if M[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if M[r][i] != 0), None)
            if swap is None:
                return 0
            M[i], M[swap] = M[swap], M[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                M[r][c] = (M[r][c] * M[i][i] - M[r][i] * M[i][c]) // prev
        prev = M[i][i]
    return sign * M[n - 1][n - 1]


def _oriented(g: Graph, walk: Sequence[int]) -> np.ndarray:
    y = np.zeros(g.m, dtype=np.int64)
    for u, v in zip(walk, walk[1:]):
        y[g.edge_id(u, v)] += 1 if u < v else -1
    return y


def _alternating(g: Graph, walk: Sequence[int]) -> np.ndarray:
    y = np.zeros(g.m, dtype=np.int64)
    for i, (u, v) in enumerate(zip(walk, walk[1:])):
        y[g.edge_id(u, v)] += 1 if i % 2 == 0 else -1
    return y


def _closed_walk(g: Graph, edge_ids: Iterable[int]) -> list[int]:
    """Vertex walk around the single cycle formed by ``edge_ids``."""
    adj: dict[int, list[int]] = {}
    for j in edge_ids:
        u, v = g.edges[j]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = min(adj)
    walk, prev, cur = [start], None, start
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        walk.append(nxt)
        if nxt == start:
            return walk
        prev, cur = cur, nxt


def _cycle_edges(walk: Sequence[int], g: Graph) -> set[int]:
    return {g.edge_id(u, v) for u, v in zip(walk, walk[1:])}


def _rotate(closed: list[int], v: int) -> list[int]:
    i = closed.index(v)
    return closed[i:-1] + closed[:i] + [v]


def _dumbbell(g: Graph, st: SpanningStructure, c1: list[int], c2: list[int]) -> list[int]:
    """Closed walk: round odd cycle ``c1``, along the tree to odd cycle ``c2``,
    round it, and back.  Its alternating signs give ±2 on the connecting path."""
    v1, v2 = set(c1), set(c2)
    bridge = st.tree_path(c1[0], c2[0])
    i = max(t for t, x in enumerate(bridge) if x in v1)
    j = next(t for t in range(i, len(bridge)) if bridge[t] in v2)
    bridge = bridge[i : j + 1]
    w1, w2 = bridge[0], bridge[-1]
    return _rotate(c1, w1) + bridge[1:] + _rotate(c2, w2)[1:] + bridge[-2::-1]


def _require(g: Graph, S: Iterable[int]) -> tuple[int, ...]:
    S = marked_partition(g, S).S
    if not S:
        raise EmptyMarkedSet("kernel bases need a nonempty marked set")
    return S


def ker_C_basis(g: Graph, S: Iterable[int], struct: SpanningStructure | None = None) -> KernelBasis:
    """{0,±1} basis of ker(C_S̄): fundamental cycles, then anchor-to-b tree paths."""
    S = _require(g, S)
    if struct is None:
        struct = spanning_structures(g, S, odd_unicyclic=False)
    tree = set(struct.tree)
    vecs, labels = [], []
    for e in range(g.m):
        if e not in tree:
            vecs.append(_oriented(g, struct.fundamental_cycle(g, e)))
            labels.append(f"cycle{g.edges[e]}")
    for b in S:
        if b != struct.anchor:
            vecs.append(_oriented(g, struct.tree_path(struct.anchor, b)))
            labels.append(f"path({struct.anchor},{b})")
    return KernelBasis(_stack(vecs, g.m), (-1, 0, 1), "kerC", tuple(labels))


def ker_B_basis(g: Graph, S: Iterable[int], struct: SpanningStructure | None = None) -> KernelBasis:
    """Integer basis of ker(B_S̄).

    Bipartite graphs get alternating ±1 fundamental cycles and anchor paths.
    Otherwise the non-tree edges outside the odd unicyclic subgraph give even
    cycles or two-odd-cycle dumbbells, the anchor paths follow, and a final
    vector runs from the anchor to the odd cycle and around it (entries ±2 on
    the path, ±1 on the cycle).
    """
    S = _require(g, S)
    if struct is None:
        struct = spanning_structures(g, S)
    a = struct.anchor
    tree = set(struct.tree)
    vecs, labels = [], []
    if g.is_bipartite:
        for e in range(g.m):
            if e not in tree:
                vecs.append(_alternating(g, struct.fundamental_cycle(g, e)))
                labels.append(f"cycle{g.edges[e]}")
        for b in S:
            if b != a:
                vecs.append(_alternating(g, struct.tree_path(a, b)))
                labels.append(f"path({a},{b})")
        return KernelBasis(_stack(vecs, g.m), (-1, 0, 1), "kerB", tuple(labels))

    if struct.odd_edge is None:
        raise BipartiteNoOddCycle("structure lacks the odd unicyclic subgraph")
    c0 = struct.fundamental_cycle(g, struct.odd_edge)
    c0_edges = _cycle_edges(c0, g)
    for e in range(g.m):
        if e in tree or e == struct.odd_edge:
            continue
        ce = struct.fundamental_cycle(g, e)
        if (len(ce) - 1) % 2 == 0:
            walk = ce
            kind = "even"
        else:
            shared = _cycle_edges(ce, g) & c0_edges
            if shared:
                walk = _closed_walk(g, _cycle_edges(ce, g) ^ c0_edges)
                kind = "even"
            else:
                walk = _dumbbell(g, struct, ce, c0)
                kind = "dumbbell"
        vecs.append(_alternating(g, walk))
        labels.append(f"{kind}{g.edges[e]}")
    for b in S:
        if b != a:
            vecs.append(_alternating(g, struct.tree_path(a, b)))
            labels.append(f"path({a},{b})")
    # the anchor is the BFS root, so its tree path meets c0 first at c0's top vertex
    top = min(c0[:-1], key=lambda x: struct.depth[x])
    stem = struct.tree_path(a, top)
    walk = stem + _rotate(c0, top)[1:] + stem[-2::-1]
    vecs.append(_alternating(g, walk))
    labels.append(f"anchor({a})")
    return KernelBasis(_stack(vecs, g.m), (-2, -1, 0, 1, 2), "kerB", tuple(labels))


def _stack(vecs: list[np.ndarray], m: int) -> np.ndarray:
    return np.array(vecs, dtype=np.int64).reshape(len(vecs), m)


def lift_basis(kb: KernelBasis, inc: IncidenceSet) -> KernelBasis:
    """Arc vectors ``N y`` (kerC, 1-eigenspace) or ``M y`` (kerB, (-1)-eigenspace)."""
    if kb.space == "kerC":
        lifted, space = kb.vectors @ inc.N.T, "eig(+1)"
    elif kb.space == "kerB":
        lifted, space = kb.vectors @ inc.M.T, "eig(-1)"
    else:
        raise WrongSpaceTag(f"cannot lift a basis tagged {kb.space!r}")
    return KernelBasis(lifted.reshape(len(kb), inc.R.shape[0]), kb.alphabet, space, kb.labels)


def kernel_residual(kb: KernelBasis, g: Graph, S: Iterable[int]) -> np.ndarray:
    """Exact integer products ``C_S̄ y`` or ``B_S̄ y`` (rows per basis vector)."""
    part = marked_partition(g, S)
    if kb.space == "kerC":
        return kb.vectors @ part.C_Sbar.T
    if kb.space == "kerB":
        return kb.vectors @ part.B_Sbar.T
    raise WrongSpaceTag(kb.space)
