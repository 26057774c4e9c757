"""Assemble a deterministic analysis report for one ``(graph, marked set)``."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import analysis
from .eigenbasis import KernelBasis, ker_B_basis, ker_C_basis, kernel_residual, lift_basis, spanning_structures
from .graph import Graph, components, marked_partition, to_graph6
from .spectral import column_space_projection, inverse, numerical_rank, projection_distance
from .walk import (
    mixing_closed_form,
    mixing_projection_sum,
    mixing_time_average,
    transition_matrix,
    walk_eigensystem,
)

SECTIONS = ("mixing", "bounds", "bases", "classify")
DEFAULT_TOL = 1e-8


@dataclass
class AnalysisRequest:
    graph: Graph
    S: tuple[int, ...]
    sections: tuple[str, ...] = SECTIONS
    tol: float = DEFAULT_TOL
    oracle_T: int = 0
    include_U: bool = False
    source: str = ""
    table: bool = False
    csv: str | None = None
    out: str | None = None


@dataclass
class ReportDocument:
    data: dict
    violations: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 2 if self.violations else 0

    def to_json(self) -> str:
        return dumps(self.data) + "\n"


# ---------------------------------------------------------------- serialisation

def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return json.dumps(None)
    return format(x, ".17g")


def _is_scalar_row(v: Any) -> bool:
    return isinstance(v, list) and all(isinstance(x, (int, float, bool, type(None))) for x in v)


def dumps(obj: Any, indent: int = 0) -> str:
    """JSON text with floats printed to 17 significant digits and numeric
    rows kept on one line."""
    pad = "  " * indent
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist(), indent)
    if isinstance(obj, (list, tuple)):
        obj = list(obj)
        if not obj:
            return "[]"
        if _is_scalar_row(obj):
            return "[" + ", ".join(dumps(x) for x in obj) + "]"
        inner = ",\n".join(pad + "  " + dumps(x, indent + 1) for x in obj)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(pad + "  " + json.dumps(str(k)) + ": " + dumps(v, indent + 1) for k, v in obj.items())
        return "{\n" + inner + "\n" + pad + "}"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def labelled(M: np.ndarray, rows, cols) -> dict:
    return {"rows": [int(r) for r in rows], "cols": [int(c) for c in cols], "data": np.asarray(M, dtype=float).tolist()}


# ---------------------------------------------------------------- sections

def _bound_entry(b: analysis.BoundReport, rows) -> dict:
    return {
        "side": b.side,
        "bound": labelled(b.bound, rows, rows),
        "target": labelled(b.target, rows, rows),
        "gap": labelled(b.gap, rows, rows),
        "max_abs_gap": b.max_gap,
        "min_slack": float(b.slack.min(initial=0.0)),
        "holds": b.holds(),
        "tight": b.tight,
        "predicted_tight": b.predicted_tight,
    }


def _basis_entry(kb: KernelBasis, g: Graph, lifted: bool) -> list[dict]:
    out = []
    for label, vec in zip(kb.labels, kb.vectors):
        idx = np.flatnonzero(vec)
        if lifted:
            support = [[g.arcs[i][0], g.arcs[i][1], int(vec[i])] for i in idx]
        else:
            support = [[g.edges[i][0], g.edges[i][1], int(vec[i])] for i in idx]
        out.append({"label": label, "support": support})
    return out


def _vertex_cut_pairs(g: Graph, S) -> list[list[int]]:
    part = marked_partition(g, S)
    comps = components(g.n, g.edges, part.Sbar)
    if len(comps) < 2:
        return []
    pairs = []
    for i, ci in enumerate(comps):
        for j, cj in enumerate(comps):
            if i != j:
                pairs.extend([u, v] for u in ci for v in cj)
    return sorted(pairs)


def run_report(req: AnalysisRequest) -> ReportDocument:
    g, S, tol = req.graph, req.S, req.tol
    part = marked_partition(g, S)
    n = g.n
    verts = list(range(n))
    violations: list[str] = []
    notes: list[dict] = []
    dim = g.m - g.n + part.s

    data: dict[str, Any] = {
        "metadata": {
            "source": req.source,
            "graph6": to_graph6(g),
            "n": n,
            "edges": g.m,
            "k": g.k,
            "marked": list(part.S),
            "marked_count": part.s,
            "bipartite": g.is_bipartite,
            "connected": True,
            "sections": list(req.sections),
            "tol": tol,
        }
    }

    tm = transition_matrix(g, S)
    system = walk_eigensystem(g, S)
    closed = mixing_closed_form(g, S)

    if "mixing" in req.sections:
        projsum = mixing_projection_sum(g, S, system)
        agreement = float(np.abs(closed.Mhat - projsum.Mhat).max())
        colsum = closed.column_sum_error()
        mixing: dict[str, Any] = {
            "closed_form": labelled(closed.Mhat, verts, verts),
            "projection_sum": labelled(projsum.Mhat, verts, verts),
            "route_agreement": agreement,
            "column_sum_error": colsum,
            "min_entry": float(closed.Mhat.min()),
            "max_entry": float(closed.Mhat.max()),
        }
        if agreement > tol:
            violations.append(f"closed-form and projection-sum differ by {agreement:.3g}")
        if colsum > 1e-10:
            violations.append(f"column sums deviate from 1 by {colsum:.3g}")
        if req.oracle_T > 0:
            ta = mixing_time_average(g, S, req.oracle_T)
            err = float(np.abs(ta.Mhat - closed.Mhat).max())
            mixing["time_average"] = labelled(ta.Mhat, verts, verts)
            mixing["time_average_T"] = req.oracle_T
            mixing["time_average_error"] = err
        cut = _vertex_cut_pairs(g, S)
        cut_max = max((abs(closed.Mhat[u, v]) for u, v in cut), default=0.0)
        mixing["vertex_cut_zero_pairs"] = cut
        mixing["vertex_cut_max_entry"] = float(cut_max)
        if cut:
            notes.append({
                "topic": "vertex-cut",
                "text": "marked set separates X \\ S; entries between different components vanish",
                "pairs": len(cut),
                "max_entry": float(cut_max),
            })
        if req.include_U:
            mixing["U"] = {"arcs": [list(a) for a in g.arcs], "data": tm.U.tolist()}
        data["mixing"] = mixing

        eig = []
        for sp in system.spaces:
            src = None if sp.source is None else float(system.adjacency_decomposition.eigenvalues[sp.source])
            eig.append({"theta": sp.theta, "phase": [sp.phase.real, sp.phase.imag], "multiplicity": sp.rank,
                        "adjacency_eigenvalue": src})
        data["eigen"] = {
            "spaces": eig,
            "expected_pm1_dimension": dim,
            "rank_F1": numerical_rank(system.F1),
            "rank_Fm1": numerical_rank(system.Fm1),
            "orthogonality_residual": tm.orthogonality_residual(),
            "completeness_residual": float(np.abs(system.resolution_of_identity() - np.eye(2 * g.m)).max()),
            "reconstruction_residual": float(np.abs(system.reconstruct() - tm.U).max()),
        }
        if data["eigen"]["rank_F1"] != dim or data["eigen"]["rank_Fm1"] != dim:
            violations.append("rank of F1 or F-1 differs from |E|-|V|+|S|")
        notes.extend(_eigen_notes(g, part, system))

    if "bounds" in req.sections:
        rows_s, rows_sb = list(part.S), list(part.Sbar)
        lo = analysis.mss_lower_bound(g, S, closed)
        up = analysis.mss_upper_bound(g, S, closed)
        sb = analysis.msbar_lower_bound(g, S, closed)
        bounds: dict[str, Any] = {
            "mss_lower": _bound_entry(lo, rows_s),
            "mss_upper": _bound_entry(up, rows_s),
            "msbar_lower": _bound_entry(sb, rows_sb),
        }
        for b in (lo, up, sb):
            if not b.holds():
                violations.append(f"{b.name} bound violated (min slack {b.slack.min():.3g})")
            if b.tight != b.predicted_tight:
                violations.append(f"{b.name} tightness {b.tight} disagrees with prediction {b.predicted_tight}")
        if part.s == 1:
            rp = analysis.return_probability_bounds(g, part.S[0], closed)
            bounds["return_probability"] = {
                "value": float(closed.Mhat[part.S[0], part.S[0]]),
                "lower_forms": rp.lower_forms,
                "simplified_lower": rp.simplified_lower,
                "upper_forms": rp.upper_forms,
                "lower_tight": rp.lower.tight,
                "upper_tight": rp.upper.tight,
            }
            notes.append({
                "topic": "return-probability-upper",
                "text": "single-vertex upper bound taken from the general [S,S] bound; the simplified expressions omit its -L_S/(2k) = -1/2 term",
                "sharp": rp.upper_forms["sharp"],
                "simplified": rp.upper_forms["simplified"],
                "difference": rp.upper_forms["simplified"] - rp.upper_forms["sharp"],
            })
        if sb.predicted_tight:
            notes.append(_isolated_vertex_note(g, part, closed))
        data["bounds"] = bounds

    if "bases" in req.sections:
        st = spanning_structures(g, S)
        kc, kb = ker_C_basis(g, S, st), ker_B_basis(g, S, st)
        lc, lb = lift_basis(kc, g.incidence), lift_basis(kb, g.incidence)
        d1 = projection_distance(column_space_projection(lc.vectors.T.astype(float)), system.F1)
        d2 = projection_distance(column_space_projection(lb.vectors.T.astype(float)), system.Fm1)
        exact = (not np.any(kernel_residual(kc, g, S))) and (not np.any(kernel_residual(kb, g, S)))
        data["bases"] = {
            "anchor": st.anchor,
            "tree_edges": [list(g.edges[j]) for j in st.tree],
            "odd_unicyclic_extra_edge": None if st.odd_edge is None else list(g.edges[st.odd_edge]),
            "dimension": dim,
            "kerC": {"alphabet": list(kc.alphabet), "vectors": _basis_entry(kc, g, False)},
            "kerB": {"alphabet": list(kb.alphabet), "vectors": _basis_entry(kb, g, False)},
            "eig_plus1": {"vectors": _basis_entry(lc, g, True), "subspace_distance": d1},
            "eig_minus1": {"vectors": _basis_entry(lb, g, True), "subspace_distance": d2},
            "exact_kernel_check": exact,
        }
        if not exact or len(kc) != dim or len(kb) != dim or max(d1, d2) > tol:
            violations.append("combinatorial eigenbasis check failed")

    if "classify" in req.sections:
        cl = analysis.classify_mss(g, S, closed)
        eq = cl.equitability
        data["classification"] = {
            "symmetric": cl.symmetric,
            "psd": cl.psd,
            "uniform": cl.uniform,
            "degreeSeparating": cl.degree_separating,
            "walkEquitable": cl.walk_equitable,
            "walkEquitableWitness": None if eq.witness is None else {
                "u": eq.witness.u, "u2": eq.witness.u2,
                "source_set": list(eq.collection[eq.witness.source]),
                "target_set": list(eq.collection[eq.witness.target]),
                "eigenprojection": eq.witness.r,
                "values": [float(x) for x in eq.witness.values],
            },
            "neighborhoodStronglyCospectral": cl.neighborhood_strongly_cospectral,
            "oddCycleOrBipartite": cl.odd_cycle_or_bipartite,
            "theoremConsistent": cl.theorem_consistent,
            "minEigenvalue": cl.min_eigenvalue,
            "asymmetry": cl.asymmetry,
        }
        if not cl.theorem_consistent:
            violations.append("classification contradicts the walk-equitable characterisation")

    data["notes"] = notes
    data["violations"] = violations
    data["status"] = "invariant-violation" if violations else "ok"
    return ReportDocument(data, violations)


def _eigen_notes(g: Graph, part, system) -> list[dict]:
    """Numerical adjudication of two easily-misread formulas."""
    inc = g.incidence
    Dt, Dh = inc.Dt.astype(float), inc.Dh.astype(float)
    H = part.H.astype(float)
    Qinv = inverse(part.Q_Sbar)
    W = np.zeros((g.n, g.n))
    s_idx, sb_idx = np.asarray(part.S), np.asarray(part.Sbar)
    W[np.ix_(s_idx, s_idx)] = np.eye(part.s)
    W[np.ix_(sb_idx, s_idx)] = -Qinv @ H.T
    actual = system.Fm1 @ Dt.T
    with_minus = float(np.abs(actual - (Dt - Dh).T @ W / 2).max())
    with_plus = float(np.abs(actual - (Dt + Dh).T @ W / 2).max())
    unmarked = float(np.abs(actual[:, sb_idx]).max(initial=0.0))

    from .walk import closed_form_terms, mixing_projection_sum

    terms = closed_form_terms(g, part.S)
    alt = terms.minus.copy()
    Y = Qinv @ H.T
    k = terms.k
    alt[part.s:, :part.s] = (H.T - part.Q_Sbar.astype(float) @ Y**2) / (4 * k)
    ps = part.from_vertex_order(mixing_projection_sum(g, part.S, system).Mhat)
    lead_L = float(np.abs(terms.total() - ps).max())
    lead_Q = float(np.abs(terms.total() - terms.minus + alt - ps).max())
    return [
        {
            "topic": "F-1 Dt^T factor",
            "text": "(-1)-eigenprojection applied to Dt^T matches (Dt+Dh)^T, not (Dt-Dh)^T; it vanishes on unmarked starts",
            "residual_with_Dt_minus_Dh": with_minus,
            "residual_with_Dt_plus_Dh": with_plus,
            "max_on_unmarked_columns": unmarked,
        },
        {
            "topic": "M-1 [Sbar,S] leading factor",
            "text": "leading factor of the (-1) term's [Sbar,S] block: L_Sbar reproduces the projection sum; Q_Sbar is shown for comparison (the two coincide when X \\ S has no edges)",
            "discrepancy_with_L_Sbar": lead_L,
            "discrepancy_with_Q_Sbar": lead_Q,
        },
    ]


def _isolated_vertex_note(g: Graph, part, closed) -> dict:
    k = g.require_regular()
    Msb = closed.SbarSbar
    iso = [i for i in range(len(part.Sbar)) if part.A_Sbar[i].sum() == 0]
    edges = [i for i in range(len(part.Sbar)) if part.A_Sbar[i].sum() == 1]
    return {
        "topic": "Mhat[Sbar,Sbar] when X \\ S is a matching plus isolated vertices",
        "text": "isolated unmarked vertices carry 1/2 on the diagonal (the summation form), not 1/(2k^2)",
        "isolated_vertices": [part.Sbar[i] for i in iso],
        "isolated_diagonal": [float(Msb[i, i]) for i in iso],
        "displayed_isolated_value": 1 / (2 * k * k),
        "edge_vertices": [part.Sbar[i] for i in edges],
        "edge_block_entries": [[float(Msb[i, i]), float(Msb[i, j])] for i in edges
                               for j in np.flatnonzero(part.A_Sbar[i])],
        "edge_block_constant": (k + 2) / (4 * (k + 1)),
    }


def write_csv(M: np.ndarray, path: str) -> None:
    n = M.shape[0]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("u," + ",".join(str(v) for v in range(n)) + "\n")
        for u in range(n):
            fh.write(str(u) + "," + ",".join(_fmt_float(float(x)) for x in M[u]) + "\n")


def gnuplot_table(M: np.ndarray) -> str:
    """``u v value`` lines, one blank-line separated block per row (splot/matrix friendly)."""
    lines = ["# u v Mhat[u,v]"]
    for u in range(M.shape[0]):
        for v in range(M.shape[1]):
            lines.append(f"{u} {v} {_fmt_float(float(M[u, v]))}")
        lines.append("")
    return "\n".join(lines) + "\n"
