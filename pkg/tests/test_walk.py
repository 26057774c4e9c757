import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwalkmix import (
    closed_form_terms,
    complete,
    cycle,
    hypercube,
    mixing_closed_form,
    mixing_matrix,
    mixing_projection_sum,
    mixing_time_average,
    path,
    petersen,
    transition_matrix,
    walk_eigensystem,
)
from qwalkmix.errors import EmptyMarkedSet, FullMarkedSet, NotRegular
from qwalkmix.walk import instantaneous_probabilities, numerical_eigensystem

from conftest import SUITE, make, suite_id


class TestTransitionMatrix:
    def test_arc_by_arc_on_c4(self):
        # coin acts at the tail, then the arc is reversed
        g = cycle(4)
        U = transition_matrix(g, [0]).U
        arcs = g.arcs
        # tail 1 unmarked, degree 2: Grover coin swaps (1,0) with (1,2), reversal gives (2,1)
        col = U[:, arcs.index((1, 0))]
        assert col[arcs.index((2, 1))] == pytest.approx(1.0)
        assert np.count_nonzero(np.abs(col) > 1e-12) == 1
        # tail 0 marked: the -I coin flips the sign before reversal
        col = U[:, arcs.index((0, 1))]
        assert col[arcs.index((1, 0))] == pytest.approx(-1.0)
        assert np.count_nonzero(np.abs(col) > 1e-12) == 1

    @pytest.mark.parametrize("case", SUITE, ids=suite_id)
    def test_real_orthogonal(self, case):
        tm = transition_matrix(make(case[0]), case[1])
        assert tm.orthogonality_residual() < 1e-12
        assert np.isrealobj(tm.U)

    def test_general_form_matches_regular(self):
        g = petersen()
        a = transition_matrix(g, [0, 5], form="regular").U
        b = transition_matrix(g, [0, 5], form="general").U
        assert np.abs(a - b).max() < 1e-14

    def test_irregular_general_form_is_orthogonal(self):
        assert transition_matrix(path(4), [1], form="general").orthogonality_residual() < 1e-12
        with pytest.raises(NotRegular):
            transition_matrix(path(4), [1], form="regular")


class TestEigensystem:
    @pytest.mark.parametrize("case", SUITE, ids=suite_id)
    def test_resolution_and_reconstruction(self, case):
        g, S = make(case[0]), case[1]
        sysm = walk_eigensystem(g, S)
        I = np.eye(2 * g.m)
        assert np.abs(sysm.resolution_of_identity() - I).max() < 1e-9
        assert np.abs(sysm.reconstruct() - transition_matrix(g, S).U).max() < 1e-9
        for sp in sysm.spaces:
            F = sp.projection
            assert np.abs(F @ F - F).max() < 1e-9

    @pytest.mark.parametrize("case", SUITE, ids=suite_id)
    def test_matches_schur_oracle(self, case):
        g, S = make(case[0]), case[1]
        ours = {round(sp.theta, 7): sp.projection for sp in walk_eigensystem(g, S).spaces if sp.rank}
        oracle = {round(th, 7): F for th, F in numerical_eigensystem(transition_matrix(g, S).U)}
        ours = {(-np.pi if np.isclose(k, np.pi) else k): v for k, v in ours.items()}
        oracle = {(-np.pi if np.isclose(k, np.pi) else k): v for k, v in oracle.items()}
        assert sorted(ours) == pytest.approx(sorted(oracle))
        for th, F in ours.items():
            key = min(oracle, key=lambda t: abs(t - th))
            assert np.abs(F - oracle[key]).max() < 1e-8

    @pytest.mark.parametrize("case", SUITE, ids=suite_id)
    def test_pm1_dimension(self, case):
        g, S = make(case[0]), case[1]
        sysm = walk_eigensystem(g, S)
        d = g.m - g.n + len(S)
        assert round(np.trace(sysm.F1).real) == d
        assert round(np.trace(sysm.Fm1).real) == d

    def test_requires_marked_and_unmarked(self):
        with pytest.raises(EmptyMarkedSet):
            walk_eigensystem(cycle(4), [])
        with pytest.raises(FullMarkedSet):
            walk_eigensystem(cycle(4), [0, 1, 2, 3])
        with pytest.raises(NotRegular):
            walk_eigensystem(path(4), [0])


class TestMixingRoutes:
    @pytest.mark.parametrize("case", SUITE, ids=suite_id)
    def test_closed_form_equals_projection_sum(self, case):
        g, S = make(case[0]), case[1]
        a, b = mixing_closed_form(g, S).Mhat, mixing_projection_sum(g, S).Mhat
        assert np.abs(a - b).max() <= 1e-9

    @pytest.mark.parametrize("case", [("C5", (0,)), ("K4", (0, 1)), ("Petersen", (0, 5))], ids=suite_id)
    def test_time_average_converges(self, case):
        g, S = make(case[0]), case[1]
        closed = mixing_closed_form(g, S).Mhat
        err_short = np.abs(mixing_time_average(g, S, 500).Mhat - closed).max()
        err_long = np.abs(mixing_time_average(g, S, 5000).Mhat - closed).max()
        assert err_long <= 20 / 5000
        assert err_long < err_short or err_short < 1e-12

    def test_instantaneous_columns_are_distributions(self):
        P = instantaneous_probabilities(petersen(), [0], 30)
        assert np.abs(P.sum(axis=1) - 1).max() < 1e-12
        assert P.min() > -1e-15

    def test_terms_total_matches(self):
        g = hypercube(3)
        terms = closed_form_terms(g, [0, 7])
        part = terms.part
        assert np.abs(part.to_vertex_order(terms.total()) - mixing_closed_form(g, [0, 7]).Mhat).max() < 1e-12

    def test_mixing_matrix_dispatch(self):
        g = cycle(5)
        assert mixing_matrix(g, [0], "projection-sum").route == "projection-sum"
        with pytest.raises(ValueError):
            mixing_matrix(g, [0], "guess")


class TestFrozenValues:
    """Values taken from the Schur-decomposition oracle and frozen."""

    def test_k2(self):
        assert np.abs(mixing_closed_form(complete(2), [0]).Mhat - 0.5).max() < 1e-12

    def test_c4_two_opposite_marked(self):
        M = mixing_closed_form(cycle(4), [0, 2]).Mhat
        assert np.allclose(M[:, 1], [0.25, 0.5, 0.25, 0.0], atol=1e-10)
        assert abs(M[3, 1]) < 1e-12

    def test_c5_single_marked_is_uniform(self):
        assert np.abs(mixing_closed_form(cycle(5), [0]).Mhat - 0.2).max() < 1e-12

    def test_k4_single_marked(self):
        M = mixing_closed_form(complete(4), [0]).Mhat
        assert M[0, 0] == pytest.approx(17 / 50, abs=1e-12)
        assert M[1, 0] == pytest.approx(11 / 50, abs=1e-12)
        assert M[0, 1] == pytest.approx(9 / 40, abs=1e-12)
        assert M[1, 1] == pytest.approx(113 / 360, abs=1e-12)
        assert M[2, 1] == pytest.approx(83 / 360, abs=1e-12)

    def test_petersen_return_probability(self):
        assert mixing_closed_form(petersen(), [0]).Mhat[0, 0] == pytest.approx(37 / 169, abs=1e-12)

    def test_k4_unmarked_edge_block(self):
        mm = mixing_closed_form(complete(4), [0, 1])
        assert np.abs(mm.SbarSbar - 5 / 16).max() < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SUITE), st.randoms(use_true_random=False))
def test_relabelling_permutes_mixing_matrix(case, rnd):
    g, S = make(case[0]), case[1]
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    M = mixing_closed_form(g, S).Mhat
    Mp = mixing_closed_form(h, [perm[v] for v in S]).Mhat
    p = np.asarray(perm)
    assert np.abs(Mp[np.ix_(p, p)] - M).max() < 1e-10
