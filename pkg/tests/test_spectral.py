import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qwalkmix import complete, cycle, eig_projections, hypercube, petersen, pinv_diag, schur_complement
from qwalkmix.errors import NotSymmetric, SingularBlock
from qwalkmix.spectral import column_space_projection, numerical_rank, projection_distance


class TestEigProjections:
    @pytest.mark.parametrize(
        "g, spectrum",
        [
            (cycle(4), {2: 1, 0: 2, -2: 1}),
            (complete(4), {3: 1, -1: 3}),
            (hypercube(3), {3: 1, 1: 3, -1: 3, -3: 1}),
            (petersen(), {3: 1, 1: 5, -2: 4}),
        ],
    )
    def test_known_spectra(self, g, spectrum):
        dec = eig_projections(g.adjacency)
        got = {round(lam): mult for lam, mult in zip(dec.eigenvalues, dec.multiplicities)}
        assert got == spectrum
        assert list(dec.eigenvalues) == sorted(dec.eigenvalues, reverse=True)

    def test_projection_algebra(self):
        dec = eig_projections(petersen().adjacency)
        G = dec.projections
        assert np.allclose(sum(G), np.eye(10), atol=1e-12)
        for i, Gi in enumerate(G):
            assert np.allclose(Gi @ Gi, Gi, atol=1e-12)
            for Gj in G[i + 1:]:
                assert np.abs(Gi @ Gj).max() < 1e-12
        assert np.abs(dec.reconstruct() - petersen().adjacency).max() < 1e-12

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NotSymmetric):
            eig_projections(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_apply_function(self):
        dec = eig_projections(cycle(5).adjacency)
        A = cycle(5).adjacency.astype(float)
        assert np.allclose(dec.apply(lambda x: x**2), A @ A)


class TestSchur:
    def test_two_by_two(self):
        N = np.array([[4.0, 2.0], [2.0, 3.0]])
        assert schur_complement(N, [1])[0, 0] == pytest.approx(4 - 4 / 3)

    def test_empty_split_returns_matrix(self):
        N = np.eye(3)
        assert np.array_equal(schur_complement(N, []), N)

    def test_singular_block(self):
        N = np.array([[1.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        with pytest.raises(SingularBlock):
            schur_complement(N, [1, 2])

    @settings(max_examples=60, deadline=None)
    @given(
        arrays(np.float64, (6, 6), elements=st.floats(-3, 3)),
        st.integers(1, 5),
    )
    def test_determinant_and_psd_on_random_spd(self, X, cut):
        N = X @ X.T + 0.5 * np.eye(6)
        trail = list(range(cut, 6))
        Sc = schur_complement(N, trail)
        D = N[np.ix_(trail, trail)]
        assert np.linalg.det(N) == pytest.approx(np.linalg.det(Sc) * np.linalg.det(D), rel=1e-6)
        assert np.linalg.eigvalsh((Sc + Sc.T) / 2).min() > -1e-9


class TestHelpers:
    def test_pinv_diag(self):
        assert np.array_equal(pinv_diag(np.diag([2, 0, 4])), np.diag([0.5, 0.0, 0.25]))

    def test_projection_distance_and_rank(self):
        V = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        P = column_space_projection(V)
        assert numerical_rank(P) == 2
        assert projection_distance(P, column_space_projection(V @ np.array([[2.0, 1.0], [0.0, 3.0]]))) < 1e-12
        assert projection_distance(P, np.zeros((3, 3))) == pytest.approx(1.0)
