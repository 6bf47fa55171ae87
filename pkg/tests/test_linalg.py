import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcomplexity import NotSymmetric, jacobi_eigh, symmetric_eigenvalues

# coin (0.2, 0.6): weighted Gram matrix and its eigenvalues, mpmath closed form
M_COIN = np.array([[0.75, 0.42247448713915890491], [0.42247448713915890491, 0.25]])
M_COIN_EIGS = (0.99090191717235668476, 0.0090980828276433152366)


@pytest.mark.parametrize(
    "a, expected",
    [
        (np.eye(2), (1.0, 1.0)),
        (np.array([[0.0, 1.0], [1.0, 0.0]]), (1.0, -1.0)),
        (M_COIN, M_COIN_EIGS),
        (np.array([[3.0]]), (3.0,)),
    ],
)
def test_known_spectra(a, expected):
    np.testing.assert_allclose(symmetric_eigenvalues(a), expected, atol=1e-10)


def test_rejects_nonsymmetric():
    with pytest.raises(NotSymmetric):
        symmetric_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(NotSymmetric):
        symmetric_eigenvalues(np.ones((2, 3)))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_against_lapack_and_reconstruction(n, seed):
    rng = np.random.default_rng(seed)
    b = rng.normal(size=(n, n))
    a = (b + b.T) / 2
    w, Q = jacobi_eigh(a)
    assert np.all(np.diff(w) <= 0)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a)[::-1], atol=1e-10)
    assert np.max(np.abs(a - Q @ np.diag(w) @ Q.T)) <= 1e-9
    np.testing.assert_allclose(Q.T @ Q, np.eye(n), atol=1e-12)


def test_repeated_eigenvalues():
    rng = np.random.default_rng(3)
    Q, _ = np.linalg.qr(rng.normal(size=(5, 5)))
    a = Q @ np.diag([2.0, 2.0, 2.0, -1.0, 0.0]) @ Q.T
    np.testing.assert_allclose(symmetric_eigenvalues(a), [2, 2, 2, 0, -1], atol=1e-10)
