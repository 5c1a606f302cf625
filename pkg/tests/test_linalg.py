import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dimwit import linalg
from dimwit.errors import DomainError, ValidationError

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
matrices = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda s: arrays(float, s, elements=finite)
)


def test_svd_identity():
    s = linalg.svd(np.eye(2))
    np.testing.assert_allclose(s.singular_values, [1, 1])


def test_svd_rank_one_column():
    s = linalg.svd([[1, 0], [1, 0]])
    np.testing.assert_allclose(s.singular_values, [math.sqrt(2), 0], atol=1e-15)
    assert s.rank() == 1


def test_svd_all_ones_2x3():
    # M M^T = [[3, 3], [3, 3]] has eigenvalues 6 and 0
    s = linalg.svd(np.ones((2, 3)))
    np.testing.assert_allclose(s.singular_values, [math.sqrt(6), 0], atol=1e-12)


def test_svd_sign_convention():
    s = linalg.svd(-np.eye(3))
    for j in range(3):
        col = s.left_vectors[:, j]
        assert col[np.flatnonzero(np.abs(col) > 1e-12)[0]] > 0
    np.testing.assert_allclose(s.reconstruct(), -np.eye(3), atol=1e-12)


def test_svd_rejects_nonfinite():
    with pytest.raises(ValidationError):
        linalg.svd([[1.0, np.nan]])


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_svd_invariants(M):
    s = linalg.svd(M)
    scale = max(1.0, linalg.spectral_norm(M))
    assert np.all(np.diff(s.singular_values) <= 1e-12)
    assert linalg.spectral_norm(M - s.reconstruct()) <= 1e-10 * scale
    np.testing.assert_allclose(s.reconstruct(), M, atol=1e-9)
    U, V = s.left_vectors, s.right_vectors
    np.testing.assert_allclose(U.T @ U, np.eye(U.shape[1]), atol=1e-10)
    np.testing.assert_allclose(V.T @ V, np.eye(V.shape[1]), atol=1e-10)


@pytest.mark.parametrize(
    "M, p, expected",
    [
        (np.eye(2), 1, 2.0),
        ([[1, 0], [1, 0]], math.inf, math.sqrt(2)),
        ([[3, 0], [0, 4]], 2, 5.0),
        ([[3, 0], [0, 4]], 3, (27 + 64) ** (1 / 3)),
    ],
)
def test_schatten_values(M, p, expected):
    assert linalg.schatten_norm(M, p) == pytest.approx(expected, abs=1e-12)


def test_schatten_rejects_p_below_one():
    with pytest.raises(DomainError):
        linalg.schatten_norm(np.eye(2), 0.5)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_schatten_two_is_frobenius(M):
    assert abs(linalg.schatten_norm(M, 2) - np.sqrt(np.sum(M**2))) <= 1e-10 * max(1, np.abs(M).max())


def test_norm_ordering_and_triangle(rng):
    for _ in range(100):
        A = rng.normal(size=(4, 5))
        B = rng.normal(size=(4, 5))
        n1, n2, ninf = (linalg.schatten_norm(A, p) for p in (1, 2, math.inf))
        assert n1 + 1e-10 >= n2 >= ninf - 1e-10
        assert linalg.trace_norm(A + B) <= linalg.trace_norm(A) + linalg.trace_norm(B) + 1e-10
        assert linalg.inner_product(A, B) <= linalg.operator_norm(A) * linalg.trace_norm(B) + 1e-8


@pytest.mark.parametrize(
    "M, expected",
    [(np.diag([3.0, 1.0]), [3, 1]), ([[0, 1], [1, 0]], [1, -1])],
)
def test_hermitian_eig(M, expected):
    w, Q = linalg.hermitian_eig(M)
    np.testing.assert_allclose(w, expected, atol=1e-14)
    np.testing.assert_allclose(Q @ np.diag(w) @ Q.conj().T, M, atol=1e-12)


def test_hermitian_eig_complex(rng):
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    H = A + A.conj().T
    w, Q = linalg.hermitian_eig(H)
    assert np.all(np.diff(w) <= 0)
    assert linalg.spectral_norm(H - Q @ np.diag(w) @ Q.conj().T) <= 1e-10 * max(1, linalg.spectral_norm(H))


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        linalg.hermitian_eig([[0, 1], [0, 0]])


def test_inner_product():
    assert linalg.inner_product(np.eye(2), np.eye(2)) == 2.0
    A = np.arange(6.0).reshape(2, 3)
    B = np.ones((2, 3)) * 2
    assert linalg.inner_product(A, B) == linalg.inner_product(B, A) == 30.0
    with pytest.raises(ValidationError):
        linalg.inner_product(np.eye(2), np.eye(3))
