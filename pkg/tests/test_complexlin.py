import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings

from qtele import complexlin as cl
from strategies import density, hermitian


@settings(max_examples=150, deadline=None)
@given(hermitian())
def test_eig_reconstructs_and_is_unitary(h):
    w, v = cl.hermitian_eig(h)
    assert np.all(np.diff(w) >= -1e-12)
    np.testing.assert_allclose(v @ v.conj().T, np.eye(4), atol=1e-12)
    np.testing.assert_allclose((v * w) @ v.conj().T, h, atol=1e-11)


@settings(max_examples=120, deadline=None)
@given(hermitian())
def test_matrix_exp_matches_scipy(h):
    h = 0.3 * h
    np.testing.assert_allclose(cl.matrix_exp_hermitian(h), scipy.linalg.expm(h), rtol=1e-10, atol=1e-12)


@settings(max_examples=120, deadline=None)
@given(density())
def test_psd_sqrt_squares_back(rho):
    root = cl.psd_sqrt(rho)
    np.testing.assert_allclose(root @ root, rho, atol=1e-12)
    np.testing.assert_allclose(root, root.conj().T, atol=1e-14)


def test_psd_sqrt_matches_scipy_on_fixed_state():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    np.testing.assert_allclose(cl.psd_sqrt(rho), scipy.linalg.sqrtm(rho), atol=1e-10)


def test_stacks_are_supported():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(5, 3, 4, 4))
    h = a + np.swapaxes(a, -1, -2)
    w, v = cl.hermitian_eig(h)
    assert w.shape == (5, 3, 4) and v.shape == (5, 3, 4, 4)


def test_rejects_non_hermitian():
    with pytest.raises(cl.NotHermitian):
        cl.hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_rejects_negative_eigenvalue():
    with pytest.raises(cl.NotPSD):
        cl.psd_sqrt(np.diag([1.0, -1e-6]))


def test_tiny_negative_eigenvalue_is_clamped():
    assert cl.psd_eigvals(np.diag([1.0, -1e-13]))[0] == 0.0


@pytest.mark.parametrize("bad", [np.zeros((2, 3)), np.zeros(4), [[np.nan, 0], [0, 1]]])
def test_rejects_malformed_input(bad):
    with pytest.raises(ValueError):
        cl.as_matrix(bad)


def test_kron_only_takes_single_qubit_factors():
    with pytest.raises(cl.DimensionMismatch):
        cl.kron(np.eye(4), np.eye(2))


def test_basis_order():
    # |1> is index 0, so Z|1> = |1> and the two-qubit basis runs 11, 10, 01, 00
    np.testing.assert_array_equal(cl.Z @ cl.ket("1"), cl.ket("1"))
    np.testing.assert_array_equal(np.kron(cl.ket("0"), cl.ket("1")), cl.ket("01"))
    assert cl.ket("11")[0] == 1 and cl.ket("00")[3] == 1


def test_x_entries_max():
    m = np.eye(4, dtype=complex)
    m[0, 3] = m[3, 0] = 0.5
    assert cl.x_entries_max(m) == 0.0
    m[0, 1] = 0.25
    assert cl.x_entries_max(m) == 0.25


def test_kron_examples_and_mixed_product():
    np.testing.assert_array_equal(cl.kron(cl.I2, cl.I2), np.eye(4))
    np.testing.assert_array_equal(cl.kron(cl.Z, cl.Z), np.diag([1, -1, -1, 1]))
    xx = cl.kron(cl.X, cl.X)
    np.testing.assert_array_equal(xx @ xx, np.eye(4))
    rng = np.random.default_rng(3)
    a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
    np.testing.assert_allclose(cl.kron(a, b) @ cl.kron(c, d), cl.kron(a @ c, b @ d), atol=1e-12)
    np.testing.assert_allclose(cl.kron(a + 2 * c, b), cl.kron(a, b) + 2 * cl.kron(c, b), atol=1e-12)


def test_exp_of_zero_is_identity():
    np.testing.assert_allclose(cl.matrix_exp_hermitian(np.zeros((4, 4))), np.eye(4), atol=1e-14)
