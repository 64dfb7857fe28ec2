"""Small dense complex linear algebra for two-qubit work.

Every routine accepts either a single ``(n, n)`` matrix or a stack of shape
``(..., n, n)``; stacks are what the quadrature code feeds in.

Basis convention: single-qubit index 0 is |1> and index 1 is |0>, so the
ordinary Kronecker product of the standard Pauli matrices yields 4x4 matrices
in the ordered basis {|11>, |10>, |01>, |00>}.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITIAN_ATOL = 1e-10
PSD_ATOL = 1e-12

BASIS_LABELS = ("11", "10", "01", "00")

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (I2, X, Y, Z)


class NotHermitian(ValueError):
    pass


class NotPSD(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a complex128 array of square matrices with finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch(f"expected square matrices, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def ket(label: str) -> np.ndarray:
    """Computational basis vector, e.g. ``ket("01")`` (or ``"1"`` for one qubit)."""
    if len(label) == 1:
        v = np.zeros(2, dtype=np.complex128)
        v[("1", "0").index(label)] = 1
        return v
    v = np.zeros(4, dtype=np.complex128)
    v[BASIS_LABELS.index(label)] = 1
    return v


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    return np.multiply.outer(v, np.conj(v)) if v.ndim == 1 else v[..., :, None] * np.conj(v[..., None, :])


def hermitian_eig(m, atol: float = HERMITIAN_ATOL) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix (or stack of them).

    Eigenvalues are returned in ascending order; the columns of
    ``eigenvectors`` form a unitary matrix.

    Raises:
        NotHermitian: if ``max|m - m^H|`` exceeds ``atol``.
    """
    a = as_matrix(m)
    asym = np.max(np.abs(a - dagger(a))) if a.size else 0.0
    if asym > atol:
        raise NotHermitian(f"matrix is not Hermitian (max asymmetry {asym:.3g})")
    # symmetrise so LAPACK sees exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (a + dagger(a)))
    return HermitianEig(w, v)


def _psd_eigvals(w: np.ndarray, rank_rtol: float) -> np.ndarray:
    lo = np.min(w)
    if lo < -PSD_ATOL:
        raise NotPSD(f"matrix has negative eigenvalue {lo:.3g}")
    top = np.max(w, axis=-1, keepdims=True)
    return np.where(w <= rank_rtol * top, 0.0, w)


def psd_eigvals(m, rank_rtol: float = 0.0) -> np.ndarray:
    """Ascending eigenvalues of a PSD matrix, clamped at zero.

    Eigenvalues in ``[-1e-12, 0)`` become exactly zero, as do positive ones
    up to ``rank_rtol`` times the largest eigenvalue.

    Raises:
        NotPSD: if an eigenvalue is below ``-1e-12``.
    """
    return _psd_eigvals(hermitian_eig(m).eigenvalues, rank_rtol)


def psd_sqrt(m, rank_rtol: float = 0.0) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    ``rank_rtol`` is an optional relative cut that treats roundoff-sized
    positive eigenvalues as zero; see :func:`psd_eigvals`.

    Raises:
        NotPSD: if an eigenvalue is below ``-1e-12``.
    """
    w, v = hermitian_eig(m)
    w = _psd_eigvals(w, rank_rtol)
    return (v * np.sqrt(w)[..., None, :]) @ dagger(v)


def singular_values(m) -> np.ndarray:
    """Singular values in descending order."""
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def matrix_exp_hermitian(m) -> np.ndarray:
    """``exp(m)`` for Hermitian ``m`` as ``V diag(e^w) V^H``."""
    w, v = hermitian_eig(m)
    return (v * np.exp(w)[..., None, :]) @ dagger(v)


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, in the fixed two-qubit basis."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise DimensionMismatch(f"kron expects two 2x2 matrices, got {a.shape} and {b.shape}")
    return np.kron(a, b)


def x_entries_max(m) -> float:
    """Largest magnitude among the entries that vanish for an X-shaped matrix."""
    a = as_matrix(m)
    mask = np.ones((4, 4), dtype=bool)
    idx = np.arange(4)
    mask[idx, idx] = False
    mask[idx, 3 - idx] = False
    return float(np.max(np.abs(a[..., mask])))
