"""Dense complex linear algebra on 2x2 and 4x4 matrices.

Matrices are plain complex128 ndarrays.  The working space is tiny (two
qubits), so the matrix exponential is done by Hermitian eigendecomposition
rather than scaling-and-squaring, which also hands us the spectrum for free.
"""

import numpy as np

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-12
DENSITY_TOL = 1e-10

_VALID_DIMS = (2, 4)


def as_cmat(m) -> np.ndarray:
    """Validate `m` as a square 2x2 or 4x4 matrix and cast it to complex128."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] not in _VALID_DIMS:
        raise ValueError(f"matrix dimension must be one of {_VALID_DIMS}, got {a.shape[0]}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(m.T)


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    a = as_cmat(m)
    return bool(np.max(np.abs(a - dagger(a))) <= tol)


def is_unitary(m, tol: float = UNITARY_TOL) -> bool:
    a = as_cmat(m)
    return bool(np.max(np.abs(dagger(a) @ a - np.eye(a.shape[0]))) <= tol)


def is_density(m, tol: float = DENSITY_TOL) -> bool:
    """Hermitian, unit trace, and eigenvalues >= -tol."""
    a = as_cmat(m)
    if not is_hermitian(a, tol):
        return False
    tr = np.trace(a)
    if abs(tr.real - 1.0) > tol or abs(tr.imag) > tol:
        return False
    evals = np.linalg.eigvalsh(0.5 * (a + dagger(a)))
    return bool(evals.min() >= -tol)


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 operators.

    Slot order is (first operand) x (second operand), i.e. two-qubit basis
    order |gg>, |ge>, |eg>, |ee>.
    """
    a = as_cmat(a)
    b = as_cmat(b)
    if a.shape[0] != 2 or b.shape[0] != 2:
        raise ValueError("kron expects two 2x2 operands")
    return np.kron(a, b)


def eig_hermitian(h, tol: float = HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and ``h = v @ diag(w) @ v†``.
    Raises ValueError if `h` is not Hermitian within `tol`.
    """
    a = as_cmat(h)
    if not is_hermitian(a, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(a)
    return w, v


def expm_unitary(h, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h, computed through the eigendecomposition."""
    w, v = eig_hermitian(h)
    return (v * np.exp(-1j * w * float(t))) @ dagger(v)
