"""Small dense complex linear algebra for two-qubit problems.

Matrices are plain ``numpy`` complex128 arrays. The Hermitian eigensolver is
a cyclic Jacobi iteration run by the kernel backend (compiled when
available), so results are deterministic for identical input.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import DimensionMismatch, NoConvergence, NotHermitian

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (I2, I4, *PAULIS):
    _m.setflags(write=False)

MAX_EIGEN_DIM = 8


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def kron(a, b) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    a = as_matrix(a)
    b = as_matrix(b)
    out = np.empty((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=complex)
    r, c = b.shape
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i * r:(i + 1) * r, j * c:(j + 1) * c] = a[i, j] * b
    return out


def partial_trace(rho, keep: str) -> np.ndarray:
    """Reduce a 4x4 two-qubit operator to subsystem ``"A"`` or ``"B"``."""
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionMismatch(f"partial_trace needs a 4x4 matrix, got {rho.shape}")
    t = rho.reshape(2, 2, 2, 2)  # indices (a, b, a', b')
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijik->jk", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def trace_product(a, b) -> complex:
    """``Tr(a @ b)`` without forming the full product."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0] or a.shape[0] != b.shape[1]:
        raise DimensionMismatch(f"cannot trace product of {a.shape} and {b.shape}")
    return complex(np.sum(a * b.T))


def is_hermitian(m, tol: float = 1e-12) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= tol)


def hermitian_eigen(h, tol: float = 1e-12, max_sweeps: int = 50) -> EigenDecomposition:
    """Eigen-decomposition of a Hermitian matrix of dimension at most 8.

    Eigenvalues are returned ascending, eigenvectors as unit-norm columns in
    the matching order. The input is symmetrised as ``(h + h^dag)/2`` after
    the Hermiticity check so rounding noise below ``tol`` does not leak in.

    Raises:
        NotHermitian: ``max|h - h^dag| > tol`` or ``h`` is not square.
        NoConvergence: the Jacobi sweep budget was exhausted.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise NotHermitian(f"matrix is not square: {h.shape}")
    if h.shape[0] > MAX_EIGEN_DIM:
        raise DimensionMismatch(f"dimension {h.shape[0]} exceeds {MAX_EIGEN_DIM}")
    if not np.all(np.isfinite(h)):
        raise NotHermitian("matrix has non-finite entries")
    if not is_hermitian(h, tol):
        dev = float(np.max(np.abs(h - dagger(h))))
        raise NotHermitian(f"max|H - H^dag| = {dev:.3e} exceeds tol {tol:.1e}")
    hs = np.ascontiguousarray(0.5 * (h + dagger(h)))
    w, v, sweeps = _backend.jacobi_eigh(hs, max_sweeps)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    order = np.argsort(w, kind="stable")
    vecs = v[:, order]
    vecs /= np.linalg.norm(vecs, axis=0)
    return EigenDecomposition(w[order], vecs)


def eigvalsh(h, tol: float = 1e-12) -> np.ndarray:
    return hermitian_eigen(h, tol).eigenvalues


def is_density(m, tol: float = 1e-9) -> bool:
    """Hermitian, unit trace and positive semidefinite, each within ``tol``."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1] or not np.all(np.isfinite(m)):
        return False
    if not is_hermitian(m, tol):
        return False
    if abs(np.trace(m) - 1.0) > tol:
        return False
    return bool(eigvalsh(m, tol)[0] >= -tol)
