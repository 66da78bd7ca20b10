"""Dense complex linear algebra for small quantum registers.

Everything here operates on plain numpy arrays (complex128, row-major).
Matrices are tiny (side <= 16 in practice), so clarity beats asymptotics:
Kronecker products, partial traces, Hermitian eigendecompositions and
spectral matrix functions (exp/ln/log2) are all done densely.

Tolerances are module-level configuration so tests can tighten them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

# Module configuration. Defaults are the library contract; tests may override.
HERMITIAN_TOL = 1e-10
EIGENVALUE_FLOOR = 1e-12
MAX_SIDE = 256


class MatrixSizeError(ValueError):
    """Result would exceed the configured maximum matrix side."""


class DimensionError(ValueError):
    """Operand dimensions do not match the requested operation."""


class NotHermitianError(ValueError):
    """Input violates the Hermitian precondition."""


class SingularMatrixError(ValueError):
    """Strict matrix logarithm of a singular (or near-singular) matrix."""


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array (C order)."""
    a = np.ascontiguousarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    return a


def require_hermitian(m, tol: float | None = None) -> np.ndarray:
    """Return m as a complex matrix, raising NotHermitianError if m != m†."""
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    tol = HERMITIAN_TOL if tol is None else tol
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > tol:
        raise NotHermitianError(f"matrix deviates from Hermitian by {dev:.3e} (tol {tol:.0e})")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product a ⊗ b."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows > MAX_SIDE or cols > MAX_SIDE:
        raise MatrixSizeError(f"kron result {rows}x{cols} exceeds maximum side {MAX_SIDE}")
    return np.kron(a, b)


def partial_trace(m, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Trace out one tensor factor of a (dA*dB) x (dA*dB) matrix.

    ``keep="A"`` returns the dA x dA reduction (B traced out); ``keep="B"``
    the dB x dB reduction. The full trace is preserved.
    """
    m = as_complex_matrix(m)
    da, db = dims
    if da < 1 or db < 1:
        raise DimensionError(f"subsystem dimensions must be positive, got {dims}")
    if m.shape != (da * db, da * db):
        raise DimensionError(f"matrix side {m.shape[0]} does not equal dA*dB = {da * db}")
    t = m.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors`` holds the
    matching orthonormal eigenvectors as columns, so
    V @ diag(w) @ V† reconstructs the input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(m, tol: float | None = None) -> HermitianEigen:
    """Eigendecompose a Hermitian matrix (ascending eigenvalues)."""
    a = require_hermitian(m, tol)
    w, v = np.linalg.eigh(a)
    return HermitianEigen(eigenvalues=w, eigenvectors=v)


def matrix_func(m, f: Callable[[np.ndarray], np.ndarray], zero_policy: str = "strict") -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    ``zero_policy="support"`` maps eigenvalues below EIGENVALUE_FLOOR to 0
    under f (the 0·log 0 = 0 convention); ``"strict"`` applies f everywhere
    and raises SingularMatrixError if that produces a non-finite value.
    """
    if zero_policy not in ("strict", "support"):
        raise ValueError(f"zero_policy must be 'strict' or 'support', got {zero_policy!r}")
    eig = hermitian_eig(m)
    w = eig.eigenvalues
    if zero_policy == "support":
        fw = np.zeros_like(w)
        on = w > EIGENVALUE_FLOOR
        if np.any(on):
            fw[on] = f(w[on])
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            fw = np.asarray(f(w), dtype=float)
        if not np.all(np.isfinite(fw)):
            bad = w[~np.isfinite(fw)][0]
            raise SingularMatrixError(
                f"eigenvalue {bad:.6e} is outside the domain of the requested function"
            )
    v = eig.eigenvectors
    return (v * fw) @ v.conj().T


def matrix_exp(m) -> np.ndarray:
    """exp(m) for Hermitian m."""
    return matrix_func(m, np.exp)


def matrix_ln(m, zero_policy: str = "strict") -> np.ndarray:
    """Natural log of a Hermitian positive (semi)definite matrix."""
    return _matrix_log(m, np.log, zero_policy)


def matrix_log2(m, zero_policy: str = "strict") -> np.ndarray:
    """Base-2 log of a Hermitian positive (semi)definite matrix."""
    return _matrix_log(m, np.log2, zero_policy)


def _matrix_log(m, f, zero_policy: str) -> np.ndarray:
    if zero_policy == "strict":
        w = hermitian_eig(m).eigenvalues
        if w[0] <= EIGENVALUE_FLOOR:
            raise SingularMatrixError(
                f"eigenvalue {w[0]:.6e} is at or below the floor {EIGENVALUE_FLOOR:.0e}; "
                "matrix log undefined in strict mode"
            )
    return matrix_func(m, f, zero_policy)
