"""Qubit and antiqubit state algebra.

A qubit is a normalized two-component complex ket; its antiqubit is the
Dirac-adjoint row covector living in the dual space, obtained with the
2x2 gamma representation below. Density matrices cover both: the
antiqubit density matrix is the qubit one with sign-flipped off-diagonals
(equivalently, conjugation by sigma3).

Multi-qubit registers are plain normalized state vectors with big-endian
qubit order: qubit 0 is the leftmost tensor factor, so basis index i has
qubit t's bit at position (n-1-t).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DimensionError, as_complex_matrix, hermitian_eig, require_hermitian

NORM_TOL = 1e-10
MAKE_QUBIT_TOL = 1e-6

# Pauli matrices and the 2x2 gamma representation built from them.
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)


class DegenerateStateError(ValueError):
    """The zero vector cannot be normalized into a state."""


class NormalizationError(ValueError):
    """Amplitudes are too far from unit norm."""


@dataclass(frozen=True)
class GammaRep:
    """The 2x2 Clifford-algebra representation used for the Dirac adjoint."""

    gamma0: np.ndarray
    gamma1: np.ndarray
    gamma5: np.ndarray
    eta: np.ndarray


GAMMA = GammaRep(
    gamma0=np.array([[0, 1], [-1, 0]], dtype=complex),  # = i*sigma2
    gamma1=SIGMA3.copy(),
    gamma5=np.array([[0, 1], [-1, 0]], dtype=complex) @ SIGMA3,
    eta=np.diag([-1.0, 1.0]).astype(complex),
)

# Measurement projectors onto |0> and |1>, built from gamma1.
PROJ0 = (IDENTITY2 + GAMMA.gamma1) / 2
PROJ1 = (IDENTITY2 - GAMMA.gamma1) / 2


def clifford_check() -> dict[tuple[int, int], bool]:
    """Verify {gamma^mu, gamma^nu} = 2 eta^{mu,nu} I exactly, pair by pair."""
    gammas = (GAMMA.gamma0, GAMMA.gamma1)
    report = {}
    for mu in (0, 1):
        for nu in (0, 1):
            anti = gammas[mu] @ gammas[nu] + gammas[nu] @ gammas[mu]
            expected = 2 * GAMMA.eta[mu, nu] * IDENTITY2
            report[(mu, nu)] = bool(np.array_equal(anti, expected))
    return report


@dataclass(frozen=True)
class Qubit:
    """Normalized single-qubit ket psi0|0> + psi1|1>."""

    psi0: complex
    psi1: complex

    def __post_init__(self):
        norm2 = abs(self.psi0) ** 2 + abs(self.psi1) ** 2
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NormalizationError(f"|psi0|^2 + |psi1|^2 = {norm2!r}, expected 1")

    def amplitudes(self) -> np.ndarray:
        return np.array([self.psi0, self.psi1], dtype=complex)


@dataclass(frozen=True)
class Antiqubit:
    """Dual-space row covector c0<0| + c1<1|."""

    c0: complex
    c1: complex

    def __post_init__(self):
        norm2 = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NormalizationError(f"|c0|^2 + |c1|^2 = {norm2!r}, expected 1")

    def row(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)


def make_qubit(psi0: complex, psi1: complex, normalize: bool = False) -> Qubit:
    """Build a qubit, renormalizing to machine precision.

    Without ``normalize``, the amplitudes must already be within 1e-6 of
    unit norm; with it, any nonzero vector is accepted.
    """
    norm2 = abs(psi0) ** 2 + abs(psi1) ** 2
    if norm2 < 1e-24:
        raise DegenerateStateError("zero amplitudes do not define a state")
    if not normalize and abs(norm2 - 1.0) > MAKE_QUBIT_TOL:
        raise NormalizationError(
            f"|psi0|^2 + |psi1|^2 = {norm2!r} is not within {MAKE_QUBIT_TOL} of 1 "
            "(pass normalize=True to rescale)"
        )
    n = np.sqrt(norm2)
    return Qubit(complex(psi0) / n, complex(psi1) / n)


def dirac_adjoint(q: Qubit) -> Antiqubit:
    """psi† gamma0: the antiqubit row (-psi1*, psi0*)."""
    return Antiqubit(c0=-np.conj(q.psi1), c1=np.conj(q.psi0))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite complex matrix."""

    mat: np.ndarray

    def __post_init__(self):
        a = require_hermitian(self.mat, NORM_TOL)
        tr = np.trace(a).real
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond {NORM_TOL:.0e}")
        w = np.linalg.eigvalsh(a)
        if w[0] < -NORM_TOL:
            raise ValueError(f"negative eigenvalue {w[0]:.3e} beyond {NORM_TOL:.0e}")
        a.setflags(write=False)
        object.__setattr__(self, "mat", a)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eig(self.mat).eigenvalues


def density_of(q: Qubit) -> DensityMatrix:
    """Rank-1 density matrix |psi><psi|."""
    v = q.amplitudes()
    return DensityMatrix(np.outer(v, v.conj()))


def antiqubit_density(q: Qubit) -> DensityMatrix:
    """Antiqubit density matrix: |psi><psi| with sign-flipped off-diagonals.

    Equals sigma3 @ density_of(q) @ sigma3.
    """
    v = q.amplitudes()
    rho = np.outer(v, v.conj())
    rho[0, 1] = -rho[0, 1]
    rho[1, 0] = -rho[1, 0]
    return DensityMatrix(rho)


def project(q: Qubit, k: int) -> tuple[complex, float]:
    """Project onto basis state k; returns (amplitude, Born probability)."""
    if k not in (0, 1):
        raise ValueError(f"k must be 0 or 1, got {k}")
    amp = q.psi0 if k == 0 else q.psi1
    return amp, abs(amp) ** 2


@dataclass(frozen=True)
class StateVector:
    """Normalized register of n qubits (dim = 2^n), big-endian qubit order."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if a.ndim != 1 or a.size < 2 or a.size & (a.size - 1):
            raise DimensionError(f"amplitude count {a.size} is not a power of two >= 2")
        if not np.all(np.isfinite(a)):
            raise ValueError("amplitudes contain non-finite entries")
        norm2 = float(np.vdot(a, a).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NormalizationError(f"squared norm {norm2!r} deviates from 1")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


def qubit_state(q: Qubit) -> StateVector:
    return StateVector(q.amplitudes())


def product_state(*qubits: Qubit) -> StateVector:
    amps = np.array([1.0], dtype=complex)
    for q in qubits:
        amps = np.kron(amps, q.amplitudes())
    return StateVector(amps)


def apply_one_qubit(state: StateVector, u: np.ndarray, target: int) -> StateVector:
    """Apply a 2x2 unitary to one qubit of the register."""
    n = state.n_qubits
    if not 0 <= target < n:
        raise DimensionError(f"target {target} out of range for {n} qubits")
    u = as_complex_matrix(u)
    a = state.amplitudes.reshape(2**target, 2, 2 ** (n - 1 - target))
    out = np.einsum("ab,ibj->iaj", u, a).reshape(-1)
    return StateVector(out)


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    """Controlled-NOT between two register qubits."""
    n = state.n_qubits
    if control == target or not (0 <= control < n and 0 <= target < n):
        raise DimensionError(f"bad control/target ({control},{target}) for {n} qubits")
    amps = state.amplitudes.copy()
    cbit = 1 << (n - 1 - control)
    tbit = 1 << (n - 1 - target)
    idx = np.arange(amps.size)
    src = idx[(idx & cbit).astype(bool) & ~(idx & tbit).astype(bool)]
    amps[src], amps[src | tbit] = amps[src | tbit], amps[src].copy()
    return StateVector(amps)


def measure(state: StateVector, target: int, rng: np.random.Generator) -> tuple[int, StateVector]:
    """Measure one qubit in the computational basis (Born rule).

    Returns the outcome bit and the renormalized collapsed register.
    """
    n = state.n_qubits
    if not 0 <= target < n:
        raise DimensionError(f"target {target} out of range for {n} qubits")
    bits = (np.arange(state.dim) >> (n - 1 - target)) & 1
    p1 = float(np.sum(np.abs(state.amplitudes[bits == 1]) ** 2))
    p0 = float(np.sum(np.abs(state.amplitudes[bits == 0]) ** 2))
    if p0 < 1e-12 and p1 < 1e-12:
        raise ArithmeticError("both outcome probabilities below 1e-12; state is corrupt")
    outcome = 1 if rng.random() < p1 else 0
    p = p1 if outcome else p0
    collapsed = np.where(bits == outcome, state.amplitudes, 0.0) / np.sqrt(p)
    return outcome, StateVector(collapsed)


# Pauli factors defining the canonical Bell-state indexing: index k is
# (BELL_ENCODING[k] on the first qubit) applied to (|00> + |11>)/sqrt(2).
BELL_ENCODING = (IDENTITY2, SIGMA1, SIGMA3, SIGMA1 @ SIGMA3)


def bell_state(index: int) -> StateVector:
    """The four orthonormal Bell states; index 0 is (|00> + |11>)/sqrt(2)."""
    if index not in (0, 1, 2, 3):
        raise ValueError(f"Bell index must be in 0..3, got {index}")
    base = np.zeros(4, dtype=complex)
    base[0] = base[3] = 1 / np.sqrt(2)
    phi_plus = StateVector(base)
    if index == 0:
        return phi_plus
    return apply_one_qubit(phi_plus, BELL_ENCODING[index], 0)
