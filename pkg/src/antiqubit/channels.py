"""Error machinery: dephasing, Pauli errors, mirror pairs, bit-flip code.

Dephasing decays the off-diagonals of a single-qubit density matrix by
exp(-t/tau); the mirror variant applies the same decay to an antiqubit
density matrix (sign-flipped off-diagonals), and the two commute with
sigma3-conjugation entry by entry. Keeping a qubit/antiqubit mirror pair
makes the decay invertible: the difference (rho - rho') isolates the
coherences, and rescaling by exp(+t/tau) recovers the initial state --
bounded at t/tau <= 20, past which the rescaling amplifies float noise
beyond any useful tolerance.

The repetition code is the plain 3-qubit bit-flip code: syndrome bits are
the (q0,q1) and (q1,q2) parities, which locate any single flip.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .states import (
    SIGMA1,
    SIGMA2,
    SIGMA3,
    DensityMatrix,
    Qubit,
    StateVector,
    apply_one_qubit,
)

MAX_RECONSTRUCT_RATIO = 20.0
MIRROR_DIAG_TOL = 1e-9

# syndrome (parity q0^q1, parity q1^q2) -> flipped qubit index (None = clean)
SYNDROME_TO_QUBIT = {(0, 0): None, (1, 0): 0, (1, 1): 1, (0, 1): 2}


@dataclass(frozen=True)
class DecoherenceParams:
    """Elapsed time and decoherence time, in the same (arbitrary) units."""

    t: float
    tau: float

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if self.t < 0:
            raise ValueError(f"t must be non-negative, got {self.t}")

    @property
    def decay(self) -> float:
        return float(np.exp(-self.t / self.tau))


class PauliLabel(Enum):
    SIGMA1 = "sigma1"
    SIGMA2 = "sigma2"
    SIGMA3 = "sigma3"

    @property
    def matrix(self) -> np.ndarray:
        return {"sigma1": SIGMA1, "sigma2": SIGMA2, "sigma3": SIGMA3}[self.value]


def _scaled_offdiag(rho: DensityMatrix, factor: float) -> DensityMatrix:
    if rho.dim != 2:
        raise ValueError(f"dephasing is defined for single qubits, got dim {rho.dim}")
    m = rho.mat.copy()
    m[0, 1] *= factor
    m[1, 0] *= factor
    return DensityMatrix(m)


def dephase(rho: DensityMatrix, p: DecoherenceParams) -> DensityMatrix:
    """Dephasing evolution: diagonal fixed, off-diagonals times exp(-t/tau)."""
    return _scaled_offdiag(rho, p.decay)


def dephase_mirror(rho_bar: DensityMatrix, p: DecoherenceParams) -> DensityMatrix:
    """Dephasing of an antiqubit density matrix (same decay, signs carried).

    Satisfies dephase_mirror(s3 rho s3, p) == s3 dephase(rho, p) s3 exactly.
    """
    return _scaled_offdiag(rho_bar, p.decay)


def pauli_error(q: Qubit, which: PauliLabel | str) -> Qubit:
    """Apply a single Pauli error to a qubit (true matrix action)."""
    label = PauliLabel(which) if not isinstance(which, PauliLabel) else which
    v = label.matrix @ q.amplitudes()
    return Qubit(v[0], v[1])


def mirror_reconstruct(
    rho_t: DensityMatrix,
    rho_bar_t: DensityMatrix,
    p: DecoherenceParams,
    diag_tol: float = MIRROR_DIAG_TOL,
) -> DensityMatrix:
    """Recover rho(0) from a dephased qubit/antiqubit mirror pair.

    Diagonal comes from (rho + rho')/2; off-diagonals from (rho - rho')/2
    rescaled by exp(+t/tau). The pair must descend from a common rho(0)
    at the same (t, tau): mismatched diagonals raise.
    """
    if p.t / p.tau > MAX_RECONSTRUCT_RATIO:
        raise ValueError(
            f"t/tau = {p.t / p.tau:g} exceeds the reconstruction limit {MAX_RECONSTRUCT_RATIO:g}"
        )
    if rho_t.dim != 2 or rho_bar_t.dim != 2:
        raise ValueError("mirror reconstruction is defined for single qubits")
    diag_dev = np.max(np.abs(np.diag(rho_t.mat) - np.diag(rho_bar_t.mat)))
    if diag_dev > diag_tol:
        raise ValueError(f"mirror pair diagonals differ by {diag_dev:.3e}; not a common-origin pair")
    avg = (rho_t.mat + rho_bar_t.mat) / 2
    diff = (rho_t.mat - rho_bar_t.mat) / 2
    out = np.diag(np.diag(avg)).astype(complex)
    gain = float(np.exp(p.t / p.tau))
    out[0, 1] = diff[0, 1] * gain
    out[1, 0] = diff[1, 0] * gain
    return DensityMatrix(out)


@dataclass(frozen=True)
class CodeWord3:
    """One logical qubit spread over three physical qubits.

    ``logical`` is the encoded basis bit, or None for a superposition
    alpha|000> + beta|111>.
    """

    logical: int | None
    physical: StateVector

    @classmethod
    def from_qubit(cls, q: Qubit) -> "CodeWord3":
        amps = np.zeros(8, dtype=complex)
        amps[0b000] = q.psi0
        amps[0b111] = q.psi1
        return cls(logical=None, physical=StateVector(amps))


def encode3(logical: int) -> CodeWord3:
    """Encode a basis bit: 0 -> |000>, 1 -> |111>."""
    if logical not in (0, 1):
        raise ValueError(f"logical bit must be 0 or 1, got {logical}")
    amps = np.zeros(8, dtype=complex)
    amps[0b111 if logical else 0b000] = 1.0
    return CodeWord3(logical=logical, physical=StateVector(amps))


def inject3(c: CodeWord3, which: int) -> CodeWord3:
    """Flip (sigma1) one physical qubit of a codeword."""
    if which not in (0, 1, 2):
        raise ValueError(f"qubit index must be in 0..2, got {which}")
    return CodeWord3(logical=c.logical, physical=apply_one_qubit(c.physical, SIGMA1, which))


def correct3(c: CodeWord3) -> tuple[CodeWord3, tuple[int, int]]:
    """Locate and undo a single bit flip; returns (corrected, syndrome).

    The syndrome is read from the basis support's parities, so
    superpositions are corrected without disturbing the logical content.
    At most one flip between encode and correct is assumed; a state whose
    support straddles syndrome subspaces is rejected.
    """
    amps = c.physical.amplitudes
    support = np.flatnonzero(np.abs(amps) > 1e-10)
    bits = [((i >> 2) & 1, (i >> 1) & 1, i & 1) for i in support]
    syndromes = {(b0 ^ b1, b1 ^ b2) for b0, b1, b2 in bits}
    if len(syndromes) != 1:
        raise ValueError(f"support spans {len(syndromes)} syndrome subspaces; not a single-flip state")
    syndrome = syndromes.pop()
    flipped = SYNDROME_TO_QUBIT[syndrome]
    state = c.physical if flipped is None else apply_one_qubit(c.physical, SIGMA1, flipped)
    logical = c.logical
    if logical is None:
        # basis codewords are recognizable after correction
        if abs(state.amplitudes[0b000]) > 1 - 1e-10:
            logical = 0
        elif abs(state.amplitudes[0b111]) > 1 - 1e-10:
            logical = 1
    return CodeWord3(logical=logical, physical=state), syndrome
