"""Entropies and the species ledger.

Two layers live here and are never silently interchanged:

* the computed layer — Shannon entropy of a distribution, von Neumann
  entropy of a density matrix, and the conditional entropy in both its
  subtraction form S(A|B) = S(AB) - S(B) and its conditional-amplitude-
  operator form -Tr[rho log2 exp(-sigma)], sigma = I (x) ln rho_B - ln rho_AB;
* the ledger layer — fixed bookkeeping values per species (+1 per cbit or
  qubit or ebit, -1 per antiqubit or antiebit, 0 for the information
  vacuum and for a whole EPR pair) used by the diagram conservation checks.

All public results are in bits; natural logs appear only inside the
operator form, where the base conversion happens once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import EIGENVALUE_FLOOR, kron, matrix_exp, matrix_ln, matrix_log2, partial_trace
from .states import DensityMatrix

# Ledger bits per unit of each species.
LEDGER_BITS = {
    "cbit": 1,
    "qubit": 1,
    "antiqubit": -1,
    "ebit": 1,
    "antiebit": -1,
    "vacuum": 0,
    "epr_pair": 0,
}

# Short species codes used by diagram files and trace reports.
SPECIES_CODES = {
    "cbit": "c",
    "qubit": "q",
    "antiqubit": "qbar",
    "ebit": "e",
    "antiebit": "ebar",
}
CODE_TO_TAG = {v: k for k, v in SPECIES_CODES.items()}
ANTI_CODE = {"e": "ebar", "ebar": "e", "q": "qbar", "qbar": "q"}


@dataclass(frozen=True)
class Species:
    """A ledger species with a multiplicity (e.g. two classical bits)."""

    tag: str
    multiplicity: int = 1

    def __post_init__(self):
        if self.tag not in LEDGER_BITS:
            raise ValueError(f"unknown species {self.tag!r}; expected one of {sorted(LEDGER_BITS)}")
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.multiplicity}")

    def code(self) -> str:
        base = SPECIES_CODES[self.tag]
        return base if self.multiplicity == 1 else f"{base}*{self.multiplicity}"


def ledger_value(s: Species) -> int:
    """Bookkeeping entropy of a species, in bits (may be negative)."""
    return LEDGER_BITS[s.tag] * s.multiplicity


@dataclass(frozen=True)
class VertexCheck:
    """One vertex's ledger balance: incoming bits vs outgoing bits."""

    vertex: str
    in_bits: float
    out_bits: float
    rule: str = ""

    @property
    def passed(self) -> bool:
        return self.in_bits == self.out_bits

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.vertex} {self.in_bits:g} {self.out_bits:g} {status}"


def shannon(p) -> float:
    """Shannon entropy -sum p log2 p, in bits; 0 log 0 contributes 0."""
    p = np.asarray(p, dtype=float)
    if np.any(p < -1e-12):
        raise ValueError(f"negative probability {p.min()!r}")
    total = float(p.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total!r}, expected 1")
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def von_neumann(rho: DensityMatrix) -> float:
    """von Neumann entropy -Tr[rho log2 rho], in bits."""
    w = rho.eigenvalues()
    w = np.clip(w, 0.0, None)
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))


def conditional_amplitude(
    rho_ab: DensityMatrix, dims: tuple[int, int], zero_policy: str = "strict"
) -> np.ndarray:
    """Conditional amplitude operator exp(-sigma), conditioning on B.

    sigma = I_A (x) ln rho_B - ln rho_AB. For a product state
    rho_A (x) rho_B this telescopes to rho_A (x) I_B. Strict mode requires
    full-rank inputs; support mode applies the eigenvalue floor inside
    both logs.
    """
    da, db = dims
    rho_b = partial_trace(rho_ab.mat, dims, keep="B")
    sigma = kron(np.eye(da), matrix_ln(rho_b, zero_policy)) - matrix_ln(rho_ab.mat, zero_policy)
    return matrix_exp(-sigma)


def conditional_entropy(
    rho_ab: DensityMatrix,
    dims: tuple[int, int],
    method: str = "subtraction",
    zero_policy: str = "strict",
) -> float:
    """Conditional entropy S(A|B) in bits; negative for entangled states.

    ``subtraction`` computes S(AB) - S(B) and is always defined.
    ``operator`` evaluates -Tr[rho_AB log2 exp(-sigma)] through the
    conditional amplitude operator; on full-rank states the two agree.
    """
    if method == "subtraction":
        rho_b = DensityMatrix(partial_trace(rho_ab.mat, dims, keep="B"))
        return von_neumann(rho_ab) - von_neumann(rho_b)
    if method == "operator":
        cond = conditional_amplitude(rho_ab, dims, zero_policy)
        # exp(-sigma) is positive definite, so the strict log is safe here.
        log_cond = matrix_log2(cond, zero_policy="strict")
        return float(-np.trace(rho_ab.mat @ log_cond).real)
    raise ValueError(f"method must be 'subtraction' or 'operator', got {method!r}")


def min_eigenvalue_floor() -> float:
    """The shared eigenvalue floor below which support mode truncates."""
    return EIGENVALUE_FLOOR
