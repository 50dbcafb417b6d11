"""Transverse-field and Ising Hamiltonians on the 2^n computational basis.

The driver Hamiltonian is H0 = -sum_i X_i, whose ground state is the uniform
superposition at energy -n. The problem Hamiltonian is diagonal in the
computational basis and is defined so that its diagonal entry for basis state
s is exactly the network energy E(z; theta) of the spin pattern z encoded by
s, with couplings J = w and fields h = theta. Ordering is little endian
throughout: qubit i is bit 2**i of the state label (see `patterns`).

Everything here is dense, which is the point: the package targets small
registers (n <= 12 by default) where full 2^n state vectors and spectra are
exact and cheap.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .patterns import all_patterns, as_pattern, pattern_to_index

__all__ = [
    "MAX_QUBITS",
    "QubitBudgetError",
    "transverse_field_hamiltonian",
    "IsingHamiltonian",
    "ising_hamiltonian",
    "uniform_superposition",
    "answer_overlap",
    "ground_state_mass",
]

MAX_QUBITS = 12


class QubitBudgetError(ValueError):
    """Register size would exceed the dense-simulation cap."""


def _check_qubit_count(n: int, cap: int = MAX_QUBITS) -> None:
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    if n > cap:
        raise QubitBudgetError(
            f"n={n} qubits needs a dense {2**n}-dimensional basis; cap is {cap}"
        )


@lru_cache(maxsize=8)
def _transverse_field_cached(n: int) -> np.ndarray:
    dim = 1 << n
    h = np.zeros((dim, dim))
    for s in range(dim):
        for i in range(n):
            h[s, s ^ (1 << i)] = -1.0
    h.setflags(write=False)
    return h


def transverse_field_hamiltonian(n: int) -> np.ndarray:
    """Dense matrix of -sum_i X_i; entry -1 between states differing in one bit."""
    _check_qubit_count(n)
    return _transverse_field_cached(n).copy()


@dataclass(frozen=True)
class IsingHamiltonian:
    """Diagonal problem Hamiltonian with couplings J_ij and fields h_i."""

    couplings: np.ndarray
    fields: np.ndarray
    n: int

    def diagonal(self) -> np.ndarray:
        """Energies of all 2^n basis states, index-aligned with the basis."""
        z = all_patterns(self.n).astype(np.float64)
        quad = np.einsum("si,ij,sj->s", z, self.couplings, z)
        return -0.5 * quad - z @ self.fields

    def matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n representation."""
        return np.diag(self.diagonal())


def ising_hamiltonian(weights, bias) -> IsingHamiltonian:
    """Build the problem Hamiltonian from synaptic weights and a recall bias.

    ``bias`` is a `network.BiasSpec` or None (zero thresholds). The basis-state
    energies reproduce `network.network_energy` exactly, so the quantum ground
    state is the classical energy minimizer.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"weights must be square, got shape {w.shape}")
    n = w.shape[0]
    _check_qubit_count(n)
    if bias is None:
        theta = np.zeros(n)
    else:
        if bias.n != n:
            raise ValueError(f"bias length {bias.n} does not match n={n}")
        theta = bias.thresholds
    return IsingHamiltonian(couplings=w.copy(), fields=theta, n=n)


def uniform_superposition(n: int) -> np.ndarray:
    """Ground state of the driver: all 2^n amplitudes equal to 2^(-n/2)."""
    _check_qubit_count(n)
    dim = 1 << n
    return np.full(dim, 1.0 / np.sqrt(dim), dtype=complex)


def answer_overlap(state, answer) -> float:
    """Probability |<answer|psi>|^2 of measuring the given spin pattern."""
    psi = np.asarray(state)
    z = as_pattern(answer)
    if psi.shape != (1 << z.size,):
        raise ValueError(
            f"state dimension {psi.shape} does not match 2^{z.size} for the answer"
        )
    return float(np.abs(psi[pattern_to_index(z)]) ** 2)


def ground_state_mass(state, hamiltonian: IsingHamiltonian, tol: float = 1e-9) -> float:
    """Total probability the state assigns to the ground manifold of H1."""
    diag = hamiltonian.diagonal()
    members = np.abs(diag - diag.min()) <= tol
    return float(np.sum(np.abs(np.asarray(state)[members]) ** 2))
