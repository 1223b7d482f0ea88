"""Exact process tomography of the logical channel on the principle qubit."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channel import KrausChannel, apply_on_code_input, transformed_kraus
from .errors import ErrorModel
from .qstate import density, num_qubits, partial_trace_ancilla
from .unitary import CompleteUnitary

CHI_TOL = 1e-9

PAULI_BASIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
PAULI_LABELS = ("I", "X", "Y", "Z")

_s = np.sqrt(2) / 2
TOMOGRAPHY_INPUTS = (
    np.array([1, 0], dtype=complex),
    np.array([0, 1], dtype=complex),
    np.array([_s, _s], dtype=complex),
    np.array([_s, 1j * _s], dtype=complex),
)

ChannelMap = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class ProcessMatrix:
    """Single-qubit chi matrix in the (I, X, Y, Z) operator basis."""

    chi: np.ndarray

    def __post_init__(self):
        chi = np.asarray(self.chi, dtype=complex)
        if chi.shape != (4, 4):
            raise ValueError(f"chi must be 4x4, got {chi.shape}")
        if np.abs(chi - chi.conj().T).max() > CHI_TOL:
            raise ValueError("chi is not Hermitian")
        if abs(np.trace(chi) - 1) > CHI_TOL:
            raise ValueError(f"chi has trace {np.trace(chi):.6g}, expected 1")
        object.__setattr__(self, "chi", chi)


def logical_channel_map(
    u: CompleteUnitary | np.ndarray,
    model: ErrorModel,
    channel: KrausChannel | None = None,
) -> ChannelMap:
    """``rho_B -> Tr_A(E~(|e_0><e_0| (x) rho_B))`` for the transformed channel.

    Passing the identity matrix as ``u`` gives the unencoded baseline where the
    noise hits the bare principle qubit.
    """
    channel = channel or transformed_kraus(u, model)
    n_ancilla = num_qubits(channel.dim) - 1

    def channel_map(rho_b: np.ndarray) -> np.ndarray:
        return partial_trace_ancilla(apply_on_code_input(channel, rho_b), n_ancilla)

    return channel_map


def _process_design(inputs: Sequence[np.ndarray]) -> np.ndarray:
    # row (j, a, b), column (m, n): (P_m rho_j P_n^dagger)[a, b]
    rows = []
    for rho in inputs:
        blocks = [(pm @ rho @ pn.conj().T).reshape(-1) for pm in PAULI_BASIS for pn in PAULI_BASIS]
        rows.append(np.stack(blocks, axis=1))
    return np.concatenate(rows, axis=0)


_DESIGN = _process_design([density(psi) for psi in TOMOGRAPHY_INPUTS])


def sqpt(channel_map: ChannelMap) -> ProcessMatrix:
    """Reconstruct chi by linear inversion from the four canonical inputs."""
    outputs = np.concatenate([np.asarray(channel_map(density(psi))).reshape(-1) for psi in TOMOGRAPHY_INPUTS])
    assert np.linalg.matrix_rank(_DESIGN) == 16, "tomography inputs are not informationally complete"
    chi = np.linalg.solve(_DESIGN, outputs).reshape(4, 4)
    return ProcessMatrix(chi)


def chi_from_kraus(kraus_ops: Sequence[np.ndarray]) -> np.ndarray:
    """Closed form: expand each ``K = sum_m c_m P_m`` and sum ``c c^dagger``."""
    chi = np.zeros((4, 4), dtype=complex)
    for k in kraus_ops:
        c = np.array([np.trace(p.conj().T @ k) / 2 for p in PAULI_BASIS])
        chi += np.outer(c, c.conj())
    return chi


def process_fidelity(chi: ProcessMatrix) -> float:
    """Overlap ``chi[0, 0]`` with the identity process."""
    return float(chi.chi[0, 0].real)
