"""Dense state-vector and density-matrix helpers.

States and operators are plain ``numpy`` arrays of ``complex128``.  Qubit 1 is
the leftmost written qubit and the most significant bit of the basis index,
so ``|0001>`` is index 1.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-10


def num_qubits(dim: int) -> int:
    """Return ``n`` such that ``2**n == dim``; raise for non powers of two."""
    n = int(dim).bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def ket(bits: str) -> np.ndarray:
    """Computational basis ket from a bitstring such as ``"0101"``."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"invalid bitstring {bits!r}")
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def basis_state(index: int, n_qubits: int) -> np.ndarray:
    if not 0 <= index < 2**n_qubits:
        raise ValueError(f"index {index} out of range for {n_qubits} qubits")
    v = np.zeros(2**n_qubits, dtype=complex)
    v[index] = 1.0
    return v


def pure_state(amplitudes: Sequence[complex]) -> np.ndarray:
    """Validated, normalized state vector.

    The length must be a power of two and the norm nonzero.
    """
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    num_qubits(v.size)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("zero vector is not a state")
    return v / norm


def density(psi: np.ndarray) -> np.ndarray:
    """Projector ``|psi><psi|``."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def tensor(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product, leftmost factor on the most significant qubits."""
    if not factors:
        raise ValueError("tensor needs at least one operand")
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def is_density_matrix(rho: np.ndarray, tol: float = DEFAULT_TOL, psd_tol: float = 1e-8) -> bool:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.abs(rho - rho.conj().T).max() > tol:
        return False
    if abs(np.trace(rho) - 1) > tol:
        return False
    return np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() >= -psd_tol


def partial_trace_ancilla(rho: np.ndarray, n_ancilla: int) -> np.ndarray:
    """Trace out the ``n_ancilla`` most significant qubits of ``rho``.

    Returns the reduced density matrix on the remaining low-order qubits.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    n = num_qubits(rho.shape[0])
    if not 0 <= n_ancilla < n:
        raise ValueError(f"cannot trace {n_ancilla} ancilla qubits out of {n}")
    da = 2**n_ancilla
    db = rho.shape[0] // da
    return np.einsum("aiaj->ij", rho.reshape(da, db, da, db))


def is_unitary(u: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return unitarity_deviation(u) <= tol


def unitarity_deviation(u: np.ndarray) -> float:
    """Max-abs entry of ``u u^dagger - I``."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    return float(np.abs(u @ u.conj().T - np.eye(u.shape[0])).max())


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """State fidelity ``(tr sqrt(sqrt(a) b sqrt(a)))**2``.

    Either argument may be a state vector or a density matrix; when one is
    pure this reduces to ``<a|b|a>``, and to ``|<a|b>|**2`` when both are.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    if a.ndim == 1 and b.ndim == 1:
        f = abs(np.vdot(a, b)) ** 2
    elif a.ndim == 1:
        f = np.vdot(a, b @ a).real
    elif b.ndim == 1:
        f = np.vdot(b, a @ b).real
    else:
        w, v = np.linalg.eigh((a + a.conj().T) / 2)
        sqrt_a = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
        m = sqrt_a @ b @ sqrt_a
        f = np.sqrt(np.clip(np.linalg.eigvalsh((m + m.conj().T) / 2), 0, None)).sum() ** 2
    return float(min(max(f, 0.0), 1.0))


def max_abs(a: np.ndarray) -> float:
    return float(np.abs(a).max()) if np.size(a) else 0.0
