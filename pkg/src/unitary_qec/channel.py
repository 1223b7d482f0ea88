"""Kraus channels: physical noise, the transformed channel and the roundtrip."""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .errors import ErrorModel
from .qstate import DEFAULT_TOL, density, fidelity, partial_trace_ancilla, tensor
from .unitary import CompleteUnitary, resolve_class_map

COMPLETENESS_TOL = 1e-9


class ChannelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """``rho -> sum_m K_m rho K_m^dagger``; completeness is checked on construction."""

    kraus_ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus_ops)
        if not ops:
            raise ChannelError("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if len(shape) != 2 or shape[0] != shape[1] or any(k.shape != shape for k in ops):
            raise ChannelError("Kraus operators must be square and of equal size")
        total = sum(k.conj().T @ k for k in ops)
        deficit = float(np.abs(total - np.eye(shape[0])).max())
        if deficit > COMPLETENESS_TOL:
            raise ChannelError(f"Kraus operators are not complete: max |sum K^dagger K - I| = {deficit:.3g}")
        object.__setattr__(self, "kraus_ops", ops)

    @property
    def dim(self) -> int:
        return self.kraus_ops[0].shape[0]

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return apply(self, rho)


def apply(channel: KrausChannel, rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (channel.dim, channel.dim):
        raise ValueError(f"state of shape {rho.shape} does not match channel dimension {channel.dim}")
    return sum(k @ rho @ k.conj().T for k in channel.kraus_ops)


def pauli_channel(model: ErrorModel) -> KrausChannel:
    """Dense Kraus form ``{sqrt(p_m) E_m}`` of an error model."""
    return KrausChannel(tuple(np.sqrt(p) * op.matrix() for p, op in model))


def apply_pauli_model(model: ErrorModel, rho: np.ndarray) -> np.ndarray:
    """Same as ``apply(pauli_channel(model), rho)`` without dense Paulis."""
    rho = np.asarray(rho, dtype=complex)
    return sum(p * op.conjugate(rho) for p, op in model if p)


def _unitary_matrix(u: CompleteUnitary | np.ndarray) -> np.ndarray:
    return u.matrix if isinstance(u, CompleteUnitary) else np.asarray(u, dtype=complex)


def transformed_kraus(u: CompleteUnitary | np.ndarray, model: ErrorModel) -> KrausChannel:
    """``{sqrt(p_m) U^dagger E_m U}``."""
    m = _unitary_matrix(u)
    if m.shape[0] != 2**model.n_qubits:
        raise ValueError("unitary and error model act on different spaces")
    md = m.conj().T
    return KrausChannel(tuple(np.sqrt(p) * (md @ op.apply(m)) for p, op in model))


def encoded_input(psi_or_rho: np.ndarray, n_qubits: int) -> np.ndarray:
    """``|e_0><e_0| (x) rho_B`` on ``n_qubits`` qubits."""
    x = np.asarray(psi_or_rho, dtype=complex)
    rho_b = density(x) if x.ndim == 1 else x
    e0 = np.zeros((2 ** (n_qubits - 1),) * 2, dtype=complex)
    e0[0, 0] = 1.0
    return tensor(e0, rho_b)


def apply_on_code_input(channel: KrausChannel, rho_b: np.ndarray) -> np.ndarray:
    """``channel(|e_0><e_0| (x) rho_B)`` using only the two input columns involved."""
    rho_b = np.asarray(rho_b, dtype=complex)
    out = np.zeros((channel.dim, channel.dim), dtype=complex)
    for k in channel.kraus_ops:
        cols = k[:, :2]
        out += cols @ rho_b @ cols.conj().T
    return out


def class_probabilities(u: CompleteUnitary, model: ErrorModel) -> np.ndarray:
    probs = np.zeros(u.class_count)
    for p, c in zip(model.probabilities, resolve_class_map(u, model)):
        probs[c] += p
    return probs


def ancilla_coherence(rho: np.ndarray, n_ancilla: int) -> float:
    """Largest entry of ``rho`` outside the ``|e_m><e_m| (x) B`` blocks."""
    da = 2**n_ancilla
    r = np.array(rho).reshape(da, -1, da, rho.shape[0] // da)
    idx = np.arange(da)
    r[idx, :, idx, :] = 0
    return float(np.abs(r).max())


@dataclass(frozen=True, eq=False)
class RoundtripReport:
    rho_out: np.ndarray
    marginal_fidelity: float
    ancilla_diagonal: np.ndarray
    class_probabilities: np.ndarray
    ancilla_deviation: float
    coherence: float
    expected_deviation: float

    def passed(self, tol: float = DEFAULT_TOL) -> bool:
        return (abs(1 - self.marginal_fidelity) <= tol and self.ancilla_deviation <= tol
                and self.coherence <= tol and self.expected_deviation <= tol)


def simulate_roundtrip(u: CompleteUnitary, model: ErrorModel, psi: np.ndarray) -> RoundtripReport:
    """Encode ``|e_0> (x) psi`` with U, apply the noise, decode with U^dagger."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2,):
        raise ValueError("the roundtrip takes a single-qubit state vector")
    m, md = u.matrix, u.dagger
    rho_in = encoded_input(psi, u.n_qubits)
    rho_out = md @ apply_pauli_model(model, m @ rho_in @ md) @ m
    probs = class_probabilities(u, model)
    da = 2**u.n_ancilla
    diag = np.einsum("aiai->a", rho_out.reshape(da, 2, da, 2)).real
    expected_diag = np.zeros(da)
    expected_diag[: len(probs)] = probs
    expected = tensor(np.diag(expected_diag), density(psi))
    return RoundtripReport(
        rho_out=rho_out,
        marginal_fidelity=fidelity(psi, partial_trace_ancilla(rho_out, u.n_ancilla)),
        ancilla_diagonal=diag,
        class_probabilities=probs,
        ancilla_deviation=float(np.abs(diag - expected_diag).max()),
        coherence=ancilla_coherence(rho_out, u.n_ancilla),
        expected_deviation=float(np.abs(rho_out - expected).max()),
    )


@dataclass(frozen=True)
class UnifiedResult:
    weight: float
    literal_distance: float
    renormalized_distance: float


def unified_identity(
    u: CompleteUnitary,
    model: ErrorModel,
    rho_b: np.ndarray,
    channel: KrausChannel | None = None,
) -> UnifiedResult:
    """Project the transformed channel's output back onto ``|e_0><e_0| (x) B``.

    ``literal_distance`` compares the projected state with ``p_0 rho``,
    ``renormalized_distance`` compares its B marginal, divided by the
    projection weight ``p_0``, with ``rho_B``.
    """
    rho_b = np.asarray(rho_b, dtype=complex)
    if rho_b.shape != (2, 2):
        raise ValueError("rho_B must be a single-qubit density matrix")
    channel = channel or transformed_kraus(u, model)
    p0 = float(class_probabilities(u, model)[0])
    if p0 <= 0:
        raise ChannelError("the no-error class has zero probability; the projection cannot be renormalized")
    out = apply_on_code_input(channel, rho_b)
    projected = np.zeros_like(out)
    projected[:2, :2] = out[:2, :2]
    rho = encoded_input(rho_b, u.n_qubits)
    reduced = partial_trace_ancilla(projected, u.n_ancilla) / p0
    return UnifiedResult(
        weight=float(np.trace(projected).real),
        literal_distance=float(np.abs(projected - p0 * rho).max()),
        renormalized_distance=float(np.abs(reduced - rho_b).max()),
    )


def unified_check(u: CompleteUnitary, model: ErrorModel, rho_b: np.ndarray,
                  channel: KrausChannel | None = None) -> float:
    """Renormalized distance; see :func:`unified_identity`."""
    return unified_identity(u, model, rho_b, channel).renormalized_distance


def unified_literal_check(u: CompleteUnitary, model: ErrorModel, rho_b: np.ndarray,
                          channel: KrausChannel | None = None) -> float:
    return unified_identity(u, model, rho_b, channel).literal_distance


def roundtrip_via_transformed(channel: KrausChannel, psi: np.ndarray) -> np.ndarray:
    """The roundtrip output computed as ``sum p_m E~_m rho_in E~_m^dagger``."""
    psi = np.asarray(psi, dtype=complex)
    return apply_on_code_input(channel, density(psi) if psi.ndim == 1 else psi)

