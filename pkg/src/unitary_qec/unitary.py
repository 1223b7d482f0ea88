"""The complete unitary: encoder built from the syndrome basis, inverse recovers."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .codes import Code
from .errors import ErrorModel, SyndromeBasis, build_syndrome_basis, canonicalize_error_classes
from .qstate import DEFAULT_TOL, basis_state, fidelity, num_qubits, tensor, unitarity_deviation

_DEPENDENT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CompleteUnitary:
    """``U`` with column ``2m + b`` equal to ``|m,+>`` (b=0) or ``|m,->`` (b=1).

    The domain is ancilla (``n - 1`` qubits, label ``|e_m>`` = integer ``m``)
    tensored with the last, least significant, principle qubit.
    """

    matrix: np.ndarray
    class_count: int
    class_map: tuple[int, ...]

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return num_qubits(self.dim)

    @property
    def n_ancilla(self) -> int:
        return self.n_qubits - 1

    @property
    def completion_dim(self) -> int:
        return self.dim - 2 * self.class_count

    @property
    def dagger(self) -> np.ndarray:
        return self.matrix.conj().T

    def input_state(self, psi: np.ndarray, m: int = 0) -> np.ndarray:
        """``|e_m> (x) |psi>``."""
        return tensor(basis_state(m, self.n_ancilla), psi)


def _orthonormal_completion(q: np.ndarray, dim: int) -> np.ndarray:
    # Gram-Schmidt of e_0, e_1, ... against the assigned columns, projected twice
    out = np.zeros((dim, dim), dtype=complex)
    k = q.shape[1]
    out[:, :k] = q
    for idx in range(dim):
        if k == dim:
            break
        v = np.zeros(dim, dtype=complex)
        v[idx] = 1.0
        basis = out[:, :k]
        for _ in range(2):
            v = v - basis @ (basis.conj().T @ v)
        norm = np.linalg.norm(v)
        if norm < _DEPENDENT_TOL:
            continue
        out[:, k] = v / norm
        k += 1
    assert k == dim, "orthonormal completion did not span the space"
    return out


def build_complete_unitary(basis: SyndromeBasis, tol: float = DEFAULT_TOL) -> CompleteUnitary:
    """Assemble the complete unitary from an orthonormal syndrome basis."""
    n = basis.code.n_qubits
    dim = 2**n
    if 2 * basis.class_count > dim:
        raise ValueError(f"{2 * basis.class_count} syndrome states do not fit in dimension {dim}")
    assigned = basis.matrix()
    u = _orthonormal_completion(assigned, dim)
    dev = unitarity_deviation(u)
    if dev > tol:
        raise AssertionError(f"constructed matrix is not unitary (deviation {dev:.3g})")
    return CompleteUnitary(u, basis.class_count, basis.class_map)


def complete_unitary_for(code: Code, model: ErrorModel, tol: float = DEFAULT_TOL) -> CompleteUnitary:
    """Canonicalize ``model`` on ``code``, build the syndrome basis and the unitary."""
    reduced, class_map = canonicalize_error_classes(code, model)
    return build_complete_unitary(build_syndrome_basis(code, reduced, class_map, tol), tol)


def check_encoding(u: CompleteUnitary, code: Code, psi: np.ndarray) -> float:
    """Fidelity of ``U(|e_0> (x) psi)`` with ``alpha|0_L> + beta|1_L>``."""
    return fidelity(u.matrix @ u.input_state(psi), code.encode(psi))


@dataclass(frozen=True)
class CorrectionResult:
    label: str
    class_index: int
    representative: bool
    fidelity: float
    exact_deviation: float


def resolve_class_map(u: CompleteUnitary, model: ErrorModel) -> tuple[int, ...]:
    """Class index of each error in ``model``.

    ``model`` is either the original model (matching ``u.class_map``) or the
    reduced model of class representatives.
    """
    if len(model) == len(u.class_map):
        return u.class_map
    if len(model) == u.class_count:
        return tuple(range(len(model)))
    raise ValueError(f"model has {len(model)} errors; unitary knows {len(u.class_map)} errors in {u.class_count} classes")


def check_correction(
    u: CompleteUnitary,
    model: ErrorModel,
    psi: np.ndarray,
    class_map: Sequence[int] | None = None,
) -> list[CorrectionResult]:
    """Per error, compare ``U^dagger E U (|e_0> (x) psi)`` with ``|e_c> (x) psi``.

    ``exact_deviation`` is the max-abs difference including the phase; it
    vanishes for class representatives, other members may differ by a phase.
    """
    class_map = tuple(class_map) if class_map is not None else resolve_class_map(u, model)
    encoded = u.matrix @ u.input_state(psi)
    seen = set()
    results = []
    for (_, op), c in zip(model, class_map):
        out = u.dagger @ op.apply(encoded)
        target = u.input_state(psi, c)
        results.append(CorrectionResult(
            label=op.label(),
            class_index=c,
            representative=c not in seen,
            fidelity=fidelity(out, target),
            exact_deviation=float(np.abs(out - target).max()),
        ))
        seen.add(c)
    return results


# --- matrix text format ----------------------------------------------------

def format_matrix(m: np.ndarray) -> str:
    """``dim N`` then N rows of ``re,im`` entries, 17 significant digits."""
    m = np.asarray(m, dtype=complex)
    lines = [f"dim {m.shape[0]}"]
    for row in m:
        lines.append(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("dim "):
        raise ValueError("matrix file must start with 'dim <N>'")
    dim = int(lines[0].split()[1])
    if len(lines) != dim + 1:
        raise ValueError(f"expected {dim} rows, found {len(lines) - 1}")
    m = np.empty((dim, dim), dtype=complex)
    for i, line in enumerate(lines[1:]):
        entries = line.split()
        if len(entries) != dim:
            raise ValueError(f"row {i} has {len(entries)} entries, expected {dim}")
        for j, entry in enumerate(entries):
            re_, im = entry.split(",")
            m[i, j] = complex(float(re_), float(im))
    return m


def export_matrix(u: CompleteUnitary | np.ndarray, path: str | Path) -> None:
    m = u.matrix if isinstance(u, CompleteUnitary) else u
    Path(path).write_text(format_matrix(m), encoding="utf-8")


def import_matrix(path: str | Path) -> np.ndarray:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))
