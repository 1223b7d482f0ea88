"""Pauli errors, error models, the Knill-Laflamme check and degenerate classes."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .codes import Code, CodeSpecError, iter_spec_lines
from .qstate import DEFAULT_TOL

GROUPING_TOL = 1e-8
ERROR_SPEC_SUM_TOL = 1e-9

_PHASES = (1, 1j, -1, -1j)
_PHASE_PREFIX = {"": 0, "+": 0, "+1": 0, "1": 0, "i": 1, "+i": 1, "-": 2, "-1": 2, "-i": 3}

# (a, b) -> (power of i, letter) for the single-qubit product a*b
_PRODUCT = {}
for _a in "IXYZ":
    _PRODUCT["I", _a] = (0, _a)
    _PRODUCT[_a, "I"] = (0, _a)
    _PRODUCT[_a, _a] = (0, "I")
for _a, _b, _c in ("XYZ", "YZX", "ZXY"):
    _PRODUCT[_a, _b] = (1, _c)
    _PRODUCT[_b, _a] = (3, _c)

_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliOperator:
    """``i**phase`` times a tensor product of single-qubit Paulis.

    ``letters[0]`` acts on qubit 1, the most significant bit.
    """

    letters: str
    phase: int = 0

    def __post_init__(self):
        if not self.letters or set(self.letters) - set("IXYZ"):
            raise ValueError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls("I" * n)

    @classmethod
    def single(cls, n: int, letter: str, qubit: int) -> PauliOperator:
        """``letter`` on ``qubit`` (1-based), identity elsewhere."""
        if not 1 <= qubit <= n:
            raise ValueError(f"qubit {qubit} out of range 1..{n}")
        return cls("I" * (qubit - 1) + letter + "I" * (n - qubit))

    @classmethod
    def parse(cls, token: str, n: int | None = None) -> PauliOperator:
        """Parse ``"XIZ"``, ``"-iXIZ"``, ``"X1"``, ``"X1Z3"`` or ``"I"``.

        The indexed forms need ``n``.  A bare ``"I"`` means the ``n``-qubit
        identity when ``n`` is given.
        """
        m = re.fullmatch(r"([+-]?i?1?|[+-])?([IXYZ0-9]+)", token.strip())
        if not m or m[1] not in _PHASE_PREFIX:
            raise ValueError(f"malformed Pauli token {token!r}")
        phase, body = _PHASE_PREFIX[m[1]], m[2]
        if body == "I" and n is not None:
            return cls("I" * n, phase)
        if re.fullmatch(r"[IXYZ]+", body):
            if n is not None and len(body) != n:
                raise ValueError(f"Pauli {body!r} has length {len(body)}, expected {n}")
            return cls(body, phase)
        parts = re.findall(r"([XYZ])(\d+)", body)
        if not parts or "".join(a + b for a, b in parts) != body:
            raise ValueError(f"malformed Pauli token {token!r}")
        if n is None:
            raise ValueError(f"indexed Pauli {token!r} needs the qubit count")
        letters = ["I"] * n
        for letter, q in parts:
            q = int(q)
            if not 1 <= q <= n:
                raise ValueError(f"qubit index {q} out of range 1..{n} in {token!r}")
            if letters[q - 1] != "I":
                raise ValueError(f"qubit {q} repeated in {token!r}")
            letters[q - 1] = letter
        return cls("".join(letters), phase)

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def coefficient(self) -> complex:
        return _PHASES[self.phase]

    @property
    def weight(self) -> int:
        return sum(c != "I" for c in self.letters)

    def is_identity(self) -> bool:
        return self.weight == 0 and self.phase == 0

    def label(self) -> str:
        """Short indexed form such as ``X4`` or ``X1Z2``; ``I`` for identity."""
        parts = [f"{c}{q}" for q, c in enumerate(self.letters, start=1) if c != "I"]
        prefix = ("", "i", "-", "-i")[self.phase]
        return prefix + ("".join(parts) or "I")

    def __str__(self) -> str:
        return ("", "i", "-", "-i")[self.phase] + self.letters

    def __matmul__(self, other: PauliOperator) -> PauliOperator:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        if other.n_qubits != self.n_qubits:
            raise ValueError("Pauli operators act on different numbers of qubits")
        phase = self.phase + other.phase
        letters = []
        for a, b in zip(self.letters, other.letters):
            k, c = _PRODUCT[a, b]
            phase += k
            letters.append(c)
        return PauliOperator("".join(letters), phase)

    def adjoint(self) -> PauliOperator:
        return PauliOperator(self.letters, -self.phase)

    def matrix(self) -> np.ndarray:
        m = np.array([[self.coefficient]], dtype=complex)
        for c in self.letters:
            m = np.kron(m, _MATRICES[c])
        return m

    @cached_property
    def _action(self) -> tuple[int, np.ndarray]:
        # P|x> = coeff[x] |x ^ flip>
        n = self.n_qubits
        idx = np.arange(2**n)
        flip = 0
        coeff = np.full(2**n, self.coefficient, dtype=complex)
        for q, c in enumerate(self.letters):
            shift = n - 1 - q
            bit = (idx >> shift) & 1
            if c in "XY":
                flip |= 1 << shift
            if c == "Z":
                coeff *= 1 - 2 * bit
            elif c == "Y":
                coeff *= np.where(bit == 0, 1j, -1j)
        return flip, coeff

    def apply(self, x: np.ndarray) -> np.ndarray:
        """``P @ x`` for a state vector or a matrix (acts on axis 0)."""
        x = np.asarray(x, dtype=complex)
        if x.shape[0] != 2**self.n_qubits:
            raise ValueError(f"operand has leading dimension {x.shape[0]}, expected {2**self.n_qubits}")
        flip, coeff = self._action
        out = np.empty_like(x)
        idx = np.arange(x.shape[0])
        out[idx ^ flip] = coeff.reshape((-1,) + (1,) * (x.ndim - 1)) * x
        return out

    def conjugate(self, rho: np.ndarray) -> np.ndarray:
        """``P rho P^dagger`` for a square matrix."""
        rho = np.asarray(rho, dtype=complex)
        flip, coeff = self._action
        if rho.shape != (coeff.size, coeff.size):
            raise ValueError(f"expected a {coeff.size}x{coeff.size} matrix, got {rho.shape}")
        perm = np.arange(coeff.size) ^ flip
        out = np.empty_like(rho)
        out[np.ix_(perm, perm)] = np.outer(coeff, coeff.conj()) * rho
        return out


@dataclass(frozen=True)
class ErrorModel:
    """Ordered Pauli error channel ``{sqrt(p_m) E_m}`` with ``E_0 = I``.

    Order is significant: it fixes which ancilla label each error receives.
    """

    probabilities: tuple[float, ...]
    operators: tuple[PauliOperator, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probabilities)
        ops = tuple(self.operators)
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "operators", ops)
        if len(probs) != len(ops) or not ops:
            raise ValueError("need one probability per operator and at least one operator")
        if len({op.n_qubits for op in ops}) != 1:
            raise ValueError("operators act on different numbers of qubits")
        if min(probs) < 0:
            raise ValueError(f"negative probability {min(probs)}")
        if abs(sum(probs) - 1) > DEFAULT_TOL:
            raise ValueError(f"probabilities sum to {sum(probs)!r}, not 1")
        if not ops[0].is_identity():
            raise ValueError(f"first error must be the identity, got {ops[0]}")
        if len(set(ops)) != len(ops):
            raise ValueError("duplicate error operators")

    @classmethod
    def uniform(cls, operators: Sequence[PauliOperator]) -> ErrorModel:
        return cls((1 / len(operators),) * len(operators), tuple(operators))

    @property
    def n_qubits(self) -> int:
        return self.operators[0].n_qubits

    def __len__(self) -> int:
        return len(self.operators)

    def __iter__(self):
        return iter(zip(self.probabilities, self.operators))

    def digest(self) -> list[list]:
        return [[str(op), p] for p, op in self]


# --- operator sequences ----------------------------------------------------

PAPER_SEQUENCE = ("I", "X4", "Z3", "X5", "Z2", "Y3", "X1", "X3",
                  "Z1", "Y5", "Z5", "X2", "Z4", "Y4", "Y1", "Y2")
CHOICE_I = ("I", "X1", "X2", "X3")
CHOICE_II = ("I", "X2", "X1", "X3")


def default_single_qubit_order(n: int) -> list[str]:
    return ["I"] + [f"{c}{q}" for c in "XYZ" for q in range(1, n + 1)]


def standard_single_qubit_set(n: int, order: Sequence[str] | None = None) -> list[PauliOperator]:
    """Identity followed by single-qubit Paulis in the given token order.

    ``order`` holds tokens like ``"I"``, ``"X4"``, ``"Z3"``; it defaults to
    ``I, X1..Xn, Y1..Yn, Z1..Zn``.
    """
    order = default_single_qubit_order(n) if order is None else list(order)
    ops = []
    for token in order:
        op = PauliOperator.parse(token, n)
        if op.weight > 1 or op.phase:
            raise ValueError(f"{token!r} is not a single-qubit Pauli")
        ops.append(op)
    if not ops or not ops[0].is_identity():
        raise ValueError("the sequence must start with I")
    if len(set(ops)) != len(ops):
        dup = next(o for o in ops if ops.count(o) > 1)
        raise ValueError(f"duplicate entry {dup.label()} in sequence")
    return ops


def _parse_probability(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"invalid probability {text!r}") from None


def _normalize_checked(probs: list[float], tol: float) -> list[float]:
    total = sum(probs)
    if abs(total - 1) > tol:
        raise ValueError(f"probabilities sum to {total!r}, not 1")
    if abs(total - 1) <= DEFAULT_TOL:
        return probs
    return [p / total for p in probs]


def parse_error_spec(text: str, n_qubits: int) -> ErrorModel | None:
    """Read the ``errors:`` block of code-spec text; ``None`` if absent.

    Each line is ``<prob> <pauli>``, e.g. ``0.25 XIIII`` or ``1/4 X1``.
    """
    probs, ops = [], []
    for line in iter_spec_lines(text):
        if line.block != "errors":
            continue
        parts = line.text.split()
        if len(parts) != 2:
            raise CodeSpecError(f"expected '<prob> <letters>', got {line.text!r}", line.lineno)
        try:
            probs.append(_parse_probability(parts[0]))
            ops.append(PauliOperator.parse(parts[1], n_qubits))
        except ValueError as exc:
            raise CodeSpecError(str(exc), line.lineno) from None
    if not ops:
        return None
    try:
        return ErrorModel(tuple(_normalize_checked(probs, ERROR_SPEC_SUM_TOL)), tuple(ops))
    except ValueError as exc:
        raise CodeSpecError(str(exc)) from None


def parse_error_list(text: str, n_qubits: int) -> ErrorModel:
    """Inline model: ``"I,X1,X2,X3"`` (uniform) or ``"0.7:I,0.3:X3"``."""
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise ValueError("empty error list")
    weighted = [":" in t for t in tokens]
    if any(weighted) and not all(weighted):
        raise ValueError("give a probability for every operator or for none")
    if all(weighted):
        pairs = [t.split(":", 1) for t in tokens]
        probs = _normalize_checked([_parse_probability(p) for p, _ in pairs], ERROR_SPEC_SUM_TOL)
        ops = [PauliOperator.parse(o, n_qubits) for _, o in pairs]
        return ErrorModel(tuple(probs), tuple(ops))
    return ErrorModel.uniform([PauliOperator.parse(t, n_qubits) for t in tokens])


def serialize_error_model(model: ErrorModel) -> str:
    return "errors:\n" + "".join(f"{p!r} {op}\n" for p, op in model)


# --- Knill-Laflamme --------------------------------------------------------

class KLVerdict(str, enum.Enum):
    PERFECT = "PERFECT"
    DEGENERATE = "DEGENERATE"
    FAIL = "FAIL"


class KLConditionError(ValueError):
    def __init__(self, report: KLReport):
        self.report = report
        m, n = report.worst_pair
        super().__init__(
            f"Knill-Laflamme condition fails for ({report.labels[m]}, {report.labels[n]}): "
            f"block {np.round(report.blocks[m, n], 12).tolist()}"
        )


class UnsupportedDegeneracyError(ValueError):
    """Degeneracy whose overlap is neither 0 nor of unit modulus."""


class OrthonormalityError(ValueError):
    def __init__(self, worst: float, pair: tuple[int, int]):
        self.worst = worst
        self.pair = pair
        super().__init__(f"syndrome states {pair} deviate from orthonormality by {worst:.3g}")


@dataclass(frozen=True, eq=False)
class KLReport:
    """Gram data of ``E_m|b_L>`` over all operator pairs.

    ``blocks[m, n]`` is the 2x2 matrix ``<a_L|E_m^dagger E_n|b_L>`` and
    ``alpha[m, n]`` its mean diagonal.
    """

    verdict: KLVerdict
    blocks: np.ndarray
    alpha: np.ndarray
    labels: tuple[str, ...]
    max_deviation: float
    perfect_deviation: float
    worst_pair: tuple[int, int]
    tol: float

    @property
    def failing_block(self) -> np.ndarray:
        return self.blocks[self.worst_pair]


def codeword_images(code: Code, ops: Iterable[PauliOperator]) -> np.ndarray:
    """Columns ``E_m|0_L>, E_m|1_L>`` interleaved, shape ``(2**n, 2*len(ops))``."""
    cw = np.stack(code.codewords, axis=1)
    cols = []
    for op in ops:
        if op.n_qubits != code.n_qubits:
            raise ValueError(f"operator {op} does not act on {code.n_qubits} qubits")
        cols.append(op.apply(cw))
    return np.concatenate(cols, axis=1)


def verify_kl_condition(code: Code, ops: Sequence[PauliOperator], tol: float = DEFAULT_TOL) -> KLReport:
    """Check ``P_C E_m^dagger E_n P_C = alpha_mn P_C`` and classify the code."""
    ops = list(ops.operators if isinstance(ops, ErrorModel) else ops)
    v = codeword_images(code, ops)
    k = len(ops)
    blocks = (v.conj().T @ v).reshape(k, 2, k, 2).transpose(0, 2, 1, 3)
    alpha = (blocks[..., 0, 0] + blocks[..., 1, 1]) / 2
    # deviation of each block from alpha * I
    structural = np.maximum.reduce([
        np.abs(blocks[..., 0, 1]),
        np.abs(blocks[..., 1, 0]),
        np.abs(blocks[..., 0, 0] - blocks[..., 1, 1]) / 2,
    ])
    perfect = np.abs(blocks - np.eye(k)[:, :, None, None] * np.eye(2)).max(axis=(2, 3))
    if structural.max() > tol:
        verdict = KLVerdict.FAIL
        worst = np.unravel_index(np.argmax(structural), structural.shape)
        deviation = structural.max()
    elif perfect.max() <= tol:
        verdict = KLVerdict.PERFECT
        worst = np.unravel_index(np.argmax(perfect), perfect.shape)
        deviation = perfect.max()
    else:
        verdict = KLVerdict.DEGENERATE
        worst = np.unravel_index(np.argmax(structural), structural.shape)
        deviation = structural.max()
    return KLReport(
        verdict=verdict,
        blocks=blocks,
        alpha=alpha,
        labels=tuple(op.label() for op in ops),
        max_deviation=float(deviation),
        perfect_deviation=float(perfect.max()),
        worst_pair=(int(worst[0]), int(worst[1])),
        tol=tol,
    )


def canonicalize_error_classes(
    code: Code, model: ErrorModel, tol: float = GROUPING_TOL
) -> tuple[ErrorModel, tuple[int, ...]]:
    """Group errors that act identically (up to a phase) on the code space.

    Returns the model of class representatives, each the first member in
    model order and carrying the summed class probability, together with the
    map from original index to class index.
    """
    report = verify_kl_condition(code, model.operators)
    if report.verdict is KLVerdict.FAIL:
        raise KLConditionError(report)
    images = codeword_images(code, model.operators)
    reps: list[int] = []
    class_map = []
    for k in range(len(model)):
        zero_k, one_k = images[:, 2 * k], images[:, 2 * k + 1]
        for c, r in enumerate(reps):
            phi = np.vdot(images[:, 2 * r], zero_k)
            if abs(phi) >= 1 - tol:
                if (np.abs(zero_k - phi * images[:, 2 * r]).max() > tol
                        or np.abs(one_k - phi * images[:, 2 * r + 1]).max() > tol):
                    raise UnsupportedDegeneracyError(
                        f"{model.operators[k].label()} matches {model.operators[r].label()} "
                        "on |0_L> but not with a common phase on |1_L>"
                    )
                class_map.append(c)
                break
            if abs(phi) > tol:
                raise UnsupportedDegeneracyError(
                    f"overlap |<0_L|{model.operators[r].label()}^dagger "
                    f"{model.operators[k].label()}|0_L>| = {abs(phi):.6g} is neither 0 nor 1"
                )
        else:
            class_map.append(len(reps))
            reps.append(k)
    probs = [0.0] * len(reps)
    for p, c in zip(model.probabilities, class_map):
        probs[c] += p
    reduced = ErrorModel(tuple(probs), tuple(model.operators[r] for r in reps))
    return reduced, tuple(class_map)


@dataclass(frozen=True, eq=False)
class SyndromeBasis:
    """Orthonormal states ``|m,+> = E_m|0_L>``, ``|m,-> = E_m|1_L>``."""

    code: Code
    operators: tuple[PauliOperator, ...]
    states: tuple[tuple[np.ndarray, np.ndarray], ...]
    class_map: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.class_map:
            object.__setattr__(self, "class_map", tuple(range(len(self.states))))

    @property
    def class_count(self) -> int:
        return len(self.states)

    def matrix(self) -> np.ndarray:
        """Columns ``|m,+>, |m,->`` in order ``2m + b``."""
        return np.stack([s for pair in self.states for s in pair], axis=1)


def build_syndrome_basis(
    code: Code,
    representatives: Sequence[PauliOperator] | ErrorModel,
    class_map: Sequence[int] | None = None,
    tol: float = DEFAULT_TOL,
) -> SyndromeBasis:
    """Images of the codewords under each representative, checked orthonormal."""
    ops = tuple(representatives.operators if isinstance(representatives, ErrorModel) else representatives)
    v = codeword_images(code, ops)
    gram = v.conj().T @ v
    dev = np.abs(gram - np.eye(gram.shape[0]))
    if dev.max() > tol:
        i, j = np.unravel_index(np.argmax(dev), dev.shape)
        raise OrthonormalityError(float(dev.max()), (int(i), int(j)))
    states = tuple((v[:, 2 * m].copy(), v[:, 2 * m + 1].copy()) for m in range(len(ops)))
    if class_map is not None and (max(class_map) >= len(ops) or min(class_map) < 0):
        raise ValueError("class_map refers to a missing representative")
    return SyndromeBasis(code, ops, states, tuple(class_map or ()))


def default_error_order(code_name: str, n: int) -> list[str]:
    """The operator sequence each builtin code is paired with."""
    if code_name == "bitflip3":
        return list(CHOICE_I)
    if code_name == "laflamme5-permuted":
        return list(PAPER_SEQUENCE)
    return default_single_qubit_order(n)
