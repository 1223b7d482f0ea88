"""Single-logical-qubit codes: data type, builtin catalogue, text format.

Code-spec text format (UTF-8, line oriented)::

    # comment
    code laflamme5
    qubits 5
    zero:
    -1|00000>
    +1|01111>
    ...
    one:
    ...
    errors:          # optional, read by :func:`unitary_qec.errors.parse_error_spec`
    0.5 IIIII
    0.5 XIIII

Terms are ``<sign><coeff>|<bits>>``; the sign and coefficient are optional
and default to ``+1``.  Both ASCII ``-`` and the Unicode minus are accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .qstate import DEFAULT_TOL

ORTHOGONALITY_TOL = 1e-8


class CodeSpecError(ValueError):
    """Malformed code-spec text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NonOrthogonalCodewordsError(CodeSpecError):
    def __init__(self, overlap: complex, line: int | None = None):
        self.overlap = overlap
        super().__init__(f"codewords are not orthogonal: |<0_L|1_L>| = {abs(overlap):.3g}", line)


@dataclass(frozen=True, eq=False)
class Code:
    """A code protecting one logical qubit in ``n_qubits`` physical qubits.

    The codewords are stored normalized; whatever is passed in is divided by
    its norm.
    """

    name: str
    n_qubits: int
    logical_zero: np.ndarray
    logical_one: np.ndarray

    def __post_init__(self):
        zero = _normalized(self.logical_zero, self.n_qubits, "logical_zero")
        one = _normalized(self.logical_one, self.n_qubits, "logical_one")
        overlap = np.vdot(zero, one)
        if abs(overlap) > ORTHOGONALITY_TOL:
            raise NonOrthogonalCodewordsError(overlap)
        zero.setflags(write=False)
        one.setflags(write=False)
        object.__setattr__(self, "logical_zero", zero)
        object.__setattr__(self, "logical_one", one)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @property
    def codewords(self) -> tuple[np.ndarray, np.ndarray]:
        return self.logical_zero, self.logical_one

    @property
    def projector(self) -> np.ndarray:
        """Projector onto the code space, ``|0_L><0_L| + |1_L><1_L|``."""
        z, o = self.codewords
        return np.outer(z, z.conj()) + np.outer(o, o.conj())

    def encode(self, psi: np.ndarray) -> np.ndarray:
        """``alpha|0_L> + beta|1_L>`` for ``psi = alpha|0> + beta|1>``."""
        psi = np.asarray(psi, dtype=complex)
        if psi.shape != (2,):
            raise ValueError("encode expects a single-qubit state vector")
        return psi[0] * self.logical_zero + psi[1] * self.logical_one


def _normalized(v, n: int, label: str) -> np.ndarray:
    v = np.array(v, dtype=complex).reshape(-1)
    if v.size != 2**n:
        raise ValueError(f"{label} has {v.size} amplitudes, expected {2**n}")
    norm = np.linalg.norm(v)
    if norm == 0:
        raise CodeSpecError(f"{label} is the zero vector")
    return v / norm


def from_terms(name: str, zero: Sequence[tuple[float, str]], one: Sequence[tuple[float, str]]) -> Code:
    """Build a code from ``(coefficient, bitstring)`` term lists."""
    n = len((zero or one)[0][1])
    return Code(name, n, _state_from_terms(zero, n), _state_from_terms(one, n))


def _state_from_terms(terms, n: int) -> np.ndarray:
    v = np.zeros(2**n, dtype=complex)
    for coeff, bits in terms:
        if len(bits) != n:
            raise CodeSpecError(f"bitstring {bits!r} has length {len(bits)}, expected {n}")
        v[int(bits, 2)] += coeff
    return v


# Codeword term lists.  laflamme5 and laflamme5-permuted are reproduced with the
# signs as printed; the remaining codes follow docs/codes.md.
_BITFLIP3 = ([(1, "000")], [(1, "111")])

_LAFLAMME5 = (
    [(-1, "00000"), (1, "01111"), (-1, "10011"), (1, "11100"),
     (1, "00110"), (1, "01001"), (1, "10101"), (1, "11010")],
    [(-1, "11111"), (1, "10000"), (1, "01100"), (-1, "00011"),
     (1, "11001"), (1, "10110"), (-1, "01010"), (-1, "00101")],
)

_LAFLAMME5_PERMUTED = (
    [(-1, "00000"), (1, "00101"), (1, "01010"), (1, "01111"),
     (1, "10011"), (-1, "10110"), (1, "11001"), (1, "11100")],
    [(-1, "00011"), (-1, "00110"), (1, "01001"), (-1, "01100"),
     (1, "10000"), (1, "10101"), (1, "11010"), (-1, "11111")],
)

_STEANE7_EVEN = ["0000000", "1010101", "0110011", "1100110",
                 "0001111", "1011010", "0111100", "1101001"]
_STEANE7 = (
    [(1, w) for w in _STEANE7_EVEN],
    [(1, "".join("1" if c == "0" else "0" for c in w)) for w in _STEANE7_EVEN],
)

_BDSW5 = (
    [(1, "00000"), (1, "10010"), (1, "01001"), (1, "10100"),
     (1, "01010"), (-1, "11011"), (-1, "00110"), (-1, "11000"),
     (-1, "11101"), (-1, "00011"), (-1, "11110"), (-1, "01111"),
     (-1, "10001"), (-1, "01100"), (-1, "10111"), (1, "00101")],
    [(1, "11111"), (1, "01101"), (1, "10110"), (1, "01011"),
     (1, "10101"), (-1, "00100"), (-1, "11001"), (-1, "00111"),
     (-1, "00010"), (-1, "11100"), (-1, "00001"), (-1, "10000"),
     (-1, "01110"), (-1, "10011"), (-1, "01000"), (1, "11010")],
)


def _shor9():
    blocks = ["000", "111"]
    zero, one = [], []
    for a in blocks:
        for b in blocks:
            for c in blocks:
                n_ones = [a, b, c].count("111")
                zero.append((1, a + b + c))
                one.append(((-1) ** n_ones, a + b + c))
    return zero, one


_BUILTIN_TERMS = {
    "bitflip3": _BITFLIP3,
    "laflamme5": _LAFLAMME5,
    "laflamme5-permuted": _LAFLAMME5_PERMUTED,
    "shor9": _shor9(),
    "steane7": _STEANE7,
    "bdsw5": _BDSW5,
}

BUILTIN_CODES = tuple(_BUILTIN_TERMS)


def builtin(name: str) -> Code:
    """Return one of the catalogued codes by name."""
    try:
        zero, one = _BUILTIN_TERMS[name]
    except KeyError:
        raise KeyError(f"unknown code {name!r}; available: {', '.join(BUILTIN_CODES)}") from None
    return from_terms(name, zero, one)


def builtin_terms(name: str):
    """Unnormalized ``(zero_terms, one_terms)`` for a builtin code."""
    builtin(name)
    return _BUILTIN_TERMS[name]


# --- text format -----------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?P<sign>[+\-−])?\s*(?P<coeff>(?:\d+\.?\d*|\.\d+)(?:[eE][+\-]?\d+)?)?\s*\|(?P<bits>[01]+)>$"
)


class SpecLine(NamedTuple):
    lineno: int
    block: str | None
    text: str


def iter_spec_lines(text: str) -> Iterator[SpecLine]:
    """Yield non-blank, comment-stripped lines tagged with their block name.

    Block headers (``zero:``, ``one:``, ``errors:``) are consumed; header lines
    before the first block carry ``block=None``.
    """
    block = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("zero:", "one:", "errors:"):
            block = line[:-1]
            continue
        yield SpecLine(lineno, block, line)


def _parse_term(line: SpecLine, n: int) -> tuple[float, str]:
    m = _TERM_RE.match(line.text.replace(" ", ""))
    if not m:
        raise CodeSpecError(f"malformed term {line.text!r}", line.lineno)
    bits = m["bits"]
    if len(bits) != n:
        raise CodeSpecError(f"bitstring {bits!r} has length {len(bits)}, expected {n}", line.lineno)
    coeff = float(m["coeff"]) if m["coeff"] else 1.0
    if m["sign"] in ("-", "−"):
        coeff = -coeff
    return coeff, bits


def parse_code_spec(text: str) -> Code:
    """Parse code-spec text into a :class:`Code`; any ``errors:`` block is skipped."""
    name = None
    n = None
    terms = {"zero": [], "one": []}
    block_lines = {}
    for line in iter_spec_lines(text):
        if line.block is None:
            key, _, value = line.text.partition(" ")
            value = value.strip()
            if key == "code" and value:
                name = value
            elif key == "qubits":
                try:
                    n = int(value)
                except ValueError:
                    raise CodeSpecError(f"invalid qubit count {value!r}", line.lineno) from None
                if n < 1:
                    raise CodeSpecError("qubit count must be positive", line.lineno)
            else:
                raise CodeSpecError(f"unexpected header line {line.text!r}", line.lineno)
        elif line.block in terms:
            if n is None:
                raise CodeSpecError("'qubits' must precede the codeword blocks", line.lineno)
            terms[line.block].append(_parse_term(line, n))
            block_lines.setdefault(line.block, line.lineno)
    if name is None:
        raise CodeSpecError("missing 'code <name>' header")
    if n is None:
        raise CodeSpecError("missing 'qubits <n>' header")
    states = {}
    for label in ("zero", "one"):
        if not terms[label]:
            raise CodeSpecError(f"empty codeword block {label!r}")
        v = _state_from_terms(terms[label], n)
        if np.linalg.norm(v) == 0:
            raise CodeSpecError(f"codeword {label!r} sums to the zero vector", block_lines[label])
        states[label] = v / np.linalg.norm(v)
    overlap = np.vdot(states["zero"], states["one"])
    if abs(overlap) > ORTHOGONALITY_TOL:
        raise NonOrthogonalCodewordsError(overlap, block_lines["one"])
    return Code(name, n, states["zero"], states["one"])


def _format_terms(v: np.ndarray, n: int) -> list[str]:
    if np.abs(v.imag).max() > 1e-15:
        raise ValueError("the code-spec format only carries real coefficients")
    re_ = v.real
    nz = np.flatnonzero(np.abs(re_) > 1e-15)
    scaled = re_[nz] / np.abs(re_[nz]).min()
    integral = np.allclose(scaled, np.round(scaled), atol=1e-9, rtol=0)
    lines = []
    for idx, c in zip(nz, np.round(scaled) if integral else re_[nz]):
        sign = "-" if c < 0 else "+"
        coeff = f"{abs(c):.0f}" if integral else repr(float(abs(c)))
        lines.append(f"{sign}{coeff}|{idx:0{n}b}>")
    return lines


def serialize_code(code: Code) -> str:
    """Render ``code`` in the code-spec text format (ASCII only)."""
    out = [f"code {code.name}", f"qubits {code.n_qubits}", "zero:"]
    out += _format_terms(code.logical_zero, code.n_qubits)
    out.append("one:")
    out += _format_terms(code.logical_one, code.n_qubits)
    return "\n".join(out) + "\n"


# --- relabeling ------------------------------------------------------------

def _permute_state(v: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    n = len(perm)
    axes = [0] * n
    for i, target in enumerate(perm):
        axes[target - 1] = i
    return v.reshape((2,) * n).transpose(axes).reshape(-1)


def permute_qubits(code: Code, perm: Sequence[int], name: str | None = None) -> Code:
    """Relabel qubits: qubit ``i`` (1-based) moves to position ``perm[i-1]``.

    Moving the third of five qubits to the end is ``perm = (1, 2, 5, 3, 4)``.
    """
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(1, code.n_qubits + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{code.n_qubits}")
    return Code(
        name or f"{code.name}-permuted",
        code.n_qubits,
        _permute_state(code.logical_zero, perm),
        _permute_state(code.logical_one, perm),
    )


class CodeComparison(NamedTuple):
    zero_overlap: complex
    one_overlap: complex

    @property
    def equal_up_to_phase(self) -> bool:
        """Each codeword matches up to its own global phase."""
        return min(abs(self.zero_overlap), abs(self.one_overlap)) >= 1 - DEFAULT_TOL

    @property
    def equal(self) -> bool:
        return abs(self.zero_overlap - 1) <= DEFAULT_TOL and abs(self.one_overlap - 1) <= DEFAULT_TOL


def compare_codes(a: Code, b: Code) -> CodeComparison:
    """Overlaps ``<0_L^a|0_L^b>`` and ``<1_L^a|1_L^b>``."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("codes act on different numbers of qubits")
    return CodeComparison(
        complex(np.vdot(a.logical_zero, b.logical_zero)),
        complex(np.vdot(a.logical_one, b.logical_one)),
    )
