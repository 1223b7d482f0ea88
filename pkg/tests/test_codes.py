from functools import reduce

import numpy as np
import pytest

from unitary_qec.codes import (
    BUILTIN_CODES,
    CodeSpecError,
    NonOrthogonalCodewordsError,
    builtin,
    builtin_terms,
    compare_codes,
    from_terms,
    parse_code_spec,
    permute_qubits,
    serialize_code,
)
from unitary_qec.qstate import ket

PAULI = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1, -1]),
}


def dense(letters):
    return reduce(np.kron, [PAULI[c] for c in letters])


LAFLAMME5_SPEC = """\
# five-qubit code, signs as printed
code laflamme5
qubits 5
zero:
-|00000>
+|01111>
-|10011>
+|11100>
+|00110>
+|01001>
+|10101>
+|11010>
one:
−1|11111>
+1|10000>
+1|01100>
−1|00011>
+1|11001>
+1|10110>
−1|01010>
−1|00101>
"""


@pytest.mark.parametrize("name", BUILTIN_CODES)
def test_builtin_invariants(name):
    code = builtin(name)
    z, o = code.codewords
    assert abs(np.vdot(z, z) - 1) <= 1e-10
    assert abs(np.vdot(o, o) - 1) <= 1e-10
    assert abs(np.vdot(z, o)) <= 1e-10
    np.testing.assert_allclose(code.projector @ code.projector, code.projector, atol=1e-12)


def test_bitflip3():
    code = builtin("bitflip3")
    np.testing.assert_array_equal(code.logical_zero, ket("000"))
    np.testing.assert_array_equal(code.logical_one, ket("111"))


def test_laflamme5_amplitudes():
    code = builtin("laflamme5")
    s = 1 / np.sqrt(8)
    assert code.logical_zero[0] == pytest.approx(-s)
    assert code.logical_zero[int("01111", 2)] == pytest.approx(s)
    assert code.logical_zero[int("10011", 2)] == pytest.approx(-s)
    assert code.logical_one[int("11111", 2)] == pytest.approx(-s)
    assert code.logical_one[int("00101", 2)] == pytest.approx(-s)
    assert np.count_nonzero(code.logical_zero) == 8
    assert np.count_nonzero(code.logical_one) == 8


def test_unknown_code_lists_available():
    with pytest.raises(KeyError, match="laflamme5-permuted"):
        builtin("golay23")


@pytest.mark.parametrize(
    "name, stabilizers, logical_z",
    [
        ("bdsw5", ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"], "ZZZZZ"),
        ("steane7", ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"], "ZZZZZZZ"),
        ("shor9", ["ZZIIIIIII", "IZZIIIIII", "IIIZZIIII", "IIIIZZIII", "IIIIIIZZI", "IIIIIIIZZ",
                   "XXXXXXIII", "IIIXXXXXX"], "XXXXXXXXX"),
    ],
)
def test_literature_codes_are_stabilizer_codewords(name, stabilizers, logical_z):
    code = builtin(name)
    for g in stabilizers:
        m = dense(g)
        np.testing.assert_allclose(m @ code.logical_zero, code.logical_zero, atol=1e-12)
        np.testing.assert_allclose(m @ code.logical_one, code.logical_one, atol=1e-12)
    zl = dense(logical_z)
    # Shor's logical Z is X^9 in the |000>+|111> convention
    np.testing.assert_allclose(zl @ code.logical_zero, code.logical_zero, atol=1e-12)
    np.testing.assert_allclose(zl @ code.logical_one, -code.logical_one, atol=1e-12)


def test_parse_bitflip3():
    code = parse_code_spec("code bitflip3\nqubits 3\nzero:\n+1|000>\none:\n+1|111>\n")
    assert code.name == "bitflip3" and code.n_qubits == 3
    np.testing.assert_array_equal(code.logical_one, builtin("bitflip3").logical_one)


def test_parse_reproduces_laflamme5():
    parsed = parse_code_spec(LAFLAMME5_SPEC)
    ref = builtin("laflamme5")
    np.testing.assert_allclose(parsed.logical_zero, ref.logical_zero, atol=1e-12)
    np.testing.assert_allclose(parsed.logical_one, ref.logical_one, atol=1e-12)


def test_parse_decimal_coefficients_and_errors_block():
    text = "code c\nqubits 2\nzero:\n0.5|00>\n+0.5|11>\none:\n2.0|01>\n-2|10>\nerrors:\n1 II\n"
    code = parse_code_spec(text)
    np.testing.assert_allclose(code.logical_zero, np.array([1, 0, 0, 1]) / np.sqrt(2))
    np.testing.assert_allclose(code.logical_one, np.array([0, 1, -1, 0]) / np.sqrt(2))


def test_parse_rejects_non_orthogonal():
    with pytest.raises(NonOrthogonalCodewordsError) as info:
        parse_code_spec("code bad\nqubits 3\nzero:\n+1|000>\none:\n+1|000>\n")
    assert abs(info.value.overlap) == pytest.approx(1)
    assert "1" in str(info.value)


@pytest.mark.parametrize(
    "text, line",
    [
        ("code c\nqubits 3\nzero:\n+1|00>\none:\n+1|111>\n", 4),
        ("code c\nqubits 3\nzero:\n+1|000\none:\n+1|111>\n", 4),
        ("code c\nqubits 3\nzero:\n+1|000>\none:\n*|111>\n", 6),
        ("code c\nqubits x\n", 2),
        ("code c\nwidth 3\n", 2),
    ],
)
def test_parse_reports_line_numbers(text, line):
    with pytest.raises(CodeSpecError) as info:
        parse_code_spec(text)
    assert info.value.line == line


def test_parse_rejects_empty_codeword():
    with pytest.raises(CodeSpecError, match="empty codeword"):
        parse_code_spec("code c\nqubits 1\nzero:\n+1|0>\none:\n")
    with pytest.raises(CodeSpecError, match="zero vector"):
        parse_code_spec("code c\nqubits 1\nzero:\n+1|0>\n-1|0>\none:\n+1|1>\n")


@pytest.mark.parametrize("name", BUILTIN_CODES)
def test_serialize_roundtrip(name):
    code = builtin(name)
    text = serialize_code(code)
    assert text.isascii()
    back = parse_code_spec(text)
    assert back.name == name and back.n_qubits == code.n_qubits
    np.testing.assert_allclose(back.logical_zero, code.logical_zero, atol=1e-12)
    np.testing.assert_allclose(back.logical_one, code.logical_one, atol=1e-12)


def test_serialize_non_uniform_coefficients():
    code = from_terms("c", [(1, "00"), (2, "11")], [(3, "01"), (-0.5, "10")])
    back = parse_code_spec(serialize_code(code))
    np.testing.assert_allclose(back.logical_zero, code.logical_zero, atol=1e-12)
    np.testing.assert_allclose(back.logical_one, code.logical_one, atol=1e-12)


def _relabel_terms(terms, perm):
    out = []
    for c, bits in terms:
        new = [""] * len(bits)
        for i, b in enumerate(bits):
            new[perm[i] - 1] = b
        out.append((c, "".join(new)))
    return out


def test_permute_identity():
    code = builtin("laflamme5")
    same = permute_qubits(code, [1, 2, 3, 4, 5])
    assert compare_codes(code, same).equal


def test_permute_matches_termwise_relabeling():
    perm = (1, 2, 5, 3, 4)
    zero, one = builtin_terms("laflamme5")
    oracle = from_terms("oracle", _relabel_terms(zero, perm), _relabel_terms(one, perm))
    moved = permute_qubits(builtin("laflamme5"), perm)
    assert compare_codes(moved, oracle).equal


def test_moving_third_qubit_last_gives_permuted_code():
    moved = permute_qubits(builtin("laflamme5"), (1, 2, 5, 3, 4))
    cmp = compare_codes(moved, builtin("laflamme5-permuted"))
    # the printed signs agree exactly, not merely up to a phase
    assert cmp.equal_up_to_phase
    assert cmp.equal


def test_swap_symmetric_code():
    code = builtin("bitflip3")
    assert compare_codes(code, permute_qubits(code, (2, 1, 3))).equal


def test_permute_rejects_non_bijection():
    with pytest.raises(ValueError):
        permute_qubits(builtin("bitflip3"), (1, 1, 2))


def test_permutation_preserves_overlap(rng):
    code = builtin("steane7")
    for _ in range(5):
        perm = rng.permutation(7) + 1
        moved = permute_qubits(code, perm)
        assert abs(np.vdot(moved.logical_zero, moved.logical_one)) <= 1e-12
        assert abs(np.vdot(moved.logical_zero, moved.logical_zero) - 1) <= 1e-12
