import numpy as np
import pytest

from unitary_qec.codes import builtin
from unitary_qec.errors import (
    CHOICE_I,
    CHOICE_II,
    ErrorModel,
    PauliOperator,
    build_syndrome_basis,
    standard_single_qubit_set,
)
from unitary_qec.qstate import ket, pure_state, tensor, unitarity_deviation
from unitary_qec.unitary import (
    build_complete_unitary,
    check_correction,
    check_encoding,
    complete_unitary_for,
    format_matrix,
    parse_matrix,
)

from conftest import make_pipeline, pipeline_for, random_qubit


def bitflip(order):
    code = builtin("bitflip3")
    return code, ErrorModel.uniform(standard_single_qubit_set(3, order))


def test_bitflip3_columns():
    code, model = bitflip(CHOICE_I)
    u = complete_unitary_for(code, model).matrix
    np.testing.assert_array_equal(u @ ket("000"), ket("000"))
    np.testing.assert_array_equal(u @ ket("001"), ket("111"))
    np.testing.assert_array_equal(u @ ket("010"), ket("100"))
    np.testing.assert_array_equal(u @ ket("011"), ket("011"))
    np.testing.assert_array_equal(u @ ket("111"), ket("110"))


def test_laflamme5_permuted_saturates_space():
    p = pipeline_for("laflamme5-permuted")
    assert p.u.dim == 32
    assert p.u.completion_dim == 0
    assert unitarity_deviation(p.u.matrix) <= 1e-10


def test_shor9_completion():
    p = pipeline_for("shor9")
    assert p.u.dim == 512
    assert p.u.completion_dim == 512 - 2 * len(p.reduced) > 0
    assert unitarity_deviation(p.u.matrix) <= 1e-10


def test_unitary_both_sides(pipeline):
    m = pipeline.u.matrix
    eye = np.eye(m.shape[0])
    assert np.abs(m @ m.conj().T - eye).max() <= 1e-10
    assert np.abs(m.conj().T @ m - eye).max() <= 1e-10


def test_column_linearity(pipeline, rng):
    u = pipeline.u
    basis = build_syndrome_basis(pipeline.code, pipeline.reduced)
    for _ in range(3):
        psi = random_qubit(rng)
        for m in range(u.class_count):
            plus, minus = basis.states[m]
            out = u.matrix @ u.input_state(psi, m)
            np.testing.assert_allclose(out, psi[0] * plus + psi[1] * minus, atol=1e-12)


def test_inverse_maps_syndrome_states_back(pipeline):
    u = pipeline.u
    basis = build_syndrome_basis(pipeline.code, pipeline.reduced)
    for m, (plus, minus) in enumerate(basis.states):
        np.testing.assert_allclose(u.dagger @ plus, u.input_state(ket("0"), m), atol=1e-12)
        np.testing.assert_allclose(u.dagger @ minus, u.input_state(ket("1"), m), atol=1e-12)


def test_build_is_deterministic():
    code = builtin("steane7")
    model = ErrorModel.uniform(standard_single_qubit_set(7))
    a = complete_unitary_for(code, model).matrix
    b = complete_unitary_for(code, model).matrix
    assert a.tobytes() == b.tobytes()


def test_order_changes_the_unitary():
    u1 = complete_unitary_for(*bitflip(CHOICE_I)).matrix
    u2 = complete_unitary_for(*bitflip(CHOICE_II)).matrix
    assert np.abs(u1 - u2).max() > 0.5


def test_too_many_classes_rejected():
    code = builtin("bitflip3")
    ops = [PauliOperator("III"), PauliOperator("XII"), PauliOperator("IXI"), PauliOperator("IIX"),
           PauliOperator("XXI")]
    # XXI|000> = |110> overlaps IIX|111> = |110>: the basis check fires first
    with pytest.raises(ValueError):
        build_complete_unitary(build_syndrome_basis(code, ops))


def test_encoding_examples():
    p = pipeline_for("laflamme5")
    assert check_encoding(p.u, p.code, ket("0")) == pytest.approx(1, abs=1e-10)
    np.testing.assert_allclose(p.u.matrix @ p.u.input_state(ket("0")), p.code.logical_zero, atol=1e-15)
    assert check_encoding(p.u, p.code, pure_state([1, 1])) == pytest.approx(1, abs=1e-10)
    shor = pipeline_for("shor9")
    assert check_encoding(shor.u, shor.code, pure_state([1, 1j])) == pytest.approx(1, abs=1e-10)


def test_correction_identity_is_exact():
    p = pipeline_for("bitflip3")
    psi = pure_state([0.6, 0.8j])
    first = check_correction(p.u, p.model, psi)[0]
    assert first.label == "I" and first.exact_deviation <= 1e-15


def test_correction_laflamme5_permuted(rng):
    p = pipeline_for("laflamme5-permuted")
    for _ in range(5):
        results = check_correction(p.u, p.model, random_qubit(rng))
        assert len(results) == 16
        assert all(abs(r.fidelity - 1) <= 1e-10 for r in results)
        assert all(r.exact_deviation <= 1e-10 for r in results)


def test_correction_shor9_non_representative(rng):
    p = pipeline_for("shor9")
    psi = random_qubit(rng)
    results = {r.label: r for r in check_correction(p.u, p.model, psi)}
    z1, z2 = results["Z1"], results["Z2"]
    assert z2.class_index == z1.class_index
    assert z1.representative and not z2.representative
    assert z2.fidelity == pytest.approx(1, abs=1e-10)
    # direct matrix computation of U^dagger Z2 U (|e_0> (x) psi)
    z2_matrix = PauliOperator.parse("Z2", 9).matrix()
    out = p.u.dagger @ z2_matrix @ p.u.matrix @ tensor(ket("0" * 8), psi)
    target = p.u.input_state(psi, z1.class_index)
    assert abs(abs(np.vdot(target, out)) - 1) <= 1e-10


def test_matrix_format_roundtrip(tmp_path):
    from unitary_qec.unitary import export_matrix, import_matrix

    p = pipeline_for("laflamme5-permuted")
    path = tmp_path / "u.txt"
    export_matrix(p.u, path)
    text = path.read_text()
    assert text.startswith("dim 32\n")
    assert len(text.splitlines()) == 33
    np.testing.assert_array_equal(import_matrix(path), p.u.matrix)


def test_parse_matrix_rejects_malformed():
    with pytest.raises(ValueError):
        parse_matrix("dim 2\n1,0 0,0\n")
    with pytest.raises(ValueError):
        parse_matrix("2\n1,0 0,0\n0,0 1,0\n")
    assert parse_matrix(format_matrix(np.eye(2))).tolist() == np.eye(2).tolist()


def test_custom_pipeline_roundtrip():
    # the unpermuted five-qubit code with the default single-qubit order
    code = builtin("laflamme5")
    p = make_pipeline(code, ErrorModel.uniform(standard_single_qubit_set(5)))
    assert p.u.completion_dim == 0
