import numpy as np
import pytest

from unitary_qec.codes import builtin
from unitary_qec.errors import ErrorModel, PauliOperator
from unitary_qec.tomography import (
    PAULI_BASIS,
    ProcessMatrix,
    chi_from_kraus,
    logical_channel_map,
    process_fidelity,
    sqpt,
)

from conftest import random_density

X = PAULI_BASIS[1]


def kraus_map(ops):
    return lambda rho: sum(k @ rho @ k.conj().T for k in ops)


def chi_map(chi):
    # rho -> sum_mn chi_mn P_m rho P_n^dagger
    return lambda rho: sum(chi[m, n] * PAULI_BASIS[m] @ rho @ PAULI_BASIS[n].conj().T
                           for m in range(4) for n in range(4))


def test_identity_channel():
    chi = sqpt(lambda rho: rho)
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    np.testing.assert_allclose(chi.chi, expected, atol=1e-12)
    assert process_fidelity(chi) == pytest.approx(1, abs=1e-12)


def test_bit_flip_channel():
    ops = [np.sqrt(0.7) * np.eye(2), np.sqrt(0.3) * X]
    closed_form = chi_from_kraus(ops)
    np.testing.assert_allclose(closed_form, np.diag([0.7, 0.3, 0, 0]), atol=1e-15)
    chi = sqpt(kraus_map(ops))
    np.testing.assert_allclose(chi.chi, closed_form, atol=1e-10)
    assert process_fidelity(chi) == pytest.approx(0.7, abs=1e-10)


def test_linear_inversion_reproduces_random_channels(rng):
    for _ in range(5):
        # random CPTP map from a Stinespring isometry
        a = rng.normal(size=(6, 2)) + 1j * rng.normal(size=(6, 2))
        q, _ = np.linalg.qr(a)
        ops = [q[2 * i:2 * i + 2] for i in range(3)]
        chi = sqpt(kraus_map(ops))
        np.testing.assert_allclose(chi.chi, chi_from_kraus(ops), atol=1e-10)
        rho = random_density(rng, 2)
        np.testing.assert_allclose(chi_map(chi.chi)(rho), kraus_map(ops)(rho), atol=1e-10)


def test_process_matrix_validation():
    with pytest.raises(ValueError):
        ProcessMatrix(np.diag([0.5, 0.2, 0, 0]))
    with pytest.raises(ValueError):
        ProcessMatrix(np.eye(3))


def test_perfect_pipeline_channel_is_identity(pipeline, rng):
    channel_map = logical_channel_map(pipeline.u, pipeline.model, pipeline.channel)
    for _ in range(3):
        rho = random_density(rng, 2)
        np.testing.assert_allclose(channel_map(rho), rho, atol=1e-10)
    assert process_fidelity(sqpt(channel_map)) == pytest.approx(1, abs=1e-9)


def test_unencoded_bit_flip_baseline():
    code = builtin("bitflip3")
    model = ErrorModel((0.7, 0.3), (PauliOperator("III"), PauliOperator("IIX")))
    channel_map = logical_channel_map(np.eye(code.dim), model)
    np.testing.assert_allclose(channel_map(np.diag([1.0, 0])), np.diag([0.7, 0.3]), atol=1e-15)
    chi = sqpt(channel_map)
    np.testing.assert_allclose(chi.chi, np.diag([0.7, 0.3, 0, 0]), atol=1e-9)


def test_noiseless_model_any_unitary(rng):
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    u, _ = np.linalg.qr(a)
    model = ErrorModel((1.0,), (PauliOperator("III"),))
    chi = sqpt(logical_channel_map(u, model))
    assert process_fidelity(chi) == pytest.approx(1, abs=1e-10)
