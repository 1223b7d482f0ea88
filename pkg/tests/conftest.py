from dataclasses import dataclass

import numpy as np
import pytest

from unitary_qec.channel import KrausChannel, transformed_kraus
from unitary_qec.codes import BUILTIN_CODES, Code, builtin
from unitary_qec.errors import (
    ErrorModel,
    build_syndrome_basis,
    canonicalize_error_classes,
    default_error_order,
    standard_single_qubit_set,
)
from unitary_qec.unitary import CompleteUnitary, build_complete_unitary


@dataclass
class Pipeline:
    code: Code
    model: ErrorModel
    reduced: ErrorModel
    class_map: tuple
    u: CompleteUnitary
    _channel: KrausChannel | None = None

    @property
    def channel(self) -> KrausChannel:
        if self._channel is None:
            self._channel = transformed_kraus(self.u, self.model)
        return self._channel


def make_pipeline(code: Code, model: ErrorModel) -> Pipeline:
    reduced, class_map = canonicalize_error_classes(code, model)
    u = build_complete_unitary(build_syndrome_basis(code, reduced, class_map))
    return Pipeline(code, model, reduced, class_map, u)


def default_model(code: Code) -> ErrorModel:
    ops = standard_single_qubit_set(code.n_qubits, default_error_order(code.name, code.n_qubits))
    return ErrorModel.uniform(ops)


_CACHE = {}


def pipeline_for(name: str) -> Pipeline:
    if name not in _CACHE:
        code = builtin(name)
        _CACHE[name] = make_pipeline(code, default_model(code))
    return _CACHE[name]


@pytest.fixture(params=BUILTIN_CODES)
def pipeline(request) -> Pipeline:
    return pipeline_for(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_qubit(rng) -> np.ndarray:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def random_density(rng, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)
