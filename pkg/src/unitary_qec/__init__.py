"""Unitary quantum error correction: build the complete unitary of a code
and an ordered Pauli error set, then verify encoding, correction, the
transformed channel and the logical process.
"""

__version__ = "0.1.0"

from .codes import Code, builtin, parse_code_spec, permute_qubits, serialize_code  # noqa: E402
from .errors import (  # noqa: E402
    ErrorModel,
    KLVerdict,
    PauliOperator,
    build_syndrome_basis,
    canonicalize_error_classes,
    standard_single_qubit_set,
    verify_kl_condition,
)
from .unitary import CompleteUnitary, build_complete_unitary, complete_unitary_for  # noqa: E402
