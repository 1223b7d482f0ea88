"""Five-qubit code: from codewords to the complete unitary.

Run with ``python demos/01_five_qubit_code.py``.
"""
import numpy as np

from unitary_qec.codes import builtin, compare_codes, permute_qubits
from unitary_qec.errors import PAPER_SEQUENCE, ErrorModel, standard_single_qubit_set, verify_kl_condition
from unitary_qec.qstate import pure_state
from unitary_qec.unitary import check_correction, check_encoding, complete_unitary_for

# %% The code with its information qubit in the middle, and the relabeled one.
original = builtin("laflamme5")
code = builtin("laflamme5-permuted")
moved = permute_qubits(original, (1, 2, 5, 3, 4))
print("moving qubit 3 last reproduces the permuted code:", compare_codes(moved, code))

# %% Single-qubit Pauli errors in the prescribed order; the code is perfect for them.
ops = standard_single_qubit_set(5, PAPER_SEQUENCE)
kl = verify_kl_condition(code, ops)
print("Knill-Laflamme verdict:", kl.verdict.value, "max deviation", kl.max_deviation)

# %% 16 errors x 2 codewords = 32 orthonormal columns, so nothing is left to complete.
model = ErrorModel.uniform(ops)
u = complete_unitary_for(code, model)
print("dimension", u.dim, "completion", u.completion_dim)

# %% The unitary encodes, and its inverse maps each error back to an ancilla label.
psi = pure_state([np.cos(0.3), np.exp(0.7j) * np.sin(0.3)])
print("encoding fidelity", check_encoding(u, code, psi))
for r in check_correction(u, model, psi)[:5]:
    print(f"  {r.label:>3} -> |e_{r.class_index}> (x) psi, fidelity {r.fidelity:.15f}")
