"""Shor's code: degenerate errors are grouped before the unitary is built."""
from unitary_qec.channel import simulate_roundtrip
from unitary_qec.codes import builtin
from unitary_qec.errors import ErrorModel, canonicalize_error_classes, standard_single_qubit_set, verify_kl_condition
from unitary_qec.qstate import pure_state
from unitary_qec.unitary import check_correction, complete_unitary_for

code = builtin("shor9")
model = ErrorModel.uniform(standard_single_qubit_set(9))
print("verdict:", verify_kl_condition(code, model.operators).verdict.value)

# %% Z errors inside one block of three collapse into a single class.
reduced, class_map = canonicalize_error_classes(code, model)
print(f"{len(model)} errors -> {len(reduced)} classes")
for op, c in zip(model.operators, class_map):
    if op.label().startswith("Z"):
        print(f"  {op.label()} -> class {c} ({reduced.operators[c].label()})")

# %% 512-dimensional unitary, 468 columns from the orthonormal completion.
u = complete_unitary_for(code, model)
print("completion dimension", u.completion_dim)

psi = pure_state([1, 1j])
worst = min(r.fidelity for r in check_correction(u, model, psi))
print("worst correction fidelity", worst)
print("roundtrip B fidelity", simulate_roundtrip(u, model, psi).marginal_fidelity)
