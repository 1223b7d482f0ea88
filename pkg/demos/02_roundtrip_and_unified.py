"""Noise in the middle of encode/decode, and the projected-channel identity."""
import numpy as np

from unitary_qec.channel import simulate_roundtrip, transformed_kraus, unified_identity
from unitary_qec.codes import builtin
from unitary_qec.errors import CHOICE_I, CHOICE_II, ErrorModel, standard_single_qubit_set
from unitary_qec.qstate import pure_state
from unitary_qec.unitary import complete_unitary_for

code = builtin("bitflip3")
psi = pure_state([0.6, 0.8j])

# %% Both operator orders give valid, but different, unitaries.
for label, order in (("I", CHOICE_I), ("II", CHOICE_II)):
    model = ErrorModel((0.7, 0.1, 0.1, 0.1), tuple(standard_single_qubit_set(3, order)))
    u = complete_unitary_for(code, model)
    report = simulate_roundtrip(u, model, psi)
    print(f"order ({label}): B fidelity {report.marginal_fidelity:.15f}, "
          f"ancilla record {np.round(report.ancilla_diagonal, 12)}")

# %% The transformed channel, projected back onto |e_0><e_0| (x) B, leaves p_0 rho.
channel = transformed_kraus(u, model)
for rho_b in (np.diag([1.0, 0.0]), np.eye(2) / 2):
    r = unified_identity(u, model, rho_b, channel)
    print(f"weight {r.weight:.3f}  literal {r.literal_distance:.1e}  renormalized {r.renormalized_distance:.1e}")
