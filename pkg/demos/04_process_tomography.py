"""Process tomography of the logical qubit, with and without encoding."""
import numpy as np

from unitary_qec.codes import builtin
from unitary_qec.errors import ErrorModel, PauliOperator, standard_single_qubit_set
from unitary_qec.tomography import logical_channel_map, process_fidelity, sqpt
from unitary_qec.unitary import complete_unitary_for

np.set_printoptions(precision=3, suppress=True)

# %% Steane code, every single-qubit Pauli error equally likely: the logical channel is the identity.
code = builtin("steane7")
model = ErrorModel.uniform(standard_single_qubit_set(7))
chi = sqpt(logical_channel_map(complete_unitary_for(code, model), model))
print("encoded chi (real part):\n", chi.chi.real)
print("process fidelity", process_fidelity(chi))

# %% Without encoding, a 30% bit flip on the information qubit shows up directly.
bare = ErrorModel((0.7, 0.3), (PauliOperator("III"), PauliOperator("IIX")))
chi = sqpt(logical_channel_map(np.eye(8), bare))
print("unencoded chi diagonal", chi.chi.diagonal().real)
