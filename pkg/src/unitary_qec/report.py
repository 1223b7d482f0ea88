"""End-to-end verification pipeline and its JSON report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from . import __version__
from .channel import (
    ChannelError,
    roundtrip_via_transformed,
    simulate_roundtrip,
    transformed_kraus,
    unified_identity,
)
from .codes import Code
from .errors import (
    GROUPING_TOL,
    ErrorModel,
    KLVerdict,
    UnsupportedDegeneracyError,
    build_syndrome_basis,
    canonicalize_error_classes,
    verify_kl_condition,
)
from .qstate import DEFAULT_TOL, unitarity_deviation
from .tomography import CHI_TOL, TOMOGRAPHY_INPUTS, logical_channel_map, process_fidelity, sqpt
from .unitary import build_complete_unitary, check_correction, check_encoding

N_RANDOM_PSI = 20
ROUTE_TOL = 1e-12
TOMOGRAPHY_LABELS = ("|0>", "|1>", "|+>", "|+i>")


def random_qubit_states(seed: int, count: int = N_RANDOM_PSI) -> list[np.ndarray]:
    """Haar-random single-qubit states from a seeded generator."""
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(count, 2)) + 1j * rng.normal(size=(count, 2))
    return [v / np.linalg.norm(v) for v in z]


def complex_pairs(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    if m.ndim == 0:
        return [float(m.real), float(m.imag)]
    return [complex_pairs(x) for x in m]


@dataclass
class VerificationReport:
    tool_version: str
    code_name: str
    error_model_digest: list
    kl_verdict: str
    class_count: int | None = None
    unitary_check: float | None = None
    encoding_fidelities: list | None = None
    correction_fidelities: list | None = None
    roundtrip: dict | None = None
    unified: dict | None = None
    tomography: dict | None = None
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    kl_failure: dict | None = None
    verdict: str = "FAIL"

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, allow_nan=False) + "\n"


def _within(value: float, target: float, tol: float) -> bool:
    return bool(np.isfinite(value)) and abs(value - target) <= tol


def run_verification(code: Code, model: ErrorModel, seed: int = 0, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Run every check on ``(code, model)`` and collect the results."""
    if model.n_qubits != code.n_qubits:
        raise ValueError(f"error model acts on {model.n_qubits} qubits, code has {code.n_qubits}")
    report = VerificationReport(
        tool_version=__version__,
        code_name=code.name,
        error_model_digest=model.digest(),
        kl_verdict=KLVerdict.FAIL.value,
        seed=seed,
        tolerances={"tol": tol, "tomography": CHI_TOL, "route": ROUTE_TOL, "grouping": GROUPING_TOL},
    )
    kl = verify_kl_condition(code, model.operators, tol)
    report.kl_verdict = kl.verdict.value
    if kl.verdict is KLVerdict.FAIL:
        m, n = kl.worst_pair
        report.kl_failure = {
            "pair": [kl.labels[m], kl.labels[n]],
            "block": complex_pairs(kl.failing_block),
            "deviation": kl.max_deviation,
        }
        return report
    try:
        reduced, class_map = canonicalize_error_classes(code, model)
    except UnsupportedDegeneracyError as exc:
        report.kl_failure = {"unsupported_degeneracy": str(exc)}
        return report
    u = build_complete_unitary(build_syndrome_basis(code, reduced, class_map, tol), tol)
    report.class_count = u.class_count
    report.unitary_check = unitarity_deviation(u.matrix)

    inputs = list(TOMOGRAPHY_INPUTS) + random_qubit_states(seed)
    labels = list(TOMOGRAPHY_LABELS) + [f"random[{i}]" for i in range(N_RANDOM_PSI)]
    channel = transformed_kraus(u, model)

    encoding = [check_encoding(u, code, psi) for psi in inputs]
    report.encoding_fidelities = [{"input": lab, "fidelity": f} for lab, f in zip(labels, encoding)]

    worst_corr: dict[str, float] = {}
    worst_dev: dict[str, float] = {}
    for psi in inputs:
        for r in check_correction(u, model, psi, class_map):
            worst_corr[r.label] = min(worst_corr.get(r.label, 1.0), r.fidelity)
            if r.representative:
                worst_dev[r.label] = max(worst_dev.get(r.label, 0.0), r.exact_deviation)
    report.correction_fidelities = [
        {"operator": op.label(), "class": c, "fidelity": worst_corr[op.label()],
         "representative": op.label() in worst_dev}
        for op, c in zip(model.operators, class_map)
    ]
    rep_exact = max(worst_dev.values())

    trips = [simulate_roundtrip(u, model, psi) for psi in inputs]
    route = max(float(np.abs(t.rho_out - roundtrip_via_transformed(channel, psi)).max())
                for t, psi in zip(trips, inputs))
    report.roundtrip = {
        "marginal_fidelity": min(t.marginal_fidelity for t in trips),
        "ancilla_diagonal": [float(x) for x in trips[0].ancilla_diagonal[: u.class_count]],
        "class_probabilities": [float(x) for x in trips[0].class_probabilities],
        "ancilla_deviation": max(t.ancilla_deviation for t in trips),
        "coherence": max(t.coherence for t in trips),
        "route_agreement": route,
    }

    unified_inputs = [np.outer(p, p.conj()) for p in TOMOGRAPHY_INPUTS] + [np.eye(2) / 2]
    try:
        uni = [unified_identity(u, model, rho, channel) for rho in unified_inputs]
        report.unified = {
            "literal": max(x.literal_distance for x in uni),
            "renormalized": max(x.renormalized_distance for x in uni),
            "projection_weight": uni[0].weight,
        }
    except ChannelError as exc:
        report.unified = {"error": str(exc)}

    chi = sqpt(logical_channel_map(u, model, channel))
    identity_chi = np.zeros((4, 4))
    identity_chi[0, 0] = 1
    report.tomography = {
        "chi": complex_pairs(chi.chi),
        "process_fidelity": process_fidelity(chi),
        "chi_deviation": float(np.abs(chi.chi - identity_chi).max()),
    }

    checks = [
        report.unitary_check <= tol,
        all(_within(f, 1, tol) for f in encoding),
        all(_within(f, 1, tol) for f in worst_corr.values()),
        rep_exact <= tol,
        _within(report.roundtrip["marginal_fidelity"], 1, tol),
        report.roundtrip["ancilla_deviation"] <= tol,
        report.roundtrip["coherence"] <= tol,
        route <= ROUTE_TOL,
        "error" not in report.unified
        and report.unified["literal"] <= tol and report.unified["renormalized"] <= tol,
        _within(report.tomography["process_fidelity"], 1, CHI_TOL),
        report.tomography["chi_deviation"] <= CHI_TOL,
    ]
    report.verdict = "PASS" if all(checks) else "FAIL"
    return report


def tomography_report(code: Code, model: ErrorModel, encode: bool = True) -> dict[str, Any]:
    """Chi matrix of the logical channel, optionally without any encoding."""
    if encode:
        reduced, class_map = canonicalize_error_classes(code, model)
        u = build_complete_unitary(build_syndrome_basis(code, reduced, class_map))
        channel = transformed_kraus(u, model)
    else:
        channel = transformed_kraus(np.eye(code.dim, dtype=complex), model)
    chi = sqpt(logical_channel_map(None, model, channel))
    fid = process_fidelity(chi)
    return {
        "tool_version": __version__,
        "code_name": code.name,
        "error_model_digest": model.digest(),
        "encoded": encode,
        "chi": complex_pairs(chi.chi),
        "process_fidelity": fid,
        "verdict": "PASS" if _within(fid, 1, CHI_TOL) else "IMPERFECT",
    }
