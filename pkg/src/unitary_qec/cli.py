"""Command-line front end: ``unitary-qec verify|build|tomo``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .codes import BUILTIN_CODES, Code, CodeSpecError, builtin, parse_code_spec
from .errors import (
    CHOICE_I,
    CHOICE_II,
    PAPER_SEQUENCE,
    ErrorModel,
    KLConditionError,
    UnsupportedDegeneracyError,
    build_syndrome_basis,
    canonicalize_error_classes,
    default_error_order,
    default_single_qubit_order,
    parse_error_list,
    parse_error_spec,
    standard_single_qubit_set,
)
from .qstate import DEFAULT_TOL
from .report import run_verification, tomography_report
from .unitary import build_complete_unitary, export_matrix

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

NAMED_SEQUENCES = {
    "paper-sequence": lambda n: PAPER_SEQUENCE,
    "choice-I": lambda n: CHOICE_I,
    "choice-II": lambda n: CHOICE_II,
    "single-qubit": default_single_qubit_order,
}


class UsageError(Exception):
    pass


def load_code(source: str) -> tuple[Code, str | None]:
    """Builtin name or code-spec path; returns the code and the file text if any."""
    if source in BUILTIN_CODES:
        return builtin(source), None
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"{source!r} is neither a builtin code ({', '.join(BUILTIN_CODES)}) nor a file")
    text = path.read_text(encoding="utf-8")
    return parse_code_spec(text), text


def load_errors(source: str | None, code: Code, code_text: str | None) -> ErrorModel:
    n = code.n_qubits
    if source is None:
        if code_text is not None:
            model = parse_error_spec(code_text, n)
            if model is not None:
                return model
        return ErrorModel.uniform(standard_single_qubit_set(n, default_error_order(code.name, n)))
    if source in NAMED_SEQUENCES:
        return ErrorModel.uniform(standard_single_qubit_set(n, NAMED_SEQUENCES[source](n)))
    path = Path(source)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        if "errors:" not in text:
            text = "errors:\n" + text
        model = parse_error_spec(text, n)
        if model is None:
            raise UsageError(f"{source} holds no error lines")
        return model
    return parse_error_list(source, n)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--code", required=True, help="builtin code name or code-spec file")
    common.add_argument("--errors", help="named sequence, error file, or inline list like 'I,X1,X2,X3'")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--report", type=Path, help="also write the JSON report here")

    parser = argparse.ArgumentParser(prog="unitary-qec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the full verification pipeline")
    build = sub.add_parser("build", parents=[common], help="write the complete unitary to a file")
    build.add_argument("--out", type=Path, required=True)
    tomo = sub.add_parser("tomo", parents=[common], help="process tomography of the logical channel")
    tomo.add_argument("--no-encode", action="store_true", help="skip encoding: noise acts on the bare qubit")
    return parser


def _emit(text: str, report_path: Path | None) -> None:
    sys.stdout.write(text)
    if report_path is not None:
        report_path.write_text(text, encoding="utf-8")


def cmd_verify(args) -> int:
    code, text = load_code(args.code)
    model = load_errors(args.errors, code, text)
    report = run_verification(code, model, seed=args.seed, tol=args.tol)
    _emit(report.to_json(), args.report)
    if report.kl_failure:
        print(f"verification failed at the Knill-Laflamme stage: {report.kl_failure}", file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_build(args) -> int:
    code, text = load_code(args.code)
    model = load_errors(args.errors, code, text)
    reduced, class_map = canonicalize_error_classes(code, model)
    u = build_complete_unitary(build_syndrome_basis(code, reduced, class_map, args.tol), args.tol)
    export_matrix(u, args.out)
    print(f"completion_dim {u.completion_dim}")
    print(f"class_count {u.class_count}")
    if args.report is not None:
        summary = {"code_name": code.name, "dim": u.dim, "class_count": u.class_count,
                   "completion_dim": u.completion_dim, "class_map": list(class_map)}
        args.report.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    return EXIT_PASS


def cmd_tomo(args) -> int:
    code, text = load_code(args.code)
    model = load_errors(args.errors, code, text)
    result = tomography_report(code, model, encode=not args.no_encode)
    _emit(json.dumps(result, indent=2) + "\n", args.report)
    return EXIT_PASS if result["verdict"] == "PASS" else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "build": cmd_build, "tomo": cmd_tomo}


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (KLConditionError, UnsupportedDegeneracyError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, CodeSpecError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
