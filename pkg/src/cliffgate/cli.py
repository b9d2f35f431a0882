"""Command-line entry point.

Exit status: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ._textio import format_real
from .circuit import parse_circuit, run_circuit
from .clifford_real import CL30, blade_name, rotate, rotation_matrix, rotor_from_plane
from .fermion import MAX_SYMBOLIC_MODES, verify_car
from .matrix_rep import MAX_DENSE_QUBITS, decompose, dense_generator_relation_violations, read_matrix
from .pauli_core import MAX_QUBITS, format_string, generator_relation_violations
from .state_sim import read_state, write_state

DECOMPOSE_TOL = 1e-12


class UsageError(Exception):
    pass


def cmd_relations(args) -> int:
    n = args.n
    cap = MAX_QUBITS if args.mode == "symbolic" else MAX_DENSE_QUBITS
    if not 1 <= n <= cap:
        raise UsageError(f"--n must be in [1, {cap}] for {args.mode} mode")
    if args.mode == "symbolic":
        anti, sq = generator_relation_violations(n)
        tol = 0.0
    else:
        anti, sq = dense_generator_relation_violations(n)
        tol = 1e-12
    gens = 2 * n
    ok = anti <= tol and sq <= tol
    print(f"mode: {args.mode}")
    print(f"generators: {gens}")
    print(f"pairs: {gens * (gens - 1) // 2}")
    print(f"max anticommutator violation: {format_real(anti)}")
    print(f"max square violation: {format_real(sq)}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_decompose(args) -> int:
    try:
        m = read_matrix(Path(args.matrix_file).read_text())
        elem = decompose(m)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    print(format_string(elem.prune(DECOMPOSE_TOL)))
    return 0


def cmd_simulate(args) -> int:
    try:
        program = parse_circuit(Path(args.circuit_file).read_text())
        if args.qubits is not None:
            if program.n is not None and program.n != args.qubits:
                raise ValueError(f"--qubits {args.qubits} conflicts with program ({program.n} qubits)")
            program.n = args.qubits
        initial = read_state(Path(args.initial).read_text()) if args.initial else None
        psi = run_circuit(program, initial)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    text = write_state(psi)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_rotor(args) -> int:
    i, j = args.plane
    if i == j or not {i, j} <= {1, 2, 3}:
        raise UsageError("--plane needs two distinct indices from 1, 2, 3")
    r = rotor_from_plane(CL30, i, j, args.angle)
    v = rotate(r, args.vector)
    mat = rotation_matrix(r)
    rotor_text = " + ".join(f"{format_real(c)} {blade_name(b)}" for b, c in r.mv.terms.items())
    print(f"rotor: {rotor_text}")
    print("vector: " + " ".join(format_real(x) for x in v))
    print("matrix:")
    for row in mat:
        print("  " + " ".join(format_real(x) for x in row))
    return 0


def cmd_fermion(args) -> int:
    if not 1 <= args.n <= MAX_SYMBOLIC_MODES:
        raise UsageError(f"--n must be in [1, {MAX_SYMBOLIC_MODES}]")
    report = verify_car(args.n, "symbolic")
    for rel, i, j, v in report.entries:
        status = "PASS" if v == 0 else "FAIL"
        print(f"{rel} i={i} j={j} violation={format_real(v)} {status}")
    ok = report.passed()
    print(f"max violation: {format_real(report.max_violation)}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliffgate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relations", help="check generator anticommutation and squares")
    p.add_argument("--n", type=int, required=True, help="qubit count")
    p.add_argument("--mode", choices=("symbolic", "dense"), default="symbolic")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("decompose", help="Pauli expansion of a matrix file")
    p.add_argument("matrix_file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("simulate", help="run a circuit program")
    p.add_argument("circuit_file")
    p.add_argument("--out", help="write the final state here instead of stdout")
    p.add_argument("--in", dest="initial", help="initial state file")
    p.add_argument("--qubits", type=int, help="qubit count when the program does not fix it")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("rotor", help="rotate a 3D vector with a Cl(3,0) rotor")
    p.add_argument("--angle", type=float, required=True, help="rotation angle in radians")
    p.add_argument("--plane", type=int, nargs=2, default=(1, 2), metavar=("I", "J"))
    p.add_argument("--vector", type=float, nargs=3, required=True, metavar=("X", "Y", "Z"))
    p.set_defaults(func=cmd_rotor)

    p = sub.add_parser("fermion", help="verify the canonical anticommutation relations")
    p.add_argument("--n", type=int, required=True, help="number of modes")
    p.set_defaults(func=cmd_fermion)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
