"""A three-instruction circuit language over Pauli elements.

One instruction per line (or separated by ``;``); ``#`` starts a comment::

    qubits 2              # optional header
    state 00              # reset to a basis state
    apply XX + 0.5i ZY    # act with a Clifford element
    rot 0.785398163 YI    # act with exp(i * theta * P)

Without a header the qubit count is taken from the first instruction that
fixes it. Execution starts from ``|0...0>`` unless an initial state is given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .matrix_rep import MAX_DENSE_QUBITS, exp_i_hermitian
from .pauli_core import CliffordElement, PauliString, parse_string
from .state_sim import (
    StateVector,
    apply_element,
    apply_pauli_rotation,
    apply_unitary_dense,
    basis_state,
    zero_state,
)


@dataclass(frozen=True)
class Step:
    kind: str  # "state", "apply" or "rot"
    bits: str = ""
    element: CliffordElement | None = None
    theta: float = 0.0
    axis: PauliString | None = None


@dataclass
class CircuitProgram:
    n: int | None
    steps: list[Step] = field(default_factory=list)


def _step_qubits(step: Step) -> int:
    if step.kind == "state":
        return len(step.bits)
    if step.kind == "apply":
        return step.element.n
    return step.axis.n


def parse_circuit(text: str) -> CircuitProgram:
    n = None
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for chunk in raw.split("#", 1)[0].split(";"):
            line = chunk.strip()
            if not line:
                continue
            word, _, rest = line.partition(" ")
            rest = rest.strip()
            try:
                if word == "qubits":
                    if steps or n is not None:
                        raise ValueError("'qubits' must come first")
                    n = int(rest)
                    continue
                if word == "state":
                    bits = rest.replace(" ", "")
                    if not bits or set(bits) - {"0", "1"}:
                        raise ValueError(f"bad bit string {rest!r}")
                    step = Step("state", bits=bits)
                elif word == "apply":
                    step = Step("apply", element=parse_string(rest))
                elif word == "rot":
                    theta_s, _, letters = rest.partition(" ")
                    theta = float(theta_s)
                    if not math.isfinite(theta):
                        raise ValueError("rotation angle must be finite")
                    step = Step("rot", theta=theta, axis=PauliString.from_label(letters.strip()))
                else:
                    raise ValueError(f"unknown instruction {word!r}")
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            if n is None:
                n = _step_qubits(step)
            elif _step_qubits(step) != n:
                raise ValueError(f"line {lineno}: instruction acts on {_step_qubits(step)} qubits, program has {n}")
            steps.append(step)
    return CircuitProgram(n, steps)


def run_circuit(program: CircuitProgram, initial: StateVector | None = None) -> StateVector:
    """Execute the steps in order and return the final state.

    ``rot`` uses the dense exponential up to the dense cap and the closed
    form ``cos(theta) + i sin(theta) P`` beyond it.
    """
    n = program.n
    if initial is not None:
        if n is not None and initial.n != n:
            raise ValueError(f"initial state has {initial.n} qubits, program has {n}")
        psi = initial
    elif n is None:
        raise ValueError("cannot infer the qubit count; give a 'qubits' header or an initial state")
    else:
        psi = zero_state(n)
    for step in program.steps:
        if step.kind == "state":
            psi = basis_state(step.bits)
        elif step.kind == "apply":
            psi = apply_element(step.element, psi)
        elif psi.n <= MAX_DENSE_QUBITS:
            u = exp_i_hermitian(CliffordElement.from_string(step.axis, step.theta))
            psi = apply_unitary_dense(u, psi)
        else:
            psi = apply_pauli_rotation(step.theta, step.axis, psi)
    return psi
