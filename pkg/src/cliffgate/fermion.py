"""Fermionic operators inside Cl(2n, C).

Mode ``l`` lives on qubit ``l`` (the rightmost tensor factor is mode 0), so
the Z string attached to ``a_l`` covers modes ``0..l-1`` and contributes
the sign ``(-1)**(occupied modes below l)``. Occupation 1 is ``|1>``.

Two generator families are used: ``generator(n, j)`` squares to +1 and
``e_j = -i * generator(n, j)`` squares to -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrix_rep import MAX_DENSE_QUBITS, max_entry_error, to_matrix
from .pauli_core import CliffordElement, adjoint, anticommutator, elem_mul, generator
from .state_sim import StateVector, apply_element, basis_state

MAX_SYMBOLIC_MODES = 12
MAX_DENSE_MODES = 6


def _check_mode(n: int, l: int) -> None:  # noqa: E741
    if not isinstance(l, int) or not 0 <= l < n:
        raise IndexError(f"mode {l!r} out of range [0, {n})")


def plus_generator(n: int, j: int) -> CliffordElement:
    return CliffordElement.from_string(generator(n, j))


def minus_generator(n: int, j: int) -> CliffordElement:
    """``e_j = -i * generator(n, j)``, which squares to -1."""
    return CliffordElement.from_string(generator(n, j), -1j)


def grassmann_d(n: int, l: int) -> CliffordElement:  # noqa: E741
    """Nilpotent ``d_l = e_{2l} + i e_{2l+1}`` built from the -1-square generators."""
    _check_mode(n, l)
    return minus_generator(n, 2 * l) + minus_generator(n, 2 * l + 1) * 1j


def annihilation(n: int, l: int) -> CliffordElement:  # noqa: E741
    """``a_l = I..I (X + iY)/2 Z..Z`` with ``l`` trailing Z letters."""
    _check_mode(n, l)
    return (plus_generator(n, 2 * l) + plus_generator(n, 2 * l + 1) * 1j) * 0.5


def creation(n: int, l: int) -> CliffordElement:  # noqa: E741
    return adjoint(annihilation(n, l))


def number_operator(n: int, l: int) -> CliffordElement:  # noqa: E741
    """``N_l = a_l^dagger a_l``."""
    return elem_mul(creation(n, l), annihilation(n, l))


@dataclass
class CarReport:
    """Outcome of checking the canonical anticommutation relations.

    ``entries`` holds ``(relation, i, j, violation)`` where ``relation`` is
    one of ``"{a_i,a_j}"``, ``"{a+_i,a+_j}"``, ``"{a+_i,a_j}"``.
    """

    n: int
    mode: str
    entries: list[tuple[str, int, int, float]] = field(default_factory=list)

    @property
    def max_violation(self) -> float:
        return max((v for *_, v in self.entries), default=0.0)

    def relation_max(self, relation: str) -> float:
        return max((v for r, _, _, v in self.entries if r == relation), default=0.0)

    def passed(self, tol: float = 0.0) -> bool:
        return self.max_violation <= tol


RELATIONS = ("{a_i,a_j}", "{a+_i,a+_j}", "{a+_i,a_j}")


def verify_car(n: int, mode: str = "symbolic") -> CarReport:
    """Check all three CAR families over every ordered index pair.

    Symbolic violations are the largest coefficient of the difference from
    the expected element (exactly 0 when the relations hold); dense ones are
    the largest matrix-entry difference.
    """
    if mode == "symbolic":
        cap = MAX_SYMBOLIC_MODES
    elif mode == "dense":
        cap = min(MAX_DENSE_MODES, MAX_DENSE_QUBITS)
    else:
        raise ValueError(f"mode must be 'symbolic' or 'dense', got {mode!r}")
    if not 1 <= n <= cap:
        raise ValueError(f"{mode} CAR check supports 1..{cap} modes, got {n}")

    ops = {
        "a": [annihilation(n, l) for l in range(n)],
        "a+": [creation(n, l) for l in range(n)],
    }
    if mode == "dense":
        mats = {k: [to_matrix(x) for x in v] for k, v in ops.items()}
        eye = np.eye(1 << n)

    def violation(kx, i, ky, j):
        expected_one = kx == "a+" and ky == "a" and i == j
        if mode == "symbolic":
            got = anticommutator(ops[kx][i], ops[ky][j])
            return got.max_abs_diff(CliffordElement.identity(n) if expected_one else CliffordElement.zero(n))
        x, y = mats[kx][i], mats[ky][j]
        return max_entry_error(x @ y + y @ x, eye if expected_one else 0 * eye)

    report = CarReport(n, mode)
    for i in range(n):
        for j in range(n):
            report.entries.append((RELATIONS[0], i, j, violation("a", i, "a", j)))
            report.entries.append((RELATIONS[1], i, j, violation("a+", i, "a+", j)))
            report.entries.append((RELATIONS[2], i, j, violation("a+", i, "a", j)))
    return report


def occupation_state(occ) -> StateVector:
    """Basis state with ``occ[l]`` particles in mode ``l``."""
    occ = list(occ)
    return basis_state(list(reversed(occ)))


def apply_fermionic(op: CliffordElement, occ) -> StateVector:
    """Apply ``op`` to the occupation-number state ``occ`` (mode order)."""
    occ = list(occ)
    if len(occ) != op.n:
        raise ValueError(f"occupation list has {len(occ)} modes, operator has {op.n}")
    return apply_element(op, occupation_state(occ))


def grassmann_products(n: int) -> list[CliffordElement]:
    """All ``2**n`` ordered products ``d_{i1} d_{i2} ...`` with ``i1 < i2 < ...``."""
    ds = [grassmann_d(n, l) for l in range(n)]
    out = []
    for mask in range(1 << n):
        prod = CliffordElement.identity(n)
        for l in range(n):
            if mask >> l & 1:
                prod = elem_mul(prod, ds[l])
        out.append(prod)
    return out


def grassmann_rank(n: int) -> int:
    """Rank of the dense realizations of :func:`grassmann_products`."""
    mats = np.array([to_matrix(p).reshape(-1) for p in grassmann_products(n)])
    return int(np.linalg.matrix_rank(mats))
