"""State vectors and the action of Clifford elements on them.

Basis state ``|l1 l2 ... ln>`` sits at index ``sum(l_k * 2**(n-k))``, so
``l1`` is the most significant bit and belongs to qubit ``n-1``. Pauli
strings act through an XOR sweep over indices without forming matrices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from ._textio import format_complex, parse_complex
from .pauli_core import CliffordElement, PauliString

DEFAULT_MAX_QUBITS = 20
HARD_MAX_QUBITS = 26
MAX_QUBITS_ENV = "CLIFFGATE_MAX_QUBITS"

_PHASES = np.array([1, 1j, -1, -1j], dtype=complex)


def max_qubits() -> int:
    """State-vector qubit ceiling, overridable through ``CLIFFGATE_MAX_QUBITS``."""
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_QUBITS_ENV}={raw!r} is not an integer") from None
    if not 1 <= cap <= HARD_MAX_QUBITS:
        raise ValueError(f"{MAX_QUBITS_ENV} must be in [1, {HARD_MAX_QUBITS}], got {cap}")
    return cap


def _check_n(n: int) -> None:
    cap = max_qubits()
    if not 1 <= n <= cap:
        raise ValueError(f"state vectors support 1..{cap} qubits, got {n}")


@dataclass(frozen=True, eq=False)
class StateVector:
    """``2**n`` complex amplitudes; normalization is not enforced."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        _check_n(self.n)
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.shape[0] != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} amplitudes, got {amps.shape[0]}")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, amps) -> StateVector:
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        d = amps.shape[0]
        if d < 2 or d & (d - 1):
            raise ValueError(f"amplitude count {d} is not a power of two")
        return cls(d.bit_length() - 1, amps)

    def __len__(self) -> int:
        return self.amps.shape[0]

    def __add__(self, other: StateVector) -> StateVector:
        _same_n(self, other)
        return StateVector(self.n, self.amps + other.amps)

    def __sub__(self, other: StateVector) -> StateVector:
        _same_n(self, other)
        return StateVector(self.n, self.amps - other.amps)

    def __mul__(self, s) -> StateVector:
        return StateVector(self.n, self.amps * complex(s))

    __rmul__ = __mul__

    def allclose(self, other: StateVector, tol: float = 1e-12) -> bool:
        _same_n(self, other)
        return bool(np.abs(self.amps - other.amps).max() <= tol)

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(norm(self) - 1.0) <= tol


def _same_n(a, b) -> None:
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} != {b.n}")


def basis_state(bits) -> StateVector:
    """``|l1 ... ln>`` from a bit sequence or a string such as ``"010"``."""
    bits = list(bits)
    if not bits:
        raise ValueError("need at least one bit")
    index = 0
    for b in bits:
        if b not in (0, 1, "0", "1"):
            raise ValueError(f"invalid bit {b!r}")
        index = 2 * index + int(b)
    n = len(bits)
    _check_n(n)
    amps = np.zeros(1 << n, dtype=complex)
    amps[index] = 1
    return StateVector(n, amps)


def zero_state(n: int) -> StateVector:
    return basis_state([0] * n)


def _string_action(p: PauliString, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(source, factor)`` with ``(P psi)[L] = factor[L] * psi[source[L]]``.

    For phase-0 letters ``P = i**(phase + |x&z|) X**x Z**z`` and
    ``X**x Z**z |L> = (-1)**popcount(z & L) |L ^ x>``.
    """
    idx = np.arange(1 << n, dtype=np.uint64)
    source = idx ^ np.uint64(p.x_mask)
    parity = np.bitwise_count(source & np.uint64(p.z_mask)) & np.uint8(1)
    base = _PHASES[(p.phase + (p.x_mask & p.z_mask).bit_count()) & 3]
    factor = np.where(parity == 1, -base, base)
    return source, factor


def apply_string(p: PauliString, psi: StateVector) -> StateVector:
    """Apply a (phased) Pauli string in O(2**n) time."""
    _same_n(p, psi)
    source, factor = _string_action(p, psi.n)
    return StateVector(psi.n, factor * psi.amps[source])


def apply_element(g: CliffordElement, psi: StateVector) -> StateVector:
    """Apply ``sum_I a_I g_I`` by linearity over its strings."""
    _same_n(g, psi)
    out = np.zeros_like(psi.amps)
    for p, c in g.items():
        source, factor = _string_action(p, psi.n)
        out += c * factor * psi.amps[source]
    return StateVector(psi.n, out)


def apply_pauli_rotation(theta: float, p: PauliString, psi: StateVector) -> StateVector:
    """``exp(i theta P) psi = cos(theta) psi + i sin(theta) P psi`` for phase-0 ``P``."""
    if p.phase:
        raise ValueError("rotation axis must be a phase-0 (Hermitian) string")
    moved = apply_string(p, psi)
    return StateVector(psi.n, np.cos(theta) * psi.amps + 1j * np.sin(theta) * moved.amps)


def apply_unitary_dense(u: np.ndarray, psi: StateVector) -> StateVector:
    u = np.asarray(u, dtype=complex)
    if u.shape != (len(psi), len(psi)):
        raise ValueError(f"matrix shape {u.shape} does not match {len(psi)} amplitudes")
    return StateVector(psi.n, u @ psi.amps)


def inner(psi: StateVector, phi: StateVector) -> complex:
    """``<psi|phi>``, conjugate-linear in ``psi``."""
    _same_n(psi, phi)
    return complex(np.vdot(psi.amps, phi.amps))


def norm(psi: StateVector) -> float:
    return float(np.linalg.norm(psi.amps))


def expectation(psi: StateVector, h: CliffordElement) -> complex:
    return inner(psi, apply_element(h, psi))


def read_state(text: str) -> StateVector:
    """Parse the ``qubits n`` text format (one amplitude per line)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty state file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "qubits":
        raise ValueError(f"expected 'qubits n' header, got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise ValueError(f"bad qubit count {head[1]!r}") from None
    _check_n(n)
    if len(lines) - 1 != 1 << n:
        raise ValueError(f"expected {1 << n} amplitudes, found {len(lines) - 1}")
    return StateVector(n, [parse_complex(ln) for ln in lines[1:]])


def write_state(psi: StateVector) -> str:
    body = "\n".join(format_complex(a) for a in psi.amps)
    return f"qubits {psi.n}\n{body}\n"
