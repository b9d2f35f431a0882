"""Dense 2**n x 2**n realization of the Pauli-string algebra.

Matrices are plain complex ``numpy`` arrays. The leftmost tensor factor
indexes the outermost 2x2 block structure, which makes qubit ``n-1`` the
most significant bit of a row/column index (see :mod:`cliffgate.pauli_core`).
"""

from __future__ import annotations

import numpy as np

from ._textio import format_complex, parse_complex
from .pauli_core import CliffordElement, PauliString, generator

MAX_DENSE_QUBITS = 10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
LETTER_MATRIX = {"I": I2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}

# row r of _TO_LETTERS gives tr(sigma_r @ B) / 2 from the flattened 2x2 block B
_LETTER_ORDER = "IXYZ"
_TO_LETTERS = np.array(
    [LETTER_MATRIX[ch].T.reshape(4) / 2 for ch in _LETTER_ORDER], dtype=complex
)


def num_qubits(m: np.ndarray) -> int:
    """Qubit count of a square power-of-two matrix, or ``ValueError``."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    d = m.shape[0]
    if d < 2 or d & (d - 1):
        raise ValueError(f"dimension {d} is not a power of two")
    return d.bit_length() - 1


def kron(a: np.ndarray, big: np.ndarray) -> np.ndarray:
    """Block matrix ``[[a11*A, a12*A], [a21*A, a22*A]]``."""
    a = np.asarray(a, dtype=complex)
    big = np.asarray(big, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError(f"left factor must be 2x2, got {a.shape}")
    if big.ndim != 2 or big.shape[0] != big.shape[1]:
        raise ValueError(f"right factor must be square, got {big.shape}")
    if 2 * big.shape[0] > 1 << MAX_DENSE_QUBITS:
        raise ValueError(f"result would exceed {1 << MAX_DENSE_QUBITS} rows")
    return np.block([[a[0, 0] * big, a[0, 1] * big], [a[1, 0] * big, a[1, 1] * big]])


def _check_dense_n(n: int) -> None:
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense realization limited to {MAX_DENSE_QUBITS} qubits, got {n}")


def string_matrix(p: PauliString) -> np.ndarray:
    """Dense matrix of a (phased) Pauli string, built factor by factor."""
    _check_dense_n(p.n)
    m = LETTER_MATRIX[p.letter(0)]
    for k in range(1, p.n):
        m = kron(LETTER_MATRIX[p.letter(k)], m)
    return p.coefficient * m


def to_matrix(a) -> np.ndarray:
    """Dense matrix of a CliffordElement (or PauliString)."""
    if isinstance(a, PauliString):
        return string_matrix(a)
    _check_dense_n(a.n)
    d = 1 << a.n
    out = np.zeros((d, d), dtype=complex)
    for p, c in a.items():
        out += c * string_matrix(p)
    return out


def dense_generator_relation_violations(n: int) -> tuple[float, float]:
    """Dense counterpart of ``generator_relation_violations`` (max-entry errors)."""
    _check_dense_n(n)
    mats = [string_matrix(generator(n, j)) for j in range(2 * n)]
    eye = np.eye(1 << n)
    anti = max(
        (max_entry_error(a @ b + b @ a, 0 * eye) for i, a in enumerate(mats) for b in mats[i + 1:]),
        default=0.0,
    )
    sq = max(max_entry_error(g @ g, eye) for g in mats)
    return anti, sq


def decompose(m: np.ndarray) -> CliffordElement:
    """Pauli expansion ``sum_I c_I g_I`` with ``c_I = tr(g_I M) / 2**n``.

    The trace formula is evaluated one tensor factor at a time on the 2x2
    block structure, costing O(n 4**n) instead of O(16**n).
    """
    m = np.asarray(m, dtype=complex)
    n = num_qubits(m)
    _check_dense_n(n)
    # axes: row bits (qubit n-1 .. 0), then column bits (qubit n-1 .. 0)
    t = m.reshape((2,) * (2 * n))
    order = [ax for k in range(n) for ax in (k, n + k)]
    t = t.transpose(order).reshape((4,) * n)
    for axis in range(n):
        t = np.moveaxis(np.tensordot(_TO_LETTERS, t, axes=([1], [axis])), 0, axis)
    terms = {}
    for idx in zip(*np.nonzero(t)):
        label = "".join(_LETTER_ORDER[i] for i in idx)
        terms[PauliString.from_label(label)] = complex(t[idx])
    return CliffordElement(n, terms)


def exp_i_hermitian(h: CliffordElement) -> np.ndarray:
    """Unitary ``exp(i H)`` for a real-coefficient element ``H``.

    Uses the eigendecomposition of the Hermitian matrix of ``H``.
    """
    if not h.is_real():
        raise ValueError("exp_i_hermitian needs real coefficients (H must be Hermitian)")
    _check_dense_n(h.n)
    hm = to_matrix(h)
    w, v = np.linalg.eigh(hm)
    return (v * np.exp(1j * w)) @ v.conj().T


def is_unitary(m: np.ndarray, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    err = np.abs(m @ m.conj().T - np.eye(m.shape[0]))
    return bool(err.max(initial=0.0) <= tol)


def is_hermitian(m: np.ndarray, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.abs(m - m.conj().T).max(initial=0.0) <= tol)


def max_entry_error(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(np.asarray(a) - np.asarray(b)).max(initial=0.0))


def read_matrix(text: str) -> np.ndarray:
    """Parse the ``dim d`` text format (one row per line, ``a+bi`` entries)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise ValueError(f"expected 'dim d' header, got {lines[0]!r}")
    try:
        d = int(head[1])
    except ValueError:
        raise ValueError(f"bad dimension {head[1]!r}") from None
    if d < 1:
        raise ValueError(f"bad dimension {d}")
    rows = lines[1:]
    if len(rows) != d:
        raise ValueError(f"expected {d} rows, found {len(rows)}")
    out = np.empty((d, d), dtype=complex)
    for r, line in enumerate(rows):
        fields = line.split()
        if len(fields) != d:
            raise ValueError(f"row {r} has {len(fields)} entries, expected {d}")
        out[r] = [parse_complex(f) for f in fields]
    return out


def write_matrix(m: np.ndarray) -> str:
    m = np.asarray(m, dtype=complex)
    lines = [f"dim {m.shape[0]}"]
    lines += [" ".join(format_complex(v) for v in row) for row in m]
    return "\n".join(lines) + "\n"
