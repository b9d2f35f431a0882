"""Real Clifford algebras Cl(m, l) over blade bitmasks.

Generators ``e_1 .. e_{m+l}`` anticommute; the first ``m`` square to -1 and
the remaining ``l`` to +1. Bit ``i`` of a blade mask stands for ``e_{i+1}``
and a blade is the ascending product of its generators. Quaternions are
Cl(2, 0) with ``i1 = e1``, ``i2 = e2``, ``i3 = e1 e2``.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .pauli_core import CliffordElement, PauliString

MAX_GENERATORS = 16


@dataclass(frozen=True)
class Signature:
    m: int
    l: int  # noqa: E741

    def __post_init__(self):
        if self.m < 0 or self.l < 0 or self.m + self.l > MAX_GENERATORS:
            raise ValueError(f"need m, l >= 0 and m + l <= {MAX_GENERATORS}, got ({self.m}, {self.l})")

    @property
    def dim(self) -> int:
        """Number of generators."""
        return self.m + self.l

    @property
    def neg_mask(self) -> int:
        return (1 << self.m) - 1

    def square(self, i: int) -> int:
        """Square of generator ``e_{i+1}`` (0-based ``i``)."""
        return -1 if i < self.m else 1


def grade(mask: int) -> int:
    return mask.bit_count()


def _check_blade(sig: Signature, mask: int) -> None:
    if not isinstance(mask, int) or mask < 0 or mask >> sig.dim:
        raise ValueError(f"blade mask {mask!r} invalid for Cl{sig.m, sig.l}")


def blade_mul(sig: Signature, a: int, b: int) -> tuple[int, int]:
    """Product of two blades as ``(sign, mask)``."""
    _check_blade(sig, a)
    _check_blade(sig, b)
    return _blade_mul(sig.neg_mask, a, b)


def _blade_mul(neg_mask: int, a: int, b: int) -> tuple[int, int]:
    # transpositions: each generator of b passes the higher generators of a
    swaps = 0
    t = a >> 1
    while t:
        swaps += (t & b).bit_count()
        t >>= 1
    swaps += (a & b & neg_mask).bit_count()
    return (-1 if swaps & 1 else 1), a ^ b


def basis_blades(sig: Signature) -> Iterator[int]:
    """All ``2**(m+l)`` blade masks, by grade then mask."""
    return iter(sorted(range(1 << sig.dim), key=lambda b: (grade(b), b)))


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i + 1) if i < 9 else f"({i + 1})" for i in range(mask.bit_length()) if mask >> i & 1)


class Multivector:
    """Sparse real combination of blades over a fixed signature."""

    __slots__ = ("sig", "_terms")

    def __init__(self, sig: Signature, terms=None):
        acc: dict[int, float] = {}
        for mask, c in (terms or {}).items():
            _check_blade(sig, mask)
            acc[mask] = acc.get(mask, 0.0) + float(c)
        self._set(sig, acc)

    def _set(self, sig, acc):
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "_terms", {k: acc[k] for k in sorted(acc) if acc[k] != 0})

    @classmethod
    def _raw(cls, sig, acc) -> Multivector:
        obj = cls.__new__(cls)
        obj._set(sig, acc)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def scalar(cls, sig: Signature, value: float = 1.0) -> Multivector:
        return cls(sig, {0: value})

    @classmethod
    def blade(cls, sig: Signature, mask: int, coeff: float = 1.0) -> Multivector:
        return cls(sig, {mask: coeff})

    @classmethod
    def gen(cls, sig: Signature, i: int) -> Multivector:
        """Generator ``e_i`` (1-based, as in the usual notation)."""
        if not 1 <= i <= sig.dim:
            raise IndexError(f"generator e{i} not in Cl{sig.m, sig.l}")
        return cls(sig, {1 << (i - 1): 1.0})

    @classmethod
    def vector(cls, sig: Signature, coeffs: Sequence[float]) -> Multivector:
        if len(coeffs) != sig.dim:
            raise ValueError(f"expected {sig.dim} vector coefficients, got {len(coeffs)}")
        return cls(sig, {1 << i: c for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> dict[int, float]:
        return dict(self._terms)

    def __getitem__(self, mask: int) -> float:
        return self._terms.get(mask, 0.0)

    def grades(self) -> set[int]:
        return {grade(b) for b in self._terms}

    def grade_part(self, k: int) -> Multivector:
        return Multivector._raw(self.sig, {b: c for b, c in self._terms.items() if grade(b) == k})

    def is_even(self) -> bool:
        return all(grade(b) % 2 == 0 for b in self._terms)

    def vector_part(self) -> list[float]:
        return [self._terms.get(1 << i, 0.0) for i in range(self.sig.dim)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.sig, frozenset(self._terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mv_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mv_add(self, mv_scale(other, -1.0))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mv_add(other, mv_scale(self, -1.0))

    def __neg__(self) -> Multivector:
        return mv_scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, Real):
            return mv_scale(self, other)
        if isinstance(other, Multivector):
            return mv_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return mv_scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return mv_scale(self, 1.0 / other)
        return NotImplemented

    def _coerce(self, other):
        if isinstance(other, Multivector):
            return other
        if isinstance(other, Real):
            return Multivector.scalar(self.sig, other)
        return NotImplemented

    def max_abs_diff(self, other: Multivector) -> float:
        _same_sig(self, other)
        keys = self._terms.keys() | other._terms.keys()
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def __repr__(self) -> str:
        if not self._terms:
            return f"Multivector(Cl{self.sig.m, self.sig.l}, 0)"
        body = " + ".join(f"{c:g}*{blade_name(b)}" for b, c in self._terms.items())
        return f"Multivector(Cl{self.sig.m, self.sig.l}, {body})"


def _same_sig(a: Multivector, b: Multivector) -> None:
    if a.sig != b.sig:
        raise ValueError(f"signature mismatch: {a.sig} vs {b.sig}")


def mv_add(a: Multivector, b: Multivector) -> Multivector:
    _same_sig(a, b)
    acc = dict(a._terms)
    for k, c in b._terms.items():
        acc[k] = acc.get(k, 0.0) + c
    return Multivector._raw(a.sig, acc)


def mv_scale(a: Multivector, s: float) -> Multivector:
    s = float(s)
    return Multivector._raw(a.sig, {k: c * s for k, c in a._terms.items()})


def mv_mul(a: Multivector, b: Multivector) -> Multivector:
    _same_sig(a, b)
    neg = a.sig.neg_mask
    acc: dict[int, float] = {}
    for ba, ca in a._terms.items():
        for bb, cb in b._terms.items():
            sign, mask = _blade_mul(neg, ba, bb)
            acc[mask] = acc.get(mask, 0.0) + sign * ca * cb
    return Multivector._raw(a.sig, acc)


def reverse(a: Multivector) -> Multivector:
    """Reverse generator order in every blade: grade k picks up (-1)**(k(k-1)/2)."""
    out = {}
    for b, c in a._terms.items():
        k = grade(b)
        out[b] = -c if (k * (k - 1) // 2) % 2 else c
    return Multivector._raw(a.sig, out)


def quadratic_value(a: Multivector) -> float:
    """Scalar part of ``a * reverse(a)``; for a vector this is ``v . v``."""
    return mv_mul(a, reverse(a))[0]


# ---------------------------------------------------------------------------
# two-dimensional algebras

CL20 = Signature(2, 0)
CL02 = Signature(0, 2)
CL30 = Signature(3, 0)

_U1 = np.array([[0.0, 1.0], [1.0, 0.0]])
_U2 = np.array([[1.0, 0.0], [0.0, -1.0]])


def quaternion(q0: float, q1: float, q2: float, q3: float) -> Multivector:
    """``q0 + q1 i1 + q2 i2 + q3 i3`` in Cl(2, 0)."""
    return Multivector(CL20, {0: q0, 1: q1, 2: q2, 3: q3})


def matrix_rep_cl02(a: Multivector) -> np.ndarray:
    """Real 2x2 matrix of an element of Cl(0, 2) with u1, u2 as below.

    ``u1 = [[0, 1], [1, 0]]``, ``u2 = [[1, 0], [0, -1]]`` and
    ``u1 u2 = [[0, -1], [1, 0]]``.
    """
    if a.sig != CL02:
        raise ValueError(f"matrix_rep_cl02 needs signature (0, 2), got {a.sig}")
    images = {0: np.eye(2), 1: _U1, 2: _U2, 3: _U1 @ _U2}
    out = np.zeros((2, 2))
    for b, c in a._terms.items():
        out += c * images[b]
    return out


_PAULI_IMAGES = {
    # u1 -> X, u2 -> Z, u1 u2 -> X Z = Y / i
    CL02: {0: ("I", 1), 1: ("X", 1), 2: ("Z", 1), 3: ("Y", -1j)},
    # i1 -> iX, i2 -> iY, i1 i2 -> (iX)(iY) = -iZ
    CL20: {0: ("I", 1), 1: ("X", 1j), 2: ("Y", 1j), 3: ("Z", -1j)},
}


def embed_pauli(a: Multivector) -> CliffordElement:
    """Injective algebra map of Cl(0, 2) or Cl(2, 0) into 2x2 complex matrices."""
    images = _PAULI_IMAGES.get(a.sig)
    if images is None:
        raise ValueError(f"embed_pauli supports Cl(2,0) and Cl(0,2), got {a.sig}")
    terms = []
    for b, c in a._terms.items():
        letter, factor = images[b]
        terms.append((PauliString.from_label(letter), c * factor))
    return CliffordElement(1, terms)


# ---------------------------------------------------------------------------
# even subalgebra


@dataclass(frozen=True)
class EvenIso:
    """Map between the even part of ``source`` and the algebra ``target``.

    Target generator ``f_j`` corresponds to ``e_{perm[j]} e_N`` where ``N``
    is the last source generator; ``perm`` puts negative squares first.
    """

    source: Signature
    target: Signature
    perm: tuple[int, ...]
    # target blade -> (sign, source blade) and its inverse
    forward: dict
    backward: dict


def _even_iso_table(sig: Signature) -> EvenIso:
    if sig.dim < 1:
        raise ValueError("even_iso needs at least one generator")
    top = sig.dim - 1
    squares = [-sig.square(i) * sig.square(top) for i in range(top)]
    perm = tuple(sorted(range(top), key=lambda i: squares[i] > 0))
    target = Signature(sum(1 for s in squares if s < 0), sum(1 for s in squares if s > 0))
    last = Multivector.blade(sig, 1 << top)
    gens = [mv_mul(Multivector.blade(sig, 1 << i), last) for i in perm]
    forward = {}
    for tb in range(1 << target.dim):
        img = Multivector.scalar(sig)
        for j in range(target.dim):
            if tb >> j & 1:
                img = mv_mul(img, gens[j])
        ((sb, c),) = img._terms.items()
        forward[tb] = (int(c), sb)
    backward = {sb: (s, tb) for tb, (s, sb) in forward.items()}
    return EvenIso(sig, target, perm, forward, backward)


def even_iso_signature(sig: Signature) -> Signature:
    return _even_iso_table(sig).target


def even_iso(a: Multivector) -> Multivector:
    """Image of an even element of Cl(m, l) in the algebra with one generator fewer.

    The result's signature is computed from the squares of ``e_i e_N``.
    """
    if not a.is_even():
        raise ValueError("even_iso needs an element with only even-grade blades")
    table = _even_iso_table(a.sig)
    out = {}
    for sb, c in a._terms.items():
        s, tb = table.backward[sb]
        out[tb] = s * c
    return Multivector(table.target, out)


def even_iso_inverse(b: Multivector, source: Signature) -> Multivector:
    """Send an element of the reduced algebra back into the even part of ``source``."""
    table = _even_iso_table(source)
    if b.sig != table.target:
        raise ValueError(f"element lives in {b.sig}, expected {table.target}")
    out = {}
    for tb, c in b._terms.items():
        s, sb = table.forward[tb]
        out[sb] = s * c
    return Multivector(source, out)


# ---------------------------------------------------------------------------
# rotors


@dataclass(frozen=True)
class Rotor:
    """Even multivector ``R`` with ``R * reverse(R) = 1``."""

    mv: Multivector

    def __post_init__(self):
        if not self.mv.is_even():
            raise ValueError("rotor must have only even-grade blades")
        norm = mv_mul(self.mv, reverse(self.mv))
        err = norm.max_abs_diff(Multivector.scalar(self.mv.sig))
        if err > 1e-12:
            raise ValueError(f"rotor is not normalized: |R R~ - 1| = {err:.3g}")

    @property
    def sig(self) -> Signature:
        return self.mv.sig

    def __mul__(self, other: Rotor) -> Rotor:
        return Rotor(mv_mul(self.mv, other.mv))

    def __neg__(self) -> Rotor:
        return Rotor(-self.mv)

    def inverse(self) -> Rotor:
        return Rotor(reverse(self.mv))


def rotor_from_vectors(sig: Signature, vectors: Sequence[Sequence[float]], tol: float = 1e-10) -> Rotor:
    """Ordered product ``v1 v2 ... v2k`` of unit vectors."""
    if not vectors or len(vectors) % 2:
        raise ValueError("need a positive even number of vectors")
    prod = Multivector.scalar(sig)
    for v in vectors:
        mv = Multivector.vector(sig, v)
        q = sum(sig.square(i) * c * c for i, c in enumerate(v))
        if abs(abs(q) - 1.0) > tol:
            raise ValueError(f"vector {list(v)} has |Q(v)| = {abs(q):.12g}, expected 1")
        prod = mv_mul(prod, mv)
    return Rotor(prod)


def rotor_from_plane(sig: Signature, i: int, j: int, theta: float) -> Rotor:
    """``cos(theta/2) + sin(theta/2) e_i e_j`` (1-based ``i != j``).

    In Cl(3, 0) this turns ``e_i`` toward ``e_j`` by ``theta``.
    """
    if i == j or not (1 <= i <= sig.dim and 1 <= j <= sig.dim):
        raise ValueError(f"bad plane ({i}, {j}) for {sig.dim} generators")
    plane = mv_mul(Multivector.gen(sig, i), Multivector.gen(sig, j))
    if mv_mul(plane, plane)[0] != -1:
        raise ValueError(f"plane e{i}e{j} does not square to -1; no circular rotor")
    return Rotor(Multivector.scalar(sig, math.cos(theta / 2)) + plane * math.sin(theta / 2))


def rotate(r: Rotor, v: Sequence[float], tol: float = 1e-10) -> list[float]:
    """Coefficients of ``r v r^-1``; raises if the result leaves grade 1."""
    mv = Multivector.vector(r.sig, v)
    out = mv_mul(mv_mul(r.mv, mv), reverse(r.mv))
    stray = max((abs(c) for b, c in out._terms.items() if grade(b) != 1), default=0.0)
    if stray > tol:
        raise RuntimeError(f"conjugation produced non-vector parts of size {stray:.3g}")
    return out.vector_part()


def rotation_matrix(r: Rotor) -> np.ndarray:
    """Matrix whose k-th column is the image of ``e_{k+1}``."""
    n = r.sig.dim
    cols = [rotate(r, [1.0 if i == k else 0.0 for i in range(n)]) for k in range(n)]
    return np.array(cols).T
