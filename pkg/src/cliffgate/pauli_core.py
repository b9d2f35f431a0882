"""Pauli-string algebra of the complex Clifford algebra Cl(2n, C).

A :class:`PauliString` is ``i**phase`` times a Kronecker product of the
letters I, X, Y, Z. Qubit ``k`` is the k-th tensor factor counted from the
right, so in a label such as ``"XIZ"`` the ``Z`` acts on qubit 0 and the
``X`` on qubit 2. Bit ``k`` of ``x_mask``/``z_mask`` describes qubit ``k``::

    (x, z) = (0, 0) -> I    (1, 0) -> X    (0, 1) -> Z    (1, 1) -> Y

A phase-0 string is literally the Kronecker product of its letters, so it
is Hermitian and squares to the identity. Products are tracked exactly with
integer phase arithmetic mod 4.

:class:`CliffordElement` is a sparse complex combination of phase-0 strings.
"""

from __future__ import annotations

import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from numbers import Number

from ._textio import format_complex, format_real

MAX_QUBITS = 64

_PHASE_VALUES = (1 + 0j, 1j, -1 + 0j, -1j)
_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTER.items()}


def _check_n(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {n!r}")


def _popcount(v: int) -> int:
    return v.bit_count()


def _mul_masks(ax: int, az: int, bx: int, bz: int) -> tuple[int, int, int]:
    """Multiply two phase-0 strings given by masks.

    Returns ``(x, z, phase)`` with ``A * B = i**phase * C``. Each letter is
    ``i**(x*z) X**x Z**z``; moving ``Z**az`` past ``X**bx`` costs
    ``(-1)**popcount(az & bx)``.
    """
    cx = ax ^ bx
    cz = az ^ bz
    phase = (
        _popcount(ax & az)
        + _popcount(bx & bz)
        + 2 * _popcount(az & bx)
        - _popcount(cx & cz)
    ) & 3
    return cx, cz, phase


@dataclass(frozen=True, slots=True)
class PauliString:
    """``i**phase`` times a tensor product of n Pauli letters."""

    n: int
    x_mask: int = 0
    z_mask: int = 0
    phase: int = 0

    def __post_init__(self):
        _check_n(self.n)
        limit = 1 << self.n
        for name in ("x_mask", "z_mask"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0 or v >= limit:
                raise ValueError(f"{name}={v!r} does not fit in {self.n} qubits")
        object.__setattr__(self, "phase", int(self.phase) & 3)

    @classmethod
    def from_label(cls, label: str, phase: int = 0) -> PauliString:
        """Build from letters such as ``"XIZ"`` (leftmost letter = highest qubit)."""
        if not label or any(ch not in "IXYZ" for ch in label):
            raise ValueError(f"bad Pauli label {label!r}")
        n = len(label)
        x = z = 0
        for pos, ch in enumerate(label):
            bx, bz = _BITS[ch]
            k = n - 1 - pos
            x |= bx << k
            z |= bz << k
        return cls(n, x, z, phase)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    def letter(self, k: int) -> str:
        """Letter acting on qubit ``k``."""
        return _LETTER[((self.x_mask >> k) & 1, (self.z_mask >> k) & 1)]

    @property
    def label(self) -> str:
        return "".join(self.letter(k) for k in reversed(range(self.n)))

    @property
    def coefficient(self) -> complex:
        return _PHASE_VALUES[self.phase]

    @property
    def weight(self) -> int:
        return _popcount(self.x_mask | self.z_mask)

    def canonical(self) -> PauliString:
        """The same letters with phase 0."""
        return PauliString(self.n, self.x_mask, self.z_mask)

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0 and self.phase == 0

    def __mul__(self, other):
        if isinstance(other, PauliString):
            return mul(self, other)
        return NotImplemented

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x_mask, self.z_mask, self.phase + 2)

    def __str__(self) -> str:
        return ("", "i", "-", "-i")[self.phase] + self.label


def identity(n: int) -> PauliString:
    return PauliString(n)


def generator(n: int, j: int) -> PauliString:
    """Generator number ``j`` of Cl(2n, C) (squares to +1).

    For ``j = 2k`` this is ``I...I X Z...Z`` and for ``j = 2k + 1`` it is
    ``I...I Y Z...Z``, with ``k`` trailing Z letters on qubits ``0..k-1``.
    """
    _check_n(n)
    if not isinstance(j, int) or not 0 <= j < 2 * n:
        raise IndexError(f"generator index {j!r} out of range [0, {2 * n})")
    k = j // 2
    below = (1 << k) - 1
    x = 1 << k
    z = below | (x if j % 2 else 0)
    return PauliString(n, x, z)


def generators(n: int) -> list[PauliString]:
    return [generator(n, j) for j in range(2 * n)]


def generator_relation_violations(n: int) -> tuple[float, float]:
    """Largest symbolic violations of ``{g_i, g_j} = 0`` (i != j) and ``g_k**2 = 1``."""
    gens = [CliffordElement.from_string(g) for g in generators(n)]
    zero, one = CliffordElement.zero(n), CliffordElement.identity(n)
    anti = max(
        (anticommutator(gens[i], gens[j]).max_abs_diff(zero)
         for i in range(len(gens)) for j in range(i + 1, len(gens))),
        default=0.0,
    )
    sq = max(elem_mul(g, g).max_abs_diff(one) for g in gens)
    return anti, sq


def mul(a: PauliString, b: PauliString) -> PauliString:
    """Exact product of two phased strings."""
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} != {b.n}")
    x, z, ph = _mul_masks(a.x_mask, a.z_mask, b.x_mask, b.z_mask)
    return PauliString(a.n, x, z, a.phase + b.phase + ph)


def inverse(p: PauliString) -> PauliString:
    # phase-0 strings are involutions, so only the scalar needs inverting
    return PauliString(p.n, p.x_mask, p.z_mask, -p.phase)


def commutes(a: PauliString, b: PauliString) -> bool:
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} != {b.n}")
    return (_popcount(a.x_mask & b.z_mask) + _popcount(a.z_mask & b.x_mask)) % 2 == 0


def count_strings(n: int) -> int:
    """Size of the Pauli basis, counted by walking the per-qubit choices."""
    _check_n(n)
    total = 1
    for _ in range(n):
        total *= len(_LETTER)
    return total


def all_strings(n: int) -> Iterator[PauliString]:
    """Every phase-0 string on n qubits, in canonical (z, x) order."""
    _check_n(n)
    size = 1 << n
    for z in range(size):
        for x in range(size):
            yield PauliString(n, x, z)


def _sort_key(key: tuple[int, int]) -> tuple[int, int]:
    x, z = key
    return (z, x)


class CliffordElement:
    """Sparse complex combination of phase-0 Pauli strings.

    Instances are immutable. Exact zeros are dropped on construction;
    floating-point residue is only removed by :meth:`prune`.

    Parameters
    ----------
    n : int
        Number of qubits.
    terms : mapping or iterable of pairs, optional
        ``PauliString -> coefficient``. Phases of the keys are folded into
        the coefficients and repeated strings are summed.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        _check_n(n)
        acc: dict[tuple[int, int], complex] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for p, c in items:
                if not isinstance(p, PauliString):
                    p = PauliString.from_label(p)
                if p.n != n:
                    raise ValueError(f"term on {p.n} qubits in a {n}-qubit element")
                key = (p.x_mask, p.z_mask)
                acc[key] = acc.get(key, 0j) + complex(c) * _PHASE_VALUES[p.phase]
        self._set(n, acc)

    def _set(self, n, acc):
        object.__setattr__(self, "n", n)
        terms = {k: acc[k] for k in sorted(acc, key=_sort_key) if acc[k] != 0}
        object.__setattr__(self, "_terms", terms)

    @classmethod
    def _from_masks(cls, n: int, acc: dict[tuple[int, int], complex]) -> CliffordElement:
        obj = cls.__new__(cls)
        obj._set(n, acc)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("CliffordElement is immutable")

    @classmethod
    def zero(cls, n: int) -> CliffordElement:
        return cls(n)

    @classmethod
    def identity(cls, n: int) -> CliffordElement:
        return cls._from_masks(n, {(0, 0): 1 + 0j})

    @classmethod
    def from_string(cls, p: PauliString, coeff: complex = 1) -> CliffordElement:
        return cls(p.n, [(p, coeff)])

    @classmethod
    def from_label(cls, label: str, coeff: complex = 1) -> CliffordElement:
        return cls.from_string(PauliString.from_label(label), coeff)

    @property
    def terms(self) -> dict[PauliString, complex]:
        """Copy of the term map, keyed by phase-0 strings in canonical order."""
        return {PauliString(self.n, x, z): c for (x, z), c in self._terms.items()}

    def items(self) -> Iterator[tuple[PauliString, complex]]:
        for (x, z), c in self._terms.items():
            yield PauliString(self.n, x, z), c

    def coefficient(self, p) -> complex:
        if isinstance(p, str):
            p = PauliString.from_label(p)
        return self._terms.get((p.x_mask, p.z_mask), 0j) * _PHASE_VALUES[p.phase].conjugate()

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return elem_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return elem_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return elem_add(other, -self)

    def __neg__(self) -> CliffordElement:
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return elem_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return elem_mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self.scale(1 / other)
        return NotImplemented

    def _coerce(self, other):
        if isinstance(other, CliffordElement):
            return other
        if isinstance(other, PauliString):
            return CliffordElement.from_string(other)
        if isinstance(other, Number):
            return CliffordElement.identity(self.n).scale(other)
        return NotImplemented

    def scale(self, s: complex) -> CliffordElement:
        s = complex(s)
        return CliffordElement._from_masks(self.n, {k: c * s for k, c in self._terms.items()})

    def prune(self, tol: float = 1e-14) -> CliffordElement:
        """Drop terms with ``|coefficient| <= tol``."""
        return CliffordElement._from_masks(
            self.n, {k: c for k, c in self._terms.items() if abs(c) > tol}
        )

    def max_abs_diff(self, other: CliffordElement) -> float:
        """Largest coefficient difference against ``other``."""
        if self.n != other.n:
            raise ValueError(f"qubit counts differ: {self.n} != {other.n}")
        keys = self._terms.keys() | other._terms.keys()
        return max((abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) for k in keys), default=0.0)

    def is_real(self) -> bool:
        return all(c.imag == 0 for c in self._terms.values())

    def __repr__(self) -> str:
        return f"CliffordElement({format_string(self)!r})"

    def __str__(self) -> str:
        return format_string(self)


def _as_element(a) -> CliffordElement:
    if isinstance(a, CliffordElement):
        return a
    if isinstance(a, PauliString):
        return CliffordElement.from_string(a)
    raise TypeError(f"expected PauliString or CliffordElement, got {type(a).__name__}")


def elem_add(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} != {b.n}")
    acc = dict(a._terms)
    for k, c in b._terms.items():
        acc[k] = acc.get(k, 0j) + c
    return CliffordElement._from_masks(a.n, acc)


def elem_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """Distributive product with string phases folded into the coefficients."""
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} != {b.n}")
    acc: dict[tuple[int, int], complex] = {}
    for (ax, az), ca in a._terms.items():
        for (bx, bz), cb in b._terms.items():
            x, z, ph = _mul_masks(ax, az, bx, bz)
            acc[(x, z)] = acc.get((x, z), 0j) + ca * cb * _PHASE_VALUES[ph]
    return CliffordElement._from_masks(a.n, acc)


def anticommutator(a, b) -> CliffordElement:
    """``a*b + b*a`` for strings or elements."""
    a, b = _as_element(a), _as_element(b)
    return elem_add(elem_mul(a, b), elem_mul(b, a))


def commutator(a, b) -> CliffordElement:
    a, b = _as_element(a), _as_element(b)
    return elem_add(elem_mul(a, b), -elem_mul(b, a))


def adjoint(a) -> CliffordElement:
    """Hermitian adjoint; phase-0 strings are self-adjoint."""
    a = _as_element(a)
    return CliffordElement._from_masks(a.n, {k: c.conjugate() for k, c in a._terms.items()})


def prune(a: CliffordElement, tol: float = 1e-14) -> CliffordElement:
    return a.prune(tol)


# ---------------------------------------------------------------------------
# text form:  "XI + 2i ZZ - (0.5+0.25i)*YY"

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)[ij]?|[ij])"
    r"|(?P<letters>[IXYZ]+)|(?P<op>[-+*()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


def _number(tok: str) -> complex:
    if tok[-1] in "ij":
        mag = tok[:-1]
        return complex(0.0, float(mag) if mag else 1.0)
    return complex(float(tok), 0.0)


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def signs(self) -> int:
        s = 1
        while self.peek() in (("op", "+"), ("op", "-")):
            if self.take()[1] == "-":
                s = -s
        return s

    def number(self) -> complex:
        kind, val = self.take()
        if kind != "num":
            raise ValueError(f"expected number, got {val!r}")
        return _number(val)

    def coeff(self) -> complex:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return _number(val)
        if (kind, val) == ("op", "("):
            self.take()
            total = self.signs() * self.number()
            while self.peek() != ("op", ")"):
                if self.peek() not in (("op", "+"), ("op", "-")):
                    raise ValueError("unterminated complex literal")
                s = self.signs()
                total += s * self.number()
            self.take()
            return total
        return 1 + 0j

    def term(self) -> tuple[complex, str]:
        s = self.signs()
        c = self.coeff()
        if self.peek() == ("op", "*"):
            self.take()
        kind, val = self.take()
        if kind != "letters":
            raise ValueError(f"expected Pauli letters, got {val!r}")
        return s * c, val

    def parse(self) -> list[tuple[complex, str]]:
        if not self.toks:
            raise ValueError("empty expression")
        terms = [self.term()]
        while self.i < len(self.toks):
            kind, val = self.take()
            if kind != "op" or val not in "+-":
                raise ValueError(f"expected '+' or '-', got {val!r}")
            c, letters = self.term()
            terms.append((-c if val == "-" else c, letters))
        return terms


def parse_string(text: str) -> CliffordElement:
    """Parse ``coeff *? LETTERS`` terms joined by ``+``/``-``.

    Coefficients are real literals, imaginary literals (``2i``, ``i``) or
    parenthesised sums such as ``(0.5-0.25i)``; a missing coefficient is 1.
    """
    terms = _Parser(text).parse()
    n = len(terms[0][1])
    if any(len(letters) != n for _, letters in terms):
        raise ValueError("inconsistent Pauli string lengths")
    return CliffordElement(n, [(PauliString.from_label(letters), c) for c, letters in terms])


def _format_coeff(c: complex) -> tuple[str, str]:
    if c.imag == 0:
        return ("-" if c.real < 0 else "+"), format_real(abs(c.real))
    if c.real == 0:
        return ("-" if c.imag < 0 else "+"), format_real(abs(c.imag)) + "i"
    return "+", f"({format_complex(c)})"


def format_string(a: CliffordElement) -> str:
    """Deterministic text form; ``parse_string`` inverts it exactly."""
    if a.is_zero():
        return "0 " + "I" * a.n
    parts = []
    for (x, z), c in a._terms.items():
        sign, mag = _format_coeff(c)
        label = PauliString(a.n, x, z).label
        if not parts:
            parts.append(f"{'-' if sign == '-' else ''}{mag} {label}")
        else:
            parts.append(f" {sign} {mag} {label}")
    return "".join(parts)

