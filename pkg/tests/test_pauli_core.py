import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffgate.pauli_core import (
    CliffordElement,
    PauliString,
    adjoint,
    all_strings,
    anticommutator,
    commutes,
    count_strings,
    elem_add,
    elem_mul,
    format_string,
    generator,
    generators,
    inverse,
    mul,
    parse_string,
)

from .oracles import dense_element, dense_label, dense_string, elements, random_element


def test_pauli_string_validates_masks():
    with pytest.raises(ValueError):
        PauliString(2, x_mask=4)
    with pytest.raises(ValueError):
        PauliString(0)
    with pytest.raises(ValueError):
        PauliString(65)
    assert PauliString(1, 1, 0, phase=7).phase == 3


def test_label_round_trip_and_qubit_order():
    p = PauliString.from_label("XIZ")
    assert p.x_mask == 0b100 and p.z_mask == 0b001
    assert p.letter(0) == "Z" and p.letter(2) == "X"
    assert p.label == "XIZ"
    assert PauliString.from_label("Y").x_mask == 1 == PauliString.from_label("Y").z_mask


def test_generators_n1_are_sigma_x_and_sigma_y():
    assert generator(1, 0) == PauliString.from_label("X")
    assert generator(1, 1) == PauliString.from_label("Y")


def test_generator_n2_j2_is_x_kron_z():
    g = generator(2, 2)
    assert g.label == "XZ" and g.phase == 0
    np.testing.assert_array_equal(dense_string(g), np.kron(dense_label("X"), dense_label("Z")))


def test_generator_labels_follow_trailing_z_pattern():
    assert [g.label for g in generators(3)] == ["IIX", "IIY", "IXZ", "IYZ", "XZZ", "YZZ"]


def test_generator_product_n2_is_i_times_iz():
    p = mul(generator(2, 0), generator(2, 1))
    assert (p.x_mask, p.z_mask) == (0, 1)  # I (x) sigma_x sigma_y ~ I (x) Z
    oracle = dense_label("IX") @ dense_label("IY")
    np.testing.assert_array_equal(dense_string(p), oracle)
    np.testing.assert_array_equal(oracle, 1j * dense_label("IZ"))


@pytest.mark.parametrize("bad", [(1, 2), (1, -1), (3, 6)])
def test_generator_index_errors(bad):
    with pytest.raises(IndexError):
        generator(*bad)


def test_generator_n_out_of_range():
    with pytest.raises(ValueError):
        generator(65, 0)


def test_sigma_x_sigma_y_is_i_sigma_z():
    p = mul(PauliString.from_label("X"), PauliString.from_label("Y"))
    assert p == PauliString.from_label("Z", phase=1)
    q = mul(PauliString.from_label("Y"), PauliString.from_label("X"))
    assert q == PauliString.from_label("Z", phase=3)


@pytest.mark.parametrize("letter", "IXYZ")
def test_letters_square_to_identity(letter):
    p = PauliString.from_label(letter)
    assert mul(p, p) == PauliString.identity(1)


def test_mul_exhaustive_single_qubit_with_phases():
    for a, b in itertools.product("IXYZ", repeat=2):
        for pa, pb in itertools.product(range(4), repeat=2):
            pa_s = PauliString.from_label(a, pa)
            pb_s = PauliString.from_label(b, pb)
            got = dense_string(mul(pa_s, pb_s))
            np.testing.assert_array_equal(got, dense_label(a, pa) @ dense_label(b, pb))


def test_mul_exhaustive_two_qubits():
    strings = ["".join(t) for t in itertools.product("IXYZ", repeat=2)]
    for a, b in itertools.product(strings, repeat=2):
        got = dense_string(mul(PauliString.from_label(a), PauliString.from_label(b)))
        np.testing.assert_array_equal(got, dense_label(a) @ dense_label(b))


def test_mul_dense_faithful_random_up_to_5(rng):
    for n in range(1, 6):
        for _ in range(200):
            a = PauliString.from_label("".join(rng.choice(list("IXYZ"), n)), int(rng.integers(4)))
            b = PauliString.from_label("".join(rng.choice(list("IXYZ"), n)), int(rng.integers(4)))
            np.testing.assert_array_equal(dense_string(mul(a, b)), dense_string(a) @ dense_string(b))


def test_mul_rejects_mismatched_n():
    with pytest.raises(ValueError):
        mul(PauliString(1), PauliString(2))


@pytest.mark.parametrize("n", range(1, 13))
def test_generator_relations_symbolic(n):
    gens = generators(n)
    for i, j in itertools.combinations(range(2 * n), 2):
        assert mul(gens[i], gens[j]) == -mul(gens[j], gens[i])
    for g in gens:
        assert mul(g, g) == PauliString.identity(n)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1), st.integers(0, 3), st.just(n))))
def test_group_inverse(t):
    x, z, ph, n = t
    p = PauliString(n, x, z, ph)
    assert mul(p, inverse(p)) == PauliString.identity(n)
    assert mul(inverse(p), p) == PauliString.identity(n)


def test_phase0_strings_hermitian_and_involutory():
    for p in all_strings(2):
        assert adjoint(p) == CliffordElement.from_string(p)
        assert mul(p, p).is_identity()


def test_commutes_matches_products():
    for a, b in itertools.product(all_strings(2), repeat=2):
        assert commutes(a, b) == (mul(a, b) == mul(b, a))


def test_count_and_enumeration():
    assert [count_strings(n) for n in range(1, 5)] == [4, 16, 64, 256]
    assert len(set(all_strings(3))) == 64


# --- elements ---------------------------------------------------------------

def test_elem_add_cases():
    x = CliffordElement.from_label("X")
    z = CliffordElement.from_label("Z")
    assert elem_add(x, CliffordElement.zero(1)) == x
    assert elem_add(x, x) == CliffordElement.from_label("X", 2)
    assert elem_add(x + z, x - z) == CliffordElement.from_label("X", 2)
    with pytest.raises(ValueError):
        elem_add(x, CliffordElement.zero(2))


def test_exact_zero_is_dropped_on_cancellation():
    x = CliffordElement.from_label("XY")
    assert (x - x).is_zero()
    assert len(x - x) == 0


def test_hadamard_element_squares_to_identity():
    h = (CliffordElement.from_label("X") + CliffordElement.from_label("Z")) / np.sqrt(2)
    sq = elem_mul(h, h)
    assert sq.max_abs_diff(CliffordElement.identity(1)) < 1e-15
    np.testing.assert_allclose(dense_element(h) @ dense_element(h), np.eye(2), atol=1e-15)


def test_multiply_by_identity(rng):
    a = random_element(rng, 3)
    assert elem_mul(a, CliffordElement.identity(3)) == a
    assert elem_mul(CliffordElement.identity(3), a) == a


def test_elem_mul_dense_oracle_n3(rng):
    for _ in range(50):
        a, b = random_element(rng, 3), random_element(rng, 3)
        err = np.abs(dense_element(elem_mul(a, b)) - dense_element(a) @ dense_element(b)).max()
        assert err < 1e-12


def test_elem_mul_mismatched():
    with pytest.raises(ValueError):
        elem_mul(CliffordElement.identity(1), CliffordElement.identity(2))


def test_anticommutator_of_generators():
    n = 3
    for i, j in itertools.product(range(2 * n), repeat=2):
        got = anticommutator(generator(n, i), generator(n, j))
        want = CliffordElement.identity(n) * 2 if i == j else CliffordElement.zero(n)
        assert got == want
    assert anticommutator(PauliString.from_label("X"), PauliString.from_label("Y")).is_zero()


def test_adjoint_cases(rng):
    assert adjoint(CliffordElement.from_label("X", 1j)) == CliffordElement.from_label("X", -1j)
    h = random_element(rng, 3, real=True)
    assert adjoint(h) == h
    a = random_element(rng, 3)
    assert adjoint(adjoint(a)) == a
    np.testing.assert_allclose(dense_element(adjoint(a)), dense_element(a).conj().T, atol=1e-14)


def test_prune_is_explicit():
    a = CliffordElement(1, {"X": 1.0, "Z": 1e-16})
    assert len(a) == 2
    assert a.prune() == CliffordElement.from_label("X")
    assert a.prune(1e-20) == a


def test_terms_are_canonical_phase0_and_sorted():
    a = CliffordElement(2, [(PauliString.from_label("ZZ", phase=1), 1), (PauliString.from_label("XI"), 2)])
    keys = list(a.terms)
    assert all(k.phase == 0 for k in keys)
    assert [k.label for k in keys] == ["XI", "ZZ"]  # (z, x) lexicographic
    assert a.coefficient("ZZ") == 1j


def test_elements_are_immutable():
    a = CliffordElement.identity(1)
    with pytest.raises(AttributeError):
        a.n = 3


# --- text form -------------------------------------------------------------

def test_parse_example():
    a = parse_string("XI + 2i ZZ")
    assert a == CliffordElement(2, {"XI": 1, "ZZ": 2j})


def test_parse_identity():
    assert parse_string("II") == CliffordElement.identity(2)


@pytest.mark.parametrize("text, expected", [
    ("-X", {"X": -1}),
    ("0.5*X - i Y", {"X": 0.5, "Y": -1j}),
    ("(1+2i) Z", {"Z": 1 + 2j}),
    ("-(0.5-0.25i)*Y + 1e-3 X", {"Y": -0.5 + 0.25j, "X": 1e-3}),
    ("X + X", {"X": 2}),
    ("X - X", {}),
    ("3j I", {"I": 3j}),
])
def test_parse_grammar(text, expected):
    assert parse_string(text) == CliffordElement(1, expected)


@pytest.mark.parametrize("bad", ["", "XI + Z", "2", "X +", "2 ** X", "(1+2i X", "XA", "x"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_string(bad)


def test_format_zero_and_reparse():
    z = CliffordElement.zero(3)
    assert parse_string(format_string(z)) == z


def test_format_is_deterministic():
    a = CliffordElement(2, {"ZZ": -0.5, "XI": 1, "YY": 1 - 2j, "IX": -3j})
    assert format_string(a) == "-3i IX + 1 XI - 0.5 ZZ + (1-2i) YY"


@settings(max_examples=1000)
@given(st.integers(1, 4).flatmap(elements))
def test_format_parse_round_trip(a):
    assert parse_string(format_string(a)) == a
