import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhowe.fock import (GeneratorSymbol, GeneratorWord, ModuleVector, apply_generator, apply_word,
                        c_identification_check, c_transport_check, check_commuting_actions,
                        check_relations, generators, normalization_exponent, word)
from qhowe.indexsets import IndexMatrix, Space, c_shift, enumerate_matrices, from_entries
from qhowe.ring import ONE, Rational, qpow, quantum_integer
from strategies import FLAVORS_B, FLAVORS_C


def basis_vec(space, A):
    return ModuleVector.basis(space, A)


class TestNormalization:
    def test_diagonal(self):
        assert normalization_exponent(IndexMatrix("A", 2, 2, [[2, 0], [0, 1]])) == 0

    def test_antidiagonal(self):
        assert normalization_exponent(IndexMatrix("A", 2, 2, [[0, 1], [1, 0]])) == 1

    @pytest.mark.parametrize("flavor", FLAVORS_C)
    def test_c_matches_shifted_b(self, flavor):
        for A in enumerate_matrices(flavor, 1, 1, 1):
            assert normalization_exponent(c_shift(A)) == normalization_exponent(A)

    @pytest.mark.parametrize("flavor", FLAVORS_B)
    def test_integral_on_b(self, flavor):
        for A in enumerate_matrices(flavor, 2, 2, 2):
            assert isinstance(normalization_exponent(A), int)


class TestApplyGenerator:
    def test_diagonal_weight(self):
        s = Space.make("A", 2, 2, 2)
        A = IndexMatrix("A", 2, 2, [[1, 0], [0, 1]])
        out = apply_generator(GeneratorSymbol("left", "A", "D", 1), basis_vec(s, A))
        assert out == basis_vec(s, A).scale(qpow(1))

    def test_left_e1(self):
        s = Space.make("A", 2, 2, 2)
        A = IndexMatrix("A", 2, 2, [[0, 0], [1, 1]])
        out = apply_generator(GeneratorSymbol("left", "A", "E", 1), basis_vec(s, A))
        want = ModuleVector(s, {IndexMatrix("A", 2, 2, [[1, 0], [0, 1]]): qpow(1),
                                IndexMatrix("A", 2, 2, [[0, 1], [1, 0]]): ONE})
        assert out == want

    def test_left_f0_centre(self):
        s = Space.make("Bjj", 1, 1, 1)
        A = from_entries("Bjj", 1, 1, {(0, 0): 3})
        out = apply_generator(GeneratorSymbol("left", "j", "f", 0), basis_vec(s, A))
        assert out == basis_vec(s, from_entries("Bjj", 1, 1, {(0, 0): 1, (1, 0): 1}))

    def test_range_checked(self):
        s = Space.make("A", 2, 2, 1)
        with pytest.raises(ValueError):
            apply_generator(GeneratorSymbol("left", "A", "E", 2), basis_vec(s, s.basis()[0]))

    def test_flavor_checked(self):
        s = Space.make("Bji", 1, 1, 1)
        with pytest.raises(ValueError):
            apply_generator(GeneratorSymbol("right", "j", "e", 0), basis_vec(s, s.basis()[0]))

    def test_parse(self):
        assert GeneratorSymbol.parse("E1", "left", "A") == GeneratorSymbol("left", "A", "E", 1)
        assert GeneratorSymbol.parse("d^-1_0", "right", "j").kind == "dinv"
        assert GeneratorSymbol.parse("t0", "left", "i").kind == "t"
        with pytest.raises(ValueError):
            GeneratorSymbol.parse("X1", "left", "A")


class TestWeights:
    @pytest.mark.parametrize("side", ["left", "right"])
    def test_e_shifts_weight(self, side):
        s = Space.make("A", 3, 2, 2) if side == "left" else Space.make("A", 2, 3, 2)
        for A in s.basis():
            for i in (1, 2):
                g = GeneratorSymbol(side, "A", "E", i)
                for B in apply_generator(g, basis_vec(s, A)).terms:
                    sums = (A.ro(), B.ro()) if side == "left" else (A.co(), B.co())
                    diff = [b - a for a, b in zip(*sums)]
                    root = [0, 0, 0]
                    root[i - 1], root[i] = 1, -1
                    assert diff == (root if side == "left" else [-x for x in root])


class TestWords:
    def test_empty_word(self):
        s = Space.make("A", 2, 2, 2)
        for A in s.basis():
            assert apply_word(word(), basis_vec(s, A)) == basis_vec(s, A)

    def test_commutator_on_weight_vectors(self):
        s = Space.make("A", 2, 2, 2)
        E = GeneratorSymbol("left", "A", "E", 1)
        F = GeneratorSymbol("left", "A", "F", 1)
        lhs = (word(E, F), word(F, E, coeff=-ONE))
        for A in s.basis():
            k = A.ro()[0] - A.ro()[1]
            got = apply_word(lhs, basis_vec(s, A))
            assert got == basis_vec(s, A).scale(quantum_integer(k))

    def test_rational_coefficients(self):
        s = Space.make("A", 1, 1, 2)
        v = basis_vec(s, s.basis()[0])
        inv2 = Rational.coerce(ONE) / Rational.coerce(quantum_integer(2))
        D = GeneratorSymbol("left", "A", "D", 1)
        Dinv = GeneratorSymbol("left", "A", "Dinv", 1)
        # (q D^-1 + q^-1 D) / [2] acts on weight q^2 by (q^-1 + q) / [2] = 1
        ws = (GeneratorWord((Dinv,), inv2 * Rational.coerce(qpow(1))),
              GeneratorWord((D,), inv2 * Rational.coerce(qpow(-1))))
        assert apply_word(ws, v) == v
        with pytest.raises(ArithmeticError):
            apply_word((GeneratorWord((D,), inv2),), v)

    def test_mixed_sides_rejected(self):
        with pytest.raises(ValueError):
            word(GeneratorSymbol("left", "A", "E", 1), GeneratorSymbol("right", "A", "E", 1))


class TestChecks:
    def test_relations_small(self):
        assert check_relations(2, 2, 2).passed

    @pytest.mark.parametrize("flavor,m,n,d", [("A", 2, 2, 2), ("Bjj", 1, 1, 1), ("Bii", 1, 1, 2),
                                              ("Bji", 2, 1, 2), ("Cjj", 1, 1, 2)])
    def test_commuting(self, flavor, m, n, d):
        rep = check_commuting_actions(flavor, m, n, d)
        assert rep.passed and rep.checked > 0

    def test_t0_against_t0(self):
        s = Space.make("Bii", 1, 1, 2)
        assert GeneratorSymbol("left", "i", "t", 0) in generators(s, "left")
        assert GeneratorSymbol("right", "i", "t", 0) in generators(s, "right")

    @pytest.mark.parametrize("flavor", FLAVORS_C)
    def test_c_identification(self, flavor):
        assert c_identification_check(flavor, 1, 1, 2).passed
        assert c_transport_check(flavor, 1, 1, 1).passed


@settings(max_examples=15)
@given(st.sampled_from(("A",) + FLAVORS_B + FLAVORS_C), st.integers(1, 2), st.integers(1, 2),
       st.integers(0, 2))
def test_commuting_random_spaces(flavor, m, n, d):
    assert check_commuting_actions(flavor, m, n, d).passed


@given(st.sampled_from(FLAVORS_B), st.integers(0, 2), st.data())
def test_diagonal_generators_commute(flavor, d, data):
    s = Space.make(flavor, 1, 2, d)
    A = data.draw(st.sampled_from(s.basis()))
    diag = [g for side in ("left", "right") for g in generators(s, side) if g.kind in ("d", "dinv")]
    g, h = data.draw(st.sampled_from(diag)), data.draw(st.sampled_from(diag))
    v = basis_vec(s, A)
    assert apply_generator(g, apply_generator(h, v)) == apply_generator(h, apply_generator(g, v))
