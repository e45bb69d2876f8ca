from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhowe.coord import (CoordError, CoordWord, act_coord, derived_check, intertwiner_check,
                         monomial_word, normal_order, normal_order_words, parse_word, primed_word,
                         reduce_b, rescale, tensor_oracle_check)
from qhowe.fock import GeneratorSymbol, ModuleVector
from qhowe.indexsets import IndexMatrix, Space, enumerate_matrices, from_entries
from qhowe.ring import ONE, Rational, qpow, quantum_double_factorial, quantum_factorial, \
    quantum_integer

QM = qpow(1) - qpow(-1)


def A2(rows):
    return IndexMatrix("A", len(rows), len(rows[0]), rows)


class TestNormalOrder:
    def test_already_ordered(self):
        v = normal_order(parse_word("t[1,1] t[1,2]"), 1, 2)
        assert v.terms == {A2([[1, 1]]): ONE}

    def test_fourth_relation(self):
        v = normal_order(parse_word("t[2,2] t[1,1]"), 2, 2)
        assert v.terms == {A2([[1, 0], [0, 1]]): ONE, A2([[0, 1], [1, 0]]): -QM}

    def test_first_relation(self):
        v = normal_order(parse_word("t[2,1] t[1,1]"), 2, 1)
        assert v.terms == {A2([[1], [1]]): qpow(-1)}

    def test_rejects_b_words(self):
        with pytest.raises(CoordError):
            normal_order(parse_word("t[0,0]", "Bj"))
        with pytest.raises(CoordError):
            parse_word("t[1,1] x")

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_confluence(self, n):
        letters = list(product(range(1, n + 1), repeat=2))
        for k in range(1, 4 if n == 3 else 5):
            for w in product(letters, repeat=k):
                assert normal_order_words(w, "left") == normal_order_words(w, "right")

    def test_primed_order_is_monomial(self):
        for d in range(1, 5):
            for A in enumerate_matrices("A", 3, 3, d):
                v = normal_order(primed_word(A), 3, 3)
                assert v.terms == {A: ONE}

    @given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=4))
    def test_length_preserved(self, letters):
        v = normal_order(tuple(letters), 3, 3)
        assert all(A.total == len(letters) for A in v.terms)


class TestReduceB:
    def test_centre(self):
        v = reduce_b(parse_word("t[0,0]", "Bj"), 1, 1, "Bjj")
        assert v.terms == {from_entries("Bjj", 1, 1, {(0, 0): 3}): ONE}

    def test_negative_pair(self):
        v = reduce_b(parse_word("t[-1,-1]", "Bj"), 1, 1, "Bjj")
        assert v.terms == {from_entries("Bjj", 1, 1, {(0, 0): 1, (1, 1): 1}): ONE,
                           from_entries("Bjj", 1, 1, {(0, 0): 1, (1, -1): 1}): -QM}

    def test_negative_row(self):
        v = reduce_b(parse_word("t[-1,0]", "Bj"), 1, 1, "Bjj")
        assert v.terms == {from_entries("Bjj", 1, 1, {(0, 0): 1, (1, 0): 1}): qpow(-1)}

    def test_iota_words(self):
        with pytest.raises(CoordError):
            parse_word("t[0,1]", "Bi")

    @pytest.mark.parametrize("d", [1, 2])
    def test_spanning(self, d):
        letters = [(i, j) for i in (-1, 0, 1) for j in (-1, 0, 1)]
        reached = set()
        for w in product(letters, repeat=d):
            v = reduce_b(w, 1, 1, "Bjj")
            assert all(A.total == 2 * d + 1 for A in v.terms)
            reached |= set(v.terms)
        assert reached == set(enumerate_matrices("Bjj", 1, 1, d))


class TestActCoord:
    def test_left_e1(self):
        s = Space.make("A", 1, 2, 1)
        out = act_coord(GeneratorSymbol("left", "A", "E", 1), ModuleVector.basis(s, A2([[0, 1]])))
        assert out.terms == {A2([[1, 0]]): ONE}

    def test_left_f1(self):
        s = Space.make("A", 2, 2, 2)
        out = act_coord(GeneratorSymbol("left", "A", "F", 1), ModuleVector.basis(s, A2([[1, 0], [1, 0]])))
        assert out.terms == {A2([[0, 1], [1, 0]]): ONE, A2([[1, 0], [0, 1]]): qpow(1)}

    def test_left_f0_centre(self):
        s = Space.make("Bjj", 1, 1, 1)
        out = act_coord(GeneratorSymbol("left", "j", "f", 0),
                        ModuleVector.basis(s, from_entries("Bjj", 1, 1, {(0, 0): 3})))
        assert out.terms == {from_entries("Bjj", 1, 1, {(0, 0): 1, (0, 1): 1}): quantum_integer(2)}


class TestRescale:
    def test_zero(self):
        c, _ = rescale(IndexMatrix("A", 1, 1, [[0]]))
        assert c == Rational.coerce(ONE)

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_single_cell(self, d):
        c, _ = rescale(IndexMatrix("A", 1, 1, [[d]]))
        assert c == Rational.coerce(qpow(d * (d + 1) // 2)) / Rational.coerce(quantum_factorial(d))

    def test_centre(self):
        c, _ = rescale(from_entries("Bjj", 1, 1, {(0, 0): 3}))
        assert c == Rational.coerce(qpow(2)) / Rational.coerce(quantum_double_factorial(2))


class TestIntertwiner:
    @pytest.mark.parametrize("flavor,m,n,d", [("A", 2, 2, 2), ("Bjj", 1, 1, 1), ("Bii", 1, 1, 1),
                                              ("Bji", 1, 1, 2), ("Bij", 1, 2, 1)])
    def test_exact_match(self, flavor, m, n, d):
        rep = intertwiner_check(flavor, m, n, d)
        assert rep.passed and rep.checked > 0

    @pytest.mark.parametrize("flavor", ["A", "Bjj", "Bii"])
    def test_closed_vs_derived(self, flavor):
        assert derived_check(flavor, 1, 1, 2).passed


class TestTensorOracle:
    @pytest.mark.parametrize("n,d", [(2, 1), (2, 2), (3, 1)])
    def test_type_a(self, n, d):
        assert tensor_oracle_check(n, d).passed

    @pytest.mark.parametrize("flavor", ["j", "i"])
    def test_type_b(self, flavor):
        rep = tensor_oracle_check(1, 1, "B", flavor)
        assert rep.passed and rep.checked > 0


def test_monomial_word_roundtrip():
    for A in enumerate_matrices("A", 2, 2, 3):
        assert normal_order(monomial_word(A), 2, 2).terms == {A: ONE}


def test_word_concatenation():
    w = parse_word("t[1,2]") * parse_word("t[2,1]")
    assert isinstance(w, CoordWord) and w.letters == ((1, 2), (2, 1))


def _k_exponent(i, letters):
    return sum((b == i) - (b == i + 1) for _, b in letters)


@pytest.mark.parametrize("n,max_len", [(2, 2), (3, 1)])
def test_coproduct_compatibility(n, max_len):
    """E(xy) = E(x) K^-1(y) + x E(y) on products of normally ordered words."""
    letters = list(product(range(1, n + 1), repeat=2))
    words = [w for k in range(1, max_len + 1) for w in product(letters, repeat=k)]
    for i in range(1, n):
        E = GeneratorSymbol("left", "A", "E", i)
        for x in words:
            for y in words:
                lhs = act_coord(E, normal_order(x + y, n, n))
                rhs = ModuleVector(lhs.space, {})
                for A, c in act_coord(E, normal_order(x, n, n)).terms.items():
                    rhs = rhs + normal_order(monomial_word(A) + y, n, n).scale(c * qpow(-_k_exponent(i, y)))
                for A, c in act_coord(E, normal_order(y, n, n)).terms.items():
                    rhs = rhs + normal_order(x + monomial_word(A), n, n).scale(c)
                assert lhs == rhs
