import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhowe.decomp import (DecompError, apply_braid, build_t_element, centralizer_dimension,
                          classical_dimension, commutant_accounting, identity_matrix, index_set,
                          joint_highest_weight_vectors, matmul, operator_matrix, shifted,
                          side_shape, verify_decomposition, verify_t0_spectrum)
from qhowe.fock import (GeneratorSymbol, GeneratorWord, ModuleVector, apply_generator, apply_word,
                        raising_generators, word)
from qhowe.indexsets import BiPartitionLabel, Space, count_matrices, partitions
from qhowe.ring import ONE, ZERO, Rational, qpow, quantum_integer
from strategies import FLAVORS_B, FLAVORS_C


class TestOperatorMatrix:
    def test_identity(self):
        s = Space.make("A", 2, 2, 2)
        M = identity_matrix(s)
        assert M.dense() == [[ONE if i == j else ZERO for j in range(10)] for i in range(10)]

    def test_diagonal_weight(self):
        s = Space.make("A", 2, 1, 1)
        M = operator_matrix(GeneratorSymbol("left", "A", "D", 1), s)
        # basis sorted by rows: [[0],[1]] then [[1],[0]]
        assert M.dense() == [[ONE, ZERO], [ZERO, qpow(1)]]

    def test_t0_two_dimensional(self):
        s = Space.make("Bii", 1, 1, 1)
        T = operator_matrix(GeneratorSymbol("left", "i", "t", 0), s)
        assert T.size == 2
        # trace [2] and determinant 0: eigenvalues 0 and [2], both of the form [k+1]
        D = T.dense()
        assert D[0][0] + D[1][1] == quantum_integer(2)
        assert D[0][0] * D[1][1] - D[0][1] * D[1][0] == ZERO

    def test_matmul_matches_words(self):
        s = Space.make("A", 2, 2, 2)
        E = GeneratorSymbol("left", "A", "E", 1)
        F = GeneratorSymbol("left", "A", "F", 1)
        EF = matmul(operator_matrix(E, s), operator_matrix(F, s))
        assert EF.entries == operator_matrix(word(E, F), s).entries

    def test_shift(self):
        s = Space.make("A", 1, 1, 2)
        M = shifted(operator_matrix(GeneratorSymbol("left", "A", "D", 1), s), qpow(2))
        assert M.is_zero()


class TestTElements:
    def test_iota_zero(self):
        (w,) = build_t_element("i", 0)
        assert [s.kind for s in w.symbols] == ["t"] and w.coeff == ONE

    def test_iota_one(self):
        assert len(build_t_element("i", 1, rank=2)) == 5

    def test_jmath_zero(self):
        ws = build_t_element("j", 0)
        assert len(ws) == 4
        kinds = sorted(tuple(s.kind for s in w.symbols) for w in ws)
        assert ("e", "f") in kinds and ("f", "e") in kinds

    def test_jmath_zero_on_fock(self):
        # e0 f0 - q f0 e0 - (k0 - k0^-1)/(q - q^-1) written out by hand
        s = Space.make("Bjj", 1, 1, 2)
        S = lambda kind, i: GeneratorSymbol("left", "j", kind, i)  # noqa: E731
        inv = Rational.coerce(qpow(1) - qpow(-1)).inverse()
        k0 = (S("d", 0), S("d", 0), S("dinv", 1))
        k0inv = (S("dinv", 0), S("dinv", 0), S("d", 1))
        hand = (GeneratorWord((S("e", 0), S("f", 0))), GeneratorWord((S("f", 0), S("e", 0)), -qpow(1)),
                GeneratorWord(k0, -inv), GeneratorWord(k0inv, inv))
        for A in s.basis():
            v = ModuleVector.basis(s, A)
            assert apply_word(build_t_element("j", 0), v) == apply_word(hand, v)

    def test_braid_fixes_far_generators(self):
        w = GeneratorWord((GeneratorSymbol("left", "i", "e", 3),))
        assert apply_braid((w,), 1) == (w,)


class TestHighestWeight:
    def test_one_dimensional(self):
        for d in range(4):
            lines = joint_highest_weight_vectors(Space.make("A", 1, 1, d), "left")
            assert [(h.d_weights, h.multiplicity) for h in lines] == [((d,), 1)]

    def test_bjj_two_lines(self):
        lines = joint_highest_weight_vectors(Space.make("Bjj", 1, 1, 1), "left")
        assert len(lines) == 2
        assert sorted((h.d_weights, h.multiplicity) for h in lines) == [((0, 1), 1), ((1, 0), 2)]

    def test_type_a_partitions(self):
        lines = joint_highest_weight_vectors(Space.make("A", 2, 2, 2), "left")
        assert sorted(h.d_weights for h in lines) == [(1, 1), (2, 0)]

    def test_vectors_are_killed(self):
        s = Space.make("Bii", 2, 2, 2)
        for side in ("left", "right"):
            for h in joint_highest_weight_vectors(s, side):
                for g in raising_generators(s, side):
                    M = operator_matrix(g, s)
                    for v in h.vectors:
                        assert not M.apply(v)


class TestSpectrum:
    @pytest.mark.parametrize("flavor,d,side", [("Bii", 1, "left"), ("Bii", 2, "left"),
                                               ("Bji", 1, "right"), ("Bij", 2, "left"),
                                               ("Cii", 2, "right")])
    def test_annihilation(self, flavor, d, side):
        rep = verify_t0_spectrum(Space.make(flavor, 1, 1, d), side)
        assert rep.annihilates and rep.passed

    def test_minimal_factors(self):
        assert verify_t0_spectrum(Space.make("Bii", 1, 1, 1)).minimal_factors == [-1, 1]
        assert verify_t0_spectrum(Space.make("Bii", 1, 1, 2)).minimal_factors == [-2, 0, 2]

    def test_requires_iota(self):
        with pytest.raises(DecompError):
            verify_t0_spectrum(Space.make("Bjj", 1, 1, 1))


class TestClassicalDimension:
    def test_examples(self):
        assert classical_dimension((1, 0), (2,)) == 2
        assert classical_dimension((1, 1), (2,)) == 1
        assert classical_dimension(BiPartitionLabel((1,), (), "j", 1)) == 2

    def test_weyl_values(self):
        assert classical_dimension((2,), (3,)) == 6
        assert classical_dimension((2, 1), (3,)) == 8

    @settings(max_examples=30)
    @given(st.sampled_from(("A",) + FLAVORS_B + FLAVORS_C), st.integers(1, 3), st.integers(1, 3),
           st.integers(0, 4))
    def test_howe_dimension_identity(self, flavor, m, n, d):
        space = Space.make(flavor, m, n, d)
        total = sum(classical_dimension(lam, side_shape(space, "left"))
                    * classical_dimension(lam, side_shape(space, "right"))
                    for lam in index_set(flavor, m, n, d))
        assert total == count_matrices(flavor, m, n, d)


class TestDecomposition:
    def test_type_a_index_set(self):
        for m, n, d in [(2, 2, 2), (2, 3, 3), (3, 3, 3), (1, 2, 2)]:
            labels = index_set("A", m, n, d)
            assert len(labels) == len(set(labels))
            assert set(labels) == set(partitions(d, min(m, n)))

    @pytest.mark.parametrize("flavor,m,n,d,summands", [
        ("A", 2, 2, 2, 2), ("Bjj", 1, 1, 1, 2), ("Bii", 1, 1, 1, 2), ("A", 2, 3, 2, 2),
        ("Bji", 1, 1, 1, 2), ("Bij", 1, 2, 2, None), ("Bjj", 1, 1, 2, None), ("Bii", 2, 2, 2, None),
        ("Cjj", 1, 1, 1, None), ("Cii", 1, 1, 2, None)])
    def test_verified(self, flavor, m, n, d, summands):
        rep = verify_decomposition(flavor, m, n, d)
        assert rep.passed, rep.checks
        if summands is not None:
            assert len(rep.summands) == summands

    def test_type_a_accounting(self):
        rep = verify_decomposition("A", 2, 2, 2)
        dims = sorted((s["left_dim"], s["right_dim"]) for s in rep.summands)
        assert dims == [(1, 1), (3, 3)]
        assert rep.checks["dims"]["space"] == 10

    def test_bjj_accounting(self):
        rep = verify_decomposition("Bjj", 1, 1, 1)
        assert sorted(s["left_dim"] for s in rep.summands) == [1, 2]
        assert rep.checks["dims"]["classical_sum"] == 5

    def test_line_counts_agree(self):
        for flavor, m, n, d in [("Bjj", 1, 1, 2), ("Bii", 2, 2, 1), ("A", 2, 3, 2)]:
            s = Space.make(flavor, m, n, d)
            left = joint_highest_weight_vectors(s, "left")
            right = joint_highest_weight_vectors(s, "right")
            assert len(left) == len(right) == len(index_set(flavor, m, n, d))


class TestCentralizer:
    def test_full_matrix_algebra(self):
        assert centralizer_dimension(Space.make("A", 2, 1, 1), "right") == 4

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_one_dimensional(self, d):
        s = Space.make("A", 1, 1, d)
        assert centralizer_dimension(s, "left") == centralizer_dimension(s, "right") == 1

    def test_bjj(self):
        assert centralizer_dimension(Space.make("Bjj", 1, 1, 1), "right") == 5

    @pytest.mark.parametrize("flavor,m,n,d", [("A", 2, 2, 2), ("Bjj", 1, 1, 1), ("Bii", 1, 1, 1),
                                              ("Bii", 2, 2, 1), ("Bji", 1, 2, 1), ("Cjj", 1, 1, 1)])
    def test_accounting(self, flavor, m, n, d):
        acc = commutant_accounting(flavor, m, n, d)
        assert all(v["pass"] for v in acc.values())
        assert acc["right"]["commutant"] == acc["right"]["expected"]


class TestRealizedTValues:
    """t0 on highest-weight lines: [1 + lam+ - lam-] (iota) and [lam-_1 - lam+_2] (jmath)."""

    @staticmethod
    def observed(flavor, d):
        rep = verify_decomposition(flavor, 1, 1, d)
        return {s["lambda"]: s["left_t"][0] for s in rep.summands}

    def test_iota_rank_one(self):
        assert self.observed("Bii", 2) == {"([],[2])": "-1", "([1],[1])": "1", "([2],[])": "q^-2 + 1 + q^2"}
        obs = self.observed("Bii", 3)
        assert obs["([3],[])"] == "q^-3 + q^-1 + q + q^3"   # [4] = [1 + 3 - 0]
        assert obs["([],[3])"] == "-q^-1 - q"               # [-2] = [1 + 0 - 3]

    def test_iota_values_stay_in_spectrum(self):
        # the eigenvalues must lie in {[k+1] : -d <= k <= d}
        for d in (1, 2, 3):
            allowed = {str(quantum_integer(k + 1)) for k in range(-d, d + 1)}
            assert set(self.observed("Bii", d).values()) <= allowed

    def test_jmath_rank_one(self):
        assert self.observed("Bjj", 2) == {"([],[2])": "q^-1 + q", "([1, 1],[])": "-1",
                                           "([1],[1])": "1", "([2],[])": "0"}

    def test_jmath_one_dimensional_forced(self):
        # on a 1-dim module e0 and f0 vanish, so t0 = -(k0 - k0^-1)/(q - q^-1)
        s = Space.make("Bjj", 1, 1, 1)
        ones = [h for h in joint_highest_weight_vectors(s, "left") if h.multiplicity == 1]
        assert ones
        for h in ones:
            k0 = 2 * h.d_weights[0] - h.d_weights[1]
            assert h.t_values[0] == Rational.coerce(-quantum_integer(k0))
