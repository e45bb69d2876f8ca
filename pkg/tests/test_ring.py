from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhowe.ring import (ONE, ZERO, Laurent, Rational, bar, parse_laurent, qpow,
                        quantum_double_factorial, quantum_factorial, quantum_integer,
                        solve_linear, to_text)
from strategies import laurents, nonzero_laurents


def q(k):
    return qpow(k)


class TestQuantumNumbers:
    def test_small_integers(self):
        assert quantum_integer(0) == ZERO
        assert quantum_integer(1) == ONE
        assert quantum_integer(3) == q(2) + ONE + q(-2)

    def test_factorials(self):
        assert quantum_factorial(0) == ONE
        assert quantum_factorial(2) == q(1) + q(-1)
        assert quantum_factorial(3) == (q(2) + ONE + q(-2)) * (q(1) + q(-1))

    def test_double_factorials(self):
        assert quantum_double_factorial(0) == ONE
        assert quantum_double_factorial(2) == quantum_integer(2)
        assert quantum_double_factorial(4) == quantum_integer(4) * quantum_integer(2)
        with pytest.raises(ValueError):
            quantum_double_factorial(3)

    @given(st.integers(-12, 12))
    def test_defining_identity(self, n):
        assert quantum_integer(n) * (q(1) - q(-1)) == q(n) - q(-n)

    @given(st.integers(-12, 12))
    def test_bar_invariant(self, n):
        assert bar(quantum_integer(n)) == quantum_integer(n)

    @given(st.integers(1, 10))
    def test_value_at_one(self, n):
        assert quantum_integer(n).evaluate(1) == n


class TestBar:
    def test_examples(self):
        assert bar(q(2)) == q(-2)
        assert bar(q(1) + Laurent({3: 2})) == q(-1) + Laurent({-3: 2})

    @given(laurents, laurents)
    def test_ring_automorphism(self, x, y):
        assert bar(x * y) == bar(x) * bar(y)
        assert bar(x + y) == bar(x) + bar(y)
        assert bar(bar(x)) == x


class TestLaurentArithmetic:
    @given(laurents, laurents, laurents)
    def test_ring_axioms(self, x, y, z):
        assert x + y == y + x
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x - x == ZERO

    @given(laurents)
    def test_no_zero_coefficients_stored(self, x):
        assert all(c != 0 for _, c in x.items())

    @given(laurents)
    def test_text_roundtrip(self, x):
        assert parse_laurent(to_text(x)) == x

    def test_text_form(self):
        assert to_text(quantum_integer(3)) == "q^-2 + 1 + q^2"
        assert to_text(ZERO) == "0"


class TestRational:
    @given(laurents, nonzero_laurents, nonzero_laurents)
    def test_canonical_form(self, a, b, c):
        x = Rational.coerce(a) / Rational.coerce(b)
        y = Rational.coerce(a * c) / Rational.coerce(b * c)
        assert x == y
        assert hash(x) == hash(y)

    @given(laurents, nonzero_laurents)
    def test_embeds_laurent(self, a, b):
        r = Rational.coerce(a * b) / Rational.coerce(b)
        assert r.to_laurent() == a

    @given(nonzero_laurents)
    def test_inverse(self, a):
        r = Rational.coerce(a)
        assert r * r.inverse() == Rational.coerce(ONE)

    def test_evaluation(self):
        r = Rational.coerce(quantum_integer(4)) / Rational.coerce(quantum_integer(2))
        assert r.evaluate(1) == Fraction(2)


class TestSolveLinear:
    def test_identity(self):
        sol = solve_linear([[ONE, ZERO], [ZERO, ONE]], [ONE, ZERO])
        assert sol.solvable and sol.kernel == []
        assert [x.to_laurent() for x in sol.particular] == [ONE, ZERO]

    def test_one_by_two_kernel(self):
        sol = solve_linear([[q(1), q(2)]])
        assert sol.rank == 1 and len(sol.kernel) == 1
        k = sol.kernel[0]
        # proportional to (q, -1)
        assert k[0] * Rational.coerce(-ONE) == k[1] * Rational.coerce(q(1))

    def test_inconsistent(self):
        sol = solve_linear([[ONE], [ONE]], [ONE, ZERO])
        assert not sol.solvable

    def test_known_fixture(self):
        # M x = b with x = (1, q, -q^-1) chosen in advance
        M = [[ONE, q(1), ZERO], [q(-1), ONE, quantum_integer(2)], [ZERO, q(2), ONE - q(1)]]
        x = [ONE, q(1), -q(-1)]
        b = [sum((M[i][j] * x[j] for j in range(3)), ZERO) for i in range(3)]
        sol = solve_linear(M, b)
        assert sol.solvable and sol.kernel == []
        assert [v.to_laurent() for v in sol.particular] == x

    @given(st.lists(st.lists(laurents, min_size=3, max_size=3), min_size=1, max_size=3),
           st.lists(laurents, min_size=3, max_size=3))
    def test_planted_solution(self, M, x):
        b = [sum((row[j] * x[j] for j in range(3)), ZERO) for row in M]
        sol = solve_linear(M, b)
        assert sol.solvable
        for row, rhs in zip(M, b):
            acc = Rational.coerce(ZERO)
            for a, v in zip(row, sol.particular):
                acc = acc + Rational.coerce(a) * v
            assert acc == Rational.coerce(rhs)
        for k in sol.kernel:
            for row in M:
                acc = Rational.coerce(ZERO)
                for a, v in zip(row, k):
                    acc = acc + Rational.coerce(a) * v
                assert acc.is_zero()
        assert sol.rank + len(sol.kernel) == 3
