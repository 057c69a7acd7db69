import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frameforge.errors import UnsupportedSize
from frameforge.finite import (
    FiniteField, divisors, hadamard, is_irreducible, is_prime, legendre, prime_power, quadratic_residues,
    smallest_irreducible,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


class TestNumberTheory:
    def test_primes(self):
        assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_prime_power(self):
        assert prime_power(8) == (2, 3)
        assert prime_power(9) == (3, 2)
        assert prime_power(12) is None
        assert prime_power(1) is None

    def test_divisors(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]

    def test_quadratic_residues_13(self):
        assert quadratic_residues(13) == [0, 1, 3, 4, 9, 10, 12]

    def test_legendre_multiplicative(self):
        for a, b in itertools.product(range(1, 11), repeat=2):
            assert legendre(a * b, 11) == legendre(a, 11) * legendre(b, 11)

    def test_gf16_modulus(self):
        assert list(smallest_irreducible(2, 4)) == [1, 1, 0, 0, 1]
        assert is_irreducible([1, 1, 0, 0, 1], 2)
        assert not is_irreducible([1, 0, 1], 2)  # x^2 + 1 = (x + 1)^2


class TestFieldAxioms:
    @pytest.mark.parametrize("q", ORDERS)
    def test_multiplicative_group(self, q):
        F = FiniteField.of_order(q)
        nonzero = np.arange(1, q)
        for a in nonzero:
            assert F.mul(a, F.inverse(a)) == 1
            assert F.power(a, q - 1) == 1

    @pytest.mark.parametrize("q", ORDERS)
    def test_trace_is_onto_prime_field(self, q):
        F = FiniteField.of_order(q)
        tr = F.trace_table
        counts = np.bincount(tr, minlength=F.p)
        assert np.all(counts == q // F.p)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(ORDERS), st.data())
    def test_distributive_and_trace_linear(self, q, data):
        F = FiniteField.of_order(q)
        a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % F.p
        assert F.sub(F.add(a, b), b) == a

    def test_frobenius_fixes_trace(self):
        F = FiniteField(2, 4)
        for a in range(16):
            assert F.trace(F.power(a, 2)) == F.trace(a)

    def test_element_operators(self):
        F = FiniteField(3, 2)
        x = F.element(4)
        y = F.element(7)
        assert (x * y) / y == x
        assert x - x == F.element(0)
        assert (x ** 8) == F.element(1)
        with pytest.raises(ValueError):
            F.element(9)


class TestHadamard:
    @pytest.mark.parametrize("n", [1, 2, 4, 8])
    def test_sylvester_orthogonal(self, n):
        h = hadamard(n)
        assert np.allclose(h @ h.conj().T, n * np.eye(n))

    @pytest.mark.parametrize("n", [3, 5, 6])
    def test_dft_orthogonal_unimodular(self, n):
        h = hadamard(n, "complex_dft")
        assert np.allclose(np.abs(h), 1)
        assert np.allclose(h @ h.conj().T, n * np.eye(n))
        assert h[1, 1] == pytest.approx(np.exp(-2j * np.pi / n))

    def test_sylvester_needs_power_of_two(self):
        with pytest.raises(UnsupportedSize):
            hadamard(6)
