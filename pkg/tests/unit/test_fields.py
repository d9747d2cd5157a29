"""
Unit tests for finite fields and rational function fields.
"""

import itertools
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from qmodulus.exceptions import FieldConstructionError, ParameterMismatchError, PreconditionError
from qmodulus.fields import INTEGERS, RationalFunctionField, finite_field
from tests.fixtures import seeded_rng


class TestFiniteField(unittest.TestCase):
    """Test F_q arithmetic on dense galoistools representations."""

    def setUp(self):
        self.F3 = finite_field(3)
        self.F9 = finite_field(3, 2)

    def test_order_and_cache(self):
        """Test field order, printing and caching."""
        self.assertEqual(self.F9.order, 9)
        self.assertEqual(self.F9.characteristic, 3)
        self.assertEqual(str(self.F9), "GF(9)")
        self.assertIs(finite_field(3, 2), self.F9)

    def test_invalid_parameters(self):
        """Test that bad primes and degrees are rejected."""
        with self.assertRaises(FieldConstructionError):
            finite_field(4)
        with self.assertRaises(FieldConstructionError):
            finite_field(3, 5)
        with self.assertRaises(FieldConstructionError):
            finite_field(11)

    def test_elements_are_distinct(self):
        """Test that enumeration yields q distinct elements."""
        elements = list(self.F9.elements())
        self.assertEqual(len(elements), 9)
        self.assertEqual(len({e.rep for e in elements}), 9)

    def test_generator_is_primitive(self):
        """Test that the root of the shipped modulus generates the unit group."""
        for p, k in ((2, 2), (3, 2), (5, 2), (2, 3)):
            F = finite_field(p, k)
            with self.subTest(p=p, k=k):
                self.assertEqual(F.generator().multiplicative_order(), F.order - 1)

    def test_roots_of_unity(self):
        """Test primitive roots of unity and the e | q - 1 precondition."""
        zeta = self.F9.primitive_root_of_unity(4)
        self.assertEqual(zeta.multiplicative_order(), 4)
        self.assertEqual(self.F3.primitive_root_of_unity(2), self.F3(2))
        with self.assertRaises(PreconditionError):
            self.F3.primitive_root_of_unity(4)

    def test_field_axioms(self):
        """Test inverses and distributivity over all of F_9."""
        elements = list(self.F9.elements())
        for x in elements:
            if not x.is_zero():
                self.assertEqual(x * x.inverse(), self.F9.one())
        for x, y, z in itertools.islice(itertools.product(elements, repeat=3), 0, 729, 7):
            self.assertEqual(x * (y + z), x * y + x * z)

    def test_frobenius_is_additive(self):
        """Test that x -> x^p respects addition."""
        elements = list(self.F9.elements())
        for x, y in itertools.product(elements, repeat=2):
            self.assertEqual(self.F9.frobenius(x + y), self.F9.frobenius(x) + self.F9.frobenius(y))

    def test_integer_coercion(self):
        """Test coercion of integers and of prime-field elements."""
        self.assertEqual(self.F3(5), self.F3(2))
        self.assertEqual(self.F3(-1), self.F3(2))
        self.assertEqual(self.F9(self.F3(2)), self.F9(2))
        with self.assertRaises(ParameterMismatchError):
            self.F3(finite_field(5)(1))
        with self.assertRaises(ParameterMismatchError):
            self.F3(1.0)

    def test_zero_has_no_inverse(self):
        """Test that inverting zero fails."""
        with self.assertRaises(ZeroDivisionError):
            self.F3.zero().inverse()

    def test_random_element_nonzero(self):
        """Test that nonzero sampling never returns zero."""
        rng = seeded_rng()
        for _ in range(50):
            self.assertFalse(self.F9.random_element(rng, nonzero=True).is_zero())


class TestRationalFunctionField(unittest.TestCase):
    """Test F_q(u)."""

    def setUp(self):
        self.K = RationalFunctionField(finite_field(3))
        self.u = self.K.gen()

    def test_reduced_form(self):
        """Test that fractions are kept reduced with monic denominators."""
        u = self.u
        self.assertEqual((u + 1) / (u + 1), self.K.one())
        self.assertEqual(((u * u - 1) / (u - 1)), u + 1)
        self.assertEqual(str(u / (u * 2)), "2")

    def test_derivative(self):
        """Test the formal derivative, including in characteristic p."""
        u = self.u
        self.assertEqual(u.derivative(), self.K.one())
        self.assertTrue((u**3).derivative().is_zero())
        self.assertEqual(u.inverse().derivative(), -(u**2).inverse())

    def test_leibniz(self):
        """Test the product rule on random elements."""
        rng = seeded_rng()
        for _ in range(20):
            f, g = self.K.random_element(rng), self.K.random_element(rng)
            self.assertEqual((f * g).derivative(), f.derivative() * g + f * g.derivative())

    @settings(max_examples=200)
    @given(st.integers(min_value=0, max_value=10**6), st.sampled_from([(3, 1), (2, 2)]))
    def test_field_axioms(self, seed, order):
        """Test the field axioms of F_q(u) on random elements."""
        K = RationalFunctionField(finite_field(*order))
        rng = seeded_rng(seed)
        f, g, h = (K.random_element(rng) for _ in range(3))
        self.assertEqual(f + g, g + f)
        self.assertEqual(f * g, g * f)
        self.assertEqual((f + g) + h, f + (g + h))
        self.assertEqual((f * g) * h, f * (g * h))
        self.assertEqual(f * (g + h), f * g + f * h)
        self.assertEqual(f + K.zero(), f)
        self.assertEqual(f * K.one(), f)
        self.assertTrue((f - f).is_zero())
        if not g.is_zero():
            self.assertEqual((f / g) * g, f)
            self.assertEqual(g * g.inverse(), K.one())

    def test_mismatched_fields(self):
        """Test that elements of different function fields do not mix."""
        other = RationalFunctionField(finite_field(5))
        with self.assertRaises(ParameterMismatchError):
            self.u + other.gen()

    def test_str(self):
        """Test printing."""
        self.assertEqual(str(self.u + 1), "u + 1")
        self.assertEqual(str(self.K), "GF(3)(u)")


class TestIntegers(unittest.TestCase):
    """Test the integer coefficient ring."""

    def test_protocol(self):
        """Test zero, one, characteristic and coercion."""
        self.assertEqual(INTEGERS.zero(), 0)
        self.assertEqual(INTEGERS.one(), 1)
        self.assertEqual(INTEGERS.characteristic, 0)
        with self.assertRaises(ParameterMismatchError):
            INTEGERS("1")


if __name__ == "__main__":
    unittest.main()
