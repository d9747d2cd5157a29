"""
Unit tests for exact rational helpers.
"""

import unittest
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from qmodulus.exceptions import ConfigError
from qmodulus.rationals import (
    as_rational,
    ceil_q,
    ceiling_threshold,
    floor_q,
    format_rational,
    parse_rational,
)


class TestParsing(unittest.TestCase):
    """Test the "p/q" text form."""

    def test_parse_reduces(self):
        """Test that parsed fractions are reduced."""
        self.assertEqual(parse_rational("6/4"), Fraction(3, 2))
        self.assertEqual(parse_rational("-3"), Fraction(-3))
        self.assertEqual(parse_rational(" 7 / 2 "), Fraction(7, 2))

    def test_parse_rejects_inexact_and_malformed(self):
        """Test that decimals, zero denominators and junk are rejected."""
        for text in ("1.5", "1/0", "abc", "", "1/-2"):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    parse_rational(text)

    def test_config_error_is_value_error(self):
        """Test that parse errors can be caught as ValueError."""
        with self.assertRaises(ValueError):
            parse_rational("x")

    def test_as_rational(self):
        """Test coercion from ints, strings and Fractions."""
        self.assertEqual(as_rational(2), Fraction(2))
        self.assertEqual(as_rational("1/3"), Fraction(1, 3))
        half = Fraction(1, 2)
        self.assertIs(as_rational(half), half)
        for bad in (True, 2.5, None):
            with self.assertRaises(ConfigError):
                as_rational(bad)

    def test_format(self):
        """Test the canonical text form."""
        self.assertEqual(format_rational(Fraction(3, 2)), "3/2")
        self.assertEqual(format_rational(Fraction(4, 2)), "2")
        self.assertEqual(format_rational(Fraction(-1, 3)), "-1/3")

    @given(st.fractions())
    def test_format_parse_inverse(self, x):
        """Test that formatting then parsing gives the same rational."""
        self.assertEqual(parse_rational(format_rational(x)), x)


class TestRounding(unittest.TestCase):
    """Test ceilings, floors and the scale threshold."""

    def test_ceiling_examples(self):
        """Test documented ceiling values."""
        self.assertEqual(ceil_q(Fraction(3, 2)), 2)
        self.assertEqual(ceil_q(2), 2)
        self.assertEqual(ceil_q(Fraction(-1, 2)), 0)
        self.assertEqual(floor_q(Fraction(-1, 2)), -1)

    def test_threshold_examples(self):
        """Test thresholds of a few coefficients."""
        self.assertEqual(ceiling_threshold(Fraction(3, 2)), Fraction(1, 3))
        self.assertEqual(ceiling_threshold(Fraction(7, 3)), Fraction(1, 7))
        self.assertEqual(ceiling_threshold(2), Fraction(1, 2))
        self.assertEqual(ceiling_threshold(1), 1)
        self.assertEqual(ceiling_threshold(Fraction(1, 2)), 1)
        self.assertEqual(ceiling_threshold(-3), 1)

    @given(st.fractions(min_value=Fraction(1, 100), max_value=50))
    def test_threshold_is_sharp(self, d):
        """Test that the ceiling is stable below the threshold and drops at it."""
        eps0 = ceiling_threshold(d)
        self.assertEqual(ceil_q((1 - eps0 / 2) * d), ceil_q(d))
        if eps0 < 1:
            self.assertEqual(ceil_q((1 - eps0) * d), ceil_q(d) - 1)


if __name__ == "__main__":
    unittest.main()
