"""
Test fixtures and builders shared by the qmodulus tests.

Provides small fields, Laurent series fields and the modulus pairs used
across unit and integration tests.
"""

import random
from fractions import Fraction

from qmodulus.fields import RationalFunctionField, finite_field
from qmodulus.laurent import LaurentField
from qmodulus.modulus import blowup_pairs, hirzebruch_pair
from qmodulus.toric import L_PRIME_RAY, L_RAY, QDivisor, ToricModulusPair, standard_fan


class FieldFixtures:
    """Coefficient fields and Laurent series fields."""

    @staticmethod
    def prime_field(p=3):
        return finite_field(p)

    @staticmethod
    def function_field(p=3, k=1):
        """F_q(u) with q = p^k."""
        return RationalFunctionField(finite_field(p, k))

    @staticmethod
    def laurent(p=3, function_field=False, variable="t"):
        """F_p((t)), or F_p(u)((t)) when asked."""
        K = FieldFixtures.function_field(p) if function_field else finite_field(p)
        return LaurentField(K, variable)

    @staticmethod
    def series(L, terms):
        """An exact Laurent polynomial from ``{exponent: int coefficient}``."""
        return L.series({k: L.field(c) for k, c in terms.items()}, exact=True)


class PairFixtures:
    """Toric modulus pairs."""

    @staticmethod
    def affine(a, b):
        return ToricModulusPair(
            standard_fan("affine_plane"),
            QDivisor({L_RAY: Fraction(a), L_PRIME_RAY: Fraction(b)}),
        )

    @staticmethod
    def blowup(a, b):
        return blowup_pairs(a, b)[1]

    @staticmethod
    def hirzebruch(n, a, b, c):
        return hirzebruch_pair(n, a, b, c)


def seeded_rng(seed=12345):
    """A fresh generator for deterministic sampling in tests."""
    return random.Random(seed)
