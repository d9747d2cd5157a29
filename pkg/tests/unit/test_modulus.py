"""
Unit tests for modulus sheaves, the Hirzebruch reduction and the monomial
filtration check.
"""

import unittest
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from qmodulus.exceptions import PreconditionError
from qmodulus.modulus import (
    FormSection,
    MonomialValuation,
    SheafKind,
    WittSection,
    _integral_vector,
    admissible_power,
    blowup_pairs,
    brute_force_construction_m,
    construction_m,
    hirzebruch_pair,
    modulus_cohomology,
    momega_sheaf,
    monomial_bound_inequality,
    monomial_filtration_check,
    mwitt_divisor,
    random_valuation,
    sample_sections,
    verify_blowup_omega,
    verify_blowup_witt,
    verify_cube_invariance,
    verify_hirzebruch,
    verify_left_continuity,
)
from qmodulus.toric import EXCEPTIONAL_RAY, L_PRIME_RAY, L_RAY, QDivisor
from qmodulus.utils import Subspace
from tests.fixtures import PairFixtures, seeded_rng

positive = st.fractions(min_value=Fraction(1, 8), max_value=6, max_denominator=8)
nonnegative = st.fractions(min_value=0, max_value=6, max_denominator=8)


class TestConstructionM(unittest.TestCase):
    """Test the split N = m + m'."""

    def test_known_values(self):
        """Test the worked splits."""
        self.assertEqual(construction_m(1, 0, 2), (2, 0))
        self.assertEqual(construction_m(2, 0, 1), (1, 0))
        self.assertEqual(construction_m("1/2", "1/2", 3), (1, 2))

    def test_failing_inequality_is_named(self):
        """Test that the error names Na - 1."""
        with self.assertRaises(PreconditionError) as ctx:
            construction_m(1, 1, 1)
        self.assertIn("Na - 1 = 0 is not positive", str(ctx.exception))

    def test_a_must_be_nonzero(self):
        """Test the a ≠ 0 precondition."""
        with self.assertRaises(PreconditionError) as ctx:
            construction_m(0, 1, 4)
        self.assertIn("a ≠ 0", str(ctx.exception))

    @given(positive, nonnegative, st.integers(min_value=1, max_value=40))
    def test_matches_brute_force(self, a, b, N):
        """Test the closed form against exhaustive search when a split exists."""
        splits = brute_force_construction_m(a, b, N)
        c = a + b - (a + b + 1) / (N + 1)
        if c <= 0 or N * a - 1 <= 0 or not splits:
            with self.assertRaises(PreconditionError):
                construction_m(a, b, N)
        else:
            self.assertEqual(construction_m(a, b, N), splits[0])

    def test_admissible_power(self):
        """Test the least power of two that admits a split."""
        self.assertEqual(admissible_power(1, 0), 2)
        self.assertEqual(admissible_power("3/2", "1/2"), 2)
        with self.assertRaises(PreconditionError):
            admissible_power(0, 1)


class TestModulusSheaves(unittest.TestCase):
    """Test the log formulas for MΩ^q and MW_n."""

    def test_momega_twists(self):
        """Test twist ceil(D) - |D| and log poles along the support."""
        pair = PairFixtures.affine("3/2", 0)
        sheaf = momega_sheaf(pair, 1)
        self.assertEqual(sheaf.twists, (1, 0))
        self.assertEqual(sheaf.log_rays, frozenset({0}))

    def test_mwitt_divisor(self):
        """Test (ceil(D) - |D|) / p^(n-1)."""
        pair = PairFixtures.affine("5/2", 1)
        self.assertEqual(mwitt_divisor(pair, 2, 3), QDivisor({L_RAY: "1/2"}))

    def test_blowup_pullback(self):
        """Test the pulled back divisor on the blow-up."""
        affine, blown = blowup_pairs("3/2", "1/2")
        self.assertEqual(blown.modulus.coefficient(EXCEPTIONAL_RAY), 2)
        self.assertEqual(affine.modulus.coefficient(L_PRIME_RAY), Fraction(1, 2))
        with self.assertRaises(PreconditionError):
            blowup_pairs(0, 1)

    def test_witt_cohomology_slots(self):
        """Test that MW_n has one region per slot."""
        pair = PairFixtures.affine("3/2", "1/2")
        result = modulus_cohomology(pair, SheafKind.witt(2, 3))
        self.assertEqual(len(result.regions), 3)
        self.assertTrue(result.higher_vanishes)

    def test_sheaf_kind(self):
        """Test labels and the form degree range."""
        self.assertEqual(SheafKind.omega(1).label, "omega(1)")
        self.assertEqual(SheafKind.witt(3, 2).params(), {"p": 3, "n": 2})
        with self.assertRaises(PreconditionError):
            SheafKind.omega(3)

    def test_hirzebruch_pair(self):
        """Test parameter validation of the Hirzebruch pairs."""
        pair = hirzebruch_pair(2, "1/2", 1, 3)
        self.assertEqual(pair.fan.name, "Delta_2")
        with self.assertRaises(PreconditionError):
            hirzebruch_pair(-1, 1, 1, 1)
        with self.assertRaises(PreconditionError):
            hirzebruch_pair(1, -1, 1, 1)


class TestVerifiers(unittest.TestCase):
    """Test the invariance checks on fixed parameters."""

    def test_blowup_omega(self):
        """Test blow-up invariance of MΩ^q for every degree."""
        for q in range(3):
            with self.subTest(q=q):
                report = verify_blowup_omega("3/2", "1/2", q)
                self.assertTrue(report.passed)
                self.assertEqual(report.params["q"], q)
                self.assertEqual(report.h1, 0)

    def test_blowup_witt(self):
        """Test blow-up invariance of MW_2 for p = 2."""
        self.assertTrue(verify_blowup_witt("3/2", "1/2", 2, 2).passed)

    def test_hirzebruch(self):
        """Test the Hirzebruch reduction for (3/2, 1/2)."""
        report = verify_hirzebruch("3/2", "1/2", SheafKind.omega(0))
        self.assertTrue(report.passed)
        self.assertEqual(report.params["N"], 2)
        self.assertEqual((report.params["m"], report.params["m'"]), (2, 0))
        self.assertTrue(report.lhs["identities"]["blowup_iso"])

    def test_cube_invariance(self):
        """Test cube invariance on (A^1, (1/2)[0])."""
        self.assertTrue(verify_cube_invariance("1/2", SheafKind.omega(0)).passed)

    def test_left_continuity(self):
        """Test stabilization below the threshold and the jump at it."""
        report = verify_left_continuity(PairFixtures.affine("3/2", "1/2"), SheafKind.omega(0))
        self.assertTrue(report.passed)
        self.assertEqual(report.lhs["threshold"], "1/3")
        self.assertTrue(report.lhs["changes_at"])


class TestMonomialFiltration(unittest.TestCase):
    """Test pullbacks of local sections along monomial valuations."""

    def test_rounding_inequality(self):
        """Test the rounding inequality and its preconditions."""
        self.assertTrue(monomial_bound_inequality([1, 1], ["3/2", "3/2"]))
        self.assertTrue(monomial_bound_inequality([3], ["4/3"]))
        with self.assertRaises(PreconditionError):
            monomial_bound_inequality([1], ["0"])
        with self.assertRaises(PreconditionError):
            monomial_bound_inequality([0, 0], [1, 1])
        with self.assertRaises(PreconditionError):
            monomial_bound_inequality([1, 2], [1])

    @given(st.lists(st.tuples(st.integers(0, 5), positive), min_size=1, max_size=4))
    def test_rounding_inequality_always_holds(self, pairs):
        """Test the inequality on random weights and coefficients."""
        weights = [e for e, _ in pairs]
        if not any(weights):
            weights[0] = 1
        self.assertTrue(monomial_bound_inequality(weights, [r for _, r in pairs]))

    def test_worked_form_section(self):
        """Test x^-1 dlog x on (A^2, (3/2)L) along the valuation with weights (1, 0)."""
        pair = PairFixtures.affine("3/2", 0)
        section = FormSection(frozenset({0, 1}), (-1, 0), (1, 0))
        val = MonomialValuation(frozenset({0, 1}), (1, 0))
        self.assertTrue(monomial_filtration_check(section, pair, val, SheafKind.omega(1)))

    def test_non_section_is_rejected(self):
        """Test that x^-2 dlog x is not a local section of MΩ^1."""
        pair = PairFixtures.affine("3/2", 0)
        section = FormSection(frozenset({0, 1}), (-2, 0), (1, 0))
        val = MonomialValuation(frozenset({0, 1}), (1, 0))
        with self.assertRaises(PreconditionError):
            monomial_filtration_check(section, pair, val, SheafKind.omega(1))

    def test_witt_section(self):
        """Test a Witt section on the same pair."""
        pair = PairFixtures.affine("3/2", 0)
        section = WittSection(frozenset({0, 1}), ((0, 0), (-1, 0)), (1, 1))
        val = MonomialValuation(frozenset({0, 1}), (2, 1))
        self.assertTrue(monomial_filtration_check(section, pair, val, SheafKind.witt(2, 2)))

    def test_valuation_checks(self):
        """Test weight validation and the support condition."""
        pair = PairFixtures.affine("3/2", 0)
        with self.assertRaises(PreconditionError):
            MonomialValuation(frozenset({0, 1}), (0, 0))
        with self.assertRaises(PreconditionError):
            MonomialValuation(frozenset({0, 1}), (1,))
        with self.assertRaises(PreconditionError):
            MonomialValuation(frozenset({0, 1}), (0, 1)).check_on(pair)

    def test_random_sections(self):
        """Test the filtration bound on sampled sections of the blow-up pair."""
        pair = PairFixtures.blowup("3/2", "1/2")
        rng = seeded_rng()
        for kind in (SheafKind.omega(0), SheafKind.omega(1), SheafKind.witt(2, 2)):
            for cone in pair.fan.cones:
                val = random_valuation(pair, cone, rng)
                for section in sample_sections(pair, kind, cone, rng, count=3):
                    with self.subTest(kind=kind.label, cone=sorted(cone)):
                        self.assertTrue(monomial_filtration_check(section, pair, val, kind))

    def test_sampled_form_coefficients_are_units(self):
        """Test that sampled form coefficients have nonzero entries prime to 3."""
        pair = PairFixtures.blowup("3/2", "1/2")
        rng = seeded_rng()
        for kind in (SheafKind.omega(0), SheafKind.omega(1), SheafKind.omega(2)):
            for cone in pair.fan.cones:
                for section in sample_sections(pair, kind, cone, rng, count=10):
                    entries = [c for c in section.coefficients if c]
                    with self.subTest(kind=kind.label, cone=sorted(cone)):
                        self.assertTrue(entries)
                        self.assertTrue(all(c % 3 for c in entries))

    def test_integral_vector_is_primitive(self):
        """Test the fallback when the subspace forces a multiple of 3."""
        rng = seeded_rng()
        forced = Subspace.span(2, [(3, 1)])
        self.assertIn(_integral_vector(forced, rng), {(3, 1), (-3, -1)})
        free = Subspace.span(2, [(2, 4)])
        self.assertIn(_integral_vector(free, rng, p=5), {(1, 2), (-1, -2)})


if __name__ == "__main__":
    unittest.main()
