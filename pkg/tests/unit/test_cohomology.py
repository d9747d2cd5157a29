"""
Unit tests for the character-graded Čech cohomology engine.
"""

import itertools
import math
import unittest

from hypothesis import given
from hypothesis import strategies as st

from qmodulus.cohomology import (
    EquivariantSheaf,
    brute_force_h1_support,
    cech_h,
    character_cohomology,
    divisorial_sheaf,
    h1_support,
    log_differential_sheaf,
    sections_at_character,
)
from qmodulus.exceptions import PreconditionError, UnboundedRegionError, UnsupportedFanShapeError
from qmodulus.toric import EXCEPTIONAL_RAY, Fan2D, QDivisor, standard_fan
from qmodulus.utils import HalfPlanes, Subspace

SURFACE_FANS = [
    ("affine_plane",),
    ("blowup_affine_plane",),
    ("delta", 0),
    ("delta", 1),
    ("delta", 3),
]


class TestLinearAlgebra(unittest.TestCase):
    """Test the exact subspace and half-plane helpers."""

    def test_subspace_operations(self):
        """Test span, kernel, intersection and sum."""
        line = Subspace.span(2, [(1, 1)])
        axis = Subspace.kernel(2, [(1, 0)])
        self.assertEqual(line.dimension, 1)
        self.assertTrue(line.intersect(axis).is_zero())
        self.assertTrue(line.add(axis).is_full())
        self.assertTrue(line.add(axis).contains(line))
        self.assertEqual(Subspace.span(2, [(2, 2)]), line)

    def test_halfplanes_triangle(self):
        """Test lattice points of a bounded triangle."""
        triangle = HalfPlanes(2, [((1, 0), 0), ((0, 1), 0), ((-1, -1), 2)])
        self.assertTrue(triangle.is_bounded())
        self.assertEqual(len(triangle.lattice_points()), 6)
        self.assertEqual(triangle.describe()[2], "-m1 - m2 >= -2")

    def test_halfplanes_unbounded(self):
        """Test that a quadrant cannot be enumerated."""
        quadrant = HalfPlanes(2, [((1, 0), 0), ((0, 1), 0)])
        self.assertFalse(quadrant.is_bounded())
        with self.assertRaises(UnboundedRegionError):
            quadrant.lattice_points()

    def test_halfplanes_empty(self):
        """Test an empty strip."""
        strip = HalfPlanes(2, [((1, 0), -1), ((-1, 0), 0)])
        self.assertTrue(strip.is_empty())
        self.assertEqual(strip.lattice_points(), [])


class TestProjectiveLine(unittest.TestCase):
    """Test O(d) and Ω^1 on the projective line against Riemann-Roch."""

    def setUp(self):
        self.fan = standard_fan("proj_line")

    @given(st.integers(min_value=-8, max_value=8))
    def test_line_bundles(self, d):
        """Test h^0 = max(d + 1, 0) and h^1 = max(-d - 1, 0)."""
        report = cech_h(divisorial_sheaf(self.fan, QDivisor({(1,): d})))
        self.assertEqual(report.h0_dimension, max(d + 1, 0))
        self.assertEqual(report.h1, max(-d - 1, 0))
        self.assertEqual(report.h2, 0)

    def test_canonical_sheaf(self):
        """Test that Ω^1 has one-dimensional H^1 in the trivial character."""
        report = cech_h(log_differential_sheaf(self.fan, 1, (), QDivisor()))
        self.assertEqual(report.h0_dimension, 0)
        self.assertEqual(report.h1, 1)
        self.assertEqual(report.h1_support, (((0,), 1),))

    def test_log_forms_are_trivial(self):
        """Test that Ω^1(log of both points) is the structure sheaf."""
        both = log_differential_sheaf(self.fan, 1, (0, 1), QDivisor())
        report = cech_h(both)
        self.assertEqual(report.h0_dimension, 1)
        self.assertEqual(report.h1, 0)
        self.assertTrue(report.higher_vanishes)

    def test_region_example(self):
        """Test the graded dimension of O(2[0])."""
        sheaf = EquivariantSheaf(self.fan, 0, (2, 0))
        self.assertEqual(sheaf.region().dimension(), 3)
        self.assertEqual(sheaf.region().lattice_points(), [(-2,), (-1,), (0,)])


class TestSurfaces(unittest.TestCase):
    """Test sheaves on the plane and its blow-up."""

    def test_blowup_twisted_by_exceptional(self):
        """Test that O(2E) on the blow-up has h^1 = 1 at (-1, -1)."""
        fan = standard_fan("blowup_affine_plane")
        report = cech_h(divisorial_sheaf(fan, QDivisor({EXCEPTIONAL_RAY: 2})))
        self.assertEqual(report.h1, 1)
        self.assertEqual(report.h1_support, (((-1, -1), 1),))
        self.assertIsNone(report.h0_dimension)
        self.assertEqual(report.to_json()["support"], [[-1, -1]])

    def test_forms_on_blowup(self):
        """Test H^1 of Ω^q on the blow-up: only q = 1 sees the exceptional curve."""
        fan = standard_fan("blowup_affine_plane")
        expected = {0: (), 1: (((0, 0), 1),), 2: ()}
        for q, support in expected.items():
            with self.subTest(q=q):
                sheaf = log_differential_sheaf(fan, q, (), QDivisor())
                self.assertEqual(cech_h(sheaf).h1_support, support)

    def test_residue_condition(self):
        """Test that dlog forms need the log structure along the ray."""
        fan = standard_fan("affine_plane")
        plain = log_differential_sheaf(fan, 1, (), QDivisor())
        logs = log_differential_sheaf(fan, 1, (0,), QDivisor())
        cone = frozenset({0, 1})
        self.assertEqual(sections_at_character(plain, cone, (0, 0)).dimension, 0)
        self.assertEqual(sections_at_character(plain, cone, (1, 0)).dimension, 1)
        self.assertEqual(sections_at_character(logs, cone, (0, 0)).dimension, 1)
        self.assertEqual(sections_at_character(plain, frozenset(), (-5, -5)).dimension, 2)

    def test_h1_support_matches_brute_force(self):
        """Test the candidate region against exhaustive enumeration."""
        fan = standard_fan("delta", 1)
        for coefficients in ({0: -3, 1: 2, 2: 1}, {0: 1, 1: -2, 2: -1}, {1: 3}):
            sheaf = divisorial_sheaf(fan, QDivisor.from_indices(fan, coefficients))
            with self.subTest(coefficients=coefficients):
                self.assertEqual(h1_support(sheaf, box=8), brute_force_h1_support(sheaf, 8))

    def test_three_cones_unsupported(self):
        """Test that the projective plane is outside the supported fan shapes."""
        fan = Fan2D(2, ((1, 0), (0, 1), (-1, -1)), ({0, 1}, {1, 2}, {0, 2}))
        sheaf = EquivariantSheaf(fan, 0, (0, 0, 0))
        with self.assertRaises(UnsupportedFanShapeError):
            cech_h(sheaf)
        with self.assertRaises(UnsupportedFanShapeError):
            character_cohomology(sheaf, (0, 0))


class TestFullLogDecomposition(unittest.TestCase):
    """Test Ω^q(log S)(E) with S = all rays against rank 1 twists of O(E)."""

    @given(
        st.sampled_from(SURFACE_FANS),
        st.integers(min_value=0, max_value=2),
        st.lists(
            st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=3, max_size=3
        ),
    )
    def test_sum_of_rank_one_twists(self, kind, q, coefficients):
        """Test that cech_h of the log sheaf is C(2, q) copies of cech_h of O(floor(E))."""
        fan = standard_fan(*kind)
        E = QDivisor.from_indices(fan, dict(enumerate(coefficients[: len(fan.rays)])))
        log = log_differential_sheaf(fan, q, range(len(fan.rays)), E)
        line = divisorial_sheaf(fan, E)
        copies = math.comb(2, q)
        try:
            line_report = cech_h(line)
        except UnboundedRegionError:
            with self.assertRaises(UnboundedRegionError):
                cech_h(log)
            return
        log_report = cech_h(log)
        self.assertEqual(log_report.h1, copies * line_report.h1)
        self.assertEqual(
            log_report.h1_support, tuple((m, copies * d) for m, d in line_report.h1_support)
        )
        if line_report.h0_dimension is None:
            self.assertIsNone(log_report.h0_dimension)
        else:
            self.assertEqual(log_report.h0_dimension, copies * line_report.h0_dimension)
        for m in itertools.product(range(-4, 5), repeat=2):
            self.assertEqual(
                log_report.h0.dimension_at(m), copies * line_report.h0.dimension_at(m)
            )


class TestSheafValidation(unittest.TestCase):
    """Test construction errors."""

    def test_bad_degree_and_twists(self):
        """Test degree range, twist count and log ray indices."""
        fan = standard_fan("affine_plane")
        with self.assertRaises(PreconditionError):
            EquivariantSheaf(fan, 3, (0, 0))
        with self.assertRaises(PreconditionError):
            EquivariantSheaf(fan, 0, (0,))
        with self.assertRaises(PreconditionError):
            EquivariantSheaf(fan, 1, (0, 0), frozenset({5}))

    def test_unknown_cone(self):
        """Test that sections are only asked for over cones of the fan."""
        sheaf = EquivariantSheaf(standard_fan("proj_line"), 0, (0, 0))
        with self.assertRaises(PreconditionError):
            sections_at_character(sheaf, {0, 1}, (0,))


if __name__ == "__main__":
    unittest.main()
