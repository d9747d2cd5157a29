"""
Unit tests for verification records and report rendering.
"""

import json
import unittest
from fractions import Fraction

from qmodulus import __version__
from qmodulus.exceptions import PreconditionError
from qmodulus.reports import (
    VerificationReport,
    dumps_json,
    emit_table,
    first_failure,
    jsonable,
    render_markdown,
    report_document,
    sort_reports,
)


def record(suite="blowup-omega", passed=True, **params):
    return VerificationReport(
        suite=suite, params=params, lhs={"h1": 0}, rhs={"h1": 0}, passed=passed, h1=0
    )


class TestVerificationReport(unittest.TestCase):
    """Test records and their ordering."""

    def test_params_are_jsonable(self):
        """Test that rationals become 'p/q' strings."""
        r = record(a=Fraction(3, 2), q=1)
        self.assertEqual(r.params, {"a": "3/2", "q": 1})
        self.assertEqual(r.params_text(), "a=3/2, q=1")
        self.assertEqual(r.to_json()["pass"], True)

    def test_jsonable(self):
        """Test conversion of nested containers."""
        value = {"s": frozenset({2, 1}), "t": (Fraction(1, 2), None), 3: True}
        self.assertEqual(jsonable(value), {"s": [1, 2], "t": ["1/2", None], "3": True})

    def test_sorting_is_numeric(self):
        """Test that records sort by rational value, not by text."""
        reports = [record(a="7/3"), record(a="1/2"), record(a="2"), record(a="3/2")]
        ordered = [r.params["a"] for r in sort_reports(reports)]
        self.assertEqual(ordered, ["1/2", "3/2", "2", "7/3"])

    def test_first_failure(self):
        """Test that the first failing record in sorted order is reported."""
        reports = [record(a="2", passed=False), record(a="1", passed=False), record(a="0")]
        self.assertEqual(first_failure(reports).params["a"], "1")
        self.assertIsNone(first_failure([record(a="1")]))


class TestRendering(unittest.TestCase):
    """Test markdown and JSON output."""

    def test_empty_table(self):
        """Test that an empty list gives the header only."""
        self.assertEqual(emit_table([]), "| params | h0 | h1 | h2 | pass |\n|---|---|---|---|---|")

    def test_failing_row_is_flagged(self):
        """Test the FAIL marker and one row per record."""
        table = emit_table([record(a="1"), record(a="2", passed=False)])
        lines = table.splitlines()
        self.assertEqual(len(lines), 4)
        self.assertIn("**FAIL**", lines[3])
        self.assertIn("a=1", lines[2])

    def test_mixed_suites_rejected(self):
        """Test that a table holds a single suite."""
        with self.assertRaises(PreconditionError):
            emit_table([record(suite="x"), record(suite="y")])

    def test_document(self):
        """Test the JSON document layout and stable serialization."""
        document = report_document("blowup-omega", 7, [record(a="1")])
        self.assertEqual(document["seed"], 7)
        self.assertEqual(document["version"], __version__)
        self.assertTrue(document["pass"])
        text = dumps_json(document)
        self.assertTrue(text.endswith("\n"))
        self.assertEqual(json.loads(text), document)
        self.assertEqual(dumps_json(document), text)

    def test_markdown(self):
        """Test the markdown header and per-suite sections."""
        records = [record(suite="b", a="1"), record(suite="a", a="1", passed=False)]
        text = render_markdown("all", 1, records)
        self.assertIn("- pass: no", text)
        self.assertLess(text.index("## a"), text.index("## b"))


if __name__ == "__main__":
    unittest.main()
