"""
Integration tests for the qmodulus command line.

Each test calls ``main`` with an argument list and checks the exit status,
the report written to stdout or to ``--out``, and the stderr messages.
"""

import contextlib
import io
import json
import os
import tempfile
import unittest

from qmodulus import __version__
from qmodulus.cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, main
from qmodulus.reports import VerificationReport
from qmodulus.suites import SUITES, Suite


class CommandLineTestCase(unittest.TestCase):
    """Captures the streams of one ``main`` call."""

    def run_main(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()


class TestVerify(CommandLineTestCase):
    """Test ``qmodulus verify``."""

    def test_json_report(self):
        """Test a passing grid point written as JSON to stdout."""
        code, out, err = self.run_main(
            "verify", "blowup-omega", "--a", "3/2", "--b", "1/2", "--q", "0"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(err, "")
        document = json.loads(out)
        self.assertTrue(document["pass"])
        self.assertEqual(document["version"], __version__)
        self.assertEqual(document["records"][0]["params"], {"a": "3/2", "b": "1/2", "q": 0})

    def test_output_is_stable(self):
        """Test that two runs with one seed print identical reports."""
        argv = ("verify", "construction-m", "--samples", "4", "--seed", "7")
        first = self.run_main(*argv)
        second = self.run_main(*argv)
        self.assertEqual(first, second)
        self.assertTrue(first[1].endswith("}\n"))

    def test_markdown_report(self):
        """Test the markdown format."""
        code, out, _ = self.run_main(
            "verify", "blowup-omega", "--a", "3/2", "--b", "1/2", "--q", "0", "--format", "md"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("# qmodulus verification: blowup-omega"))
        self.assertIn("## blowup-omega", out)
        self.assertIn("| a=3/2, b=1/2, q=0 |", out)

    def test_out_file(self):
        """Test that --out writes the report to a file instead of stdout."""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "report.json")
            code, out, _ = self.run_main(
                "verify", "rounding-inequality", "--samples", "5", "--out", path
            )
            with open(path, encoding="utf-8") as handle:
                document = json.load(handle)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "")
        self.assertEqual(len(document["records"]), 5)

    def test_grid_file(self):
        """Test a run driven by a --grid file."""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "grid.json")
            with open(path, "w", encoding="utf-8") as handle:
                json.dump({"suite": "construction-m", "samples": 3, "seed": 5}, handle)
            code, out, _ = self.run_main("verify", "construction-m", "--grid", path)
        self.assertEqual(code, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document["seed"], 5)
        self.assertEqual(len(document["records"]), 3)

    def test_precondition_failure(self):
        """Test that a = 0 exits with status 2 and names the precondition."""
        code, out, err = self.run_main("verify", "blowup-omega", "--a", "0", "--q", "0")
        self.assertEqual(code, EXIT_ERROR)
        self.assertEqual(out, "")
        self.assertIn("a ≠ 0", err)

    def test_bad_rational(self):
        """Test that a decimal grid value exits with status 2."""
        code, _, err = self.run_main("verify", "blowup-omega", "--a", "1.5")
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("qmodulus: error:", err)

    def test_failing_check(self):
        """Test that a failing record exits with status 1 and is named."""

        def failing(config, rng):
            report = VerificationReport(
                suite="always-fails", params={"x": 1}, lhs=0, rhs=1, passed=False
            )
            return [report]

        SUITES["always-fails"] = Suite("always-fails", failing, "Fails on purpose")
        self.addCleanup(SUITES.pop, "always-fails")
        code, out, err = self.run_main("verify", "always-fails")
        self.assertEqual(code, EXIT_FAILED)
        self.assertFalse(json.loads(out)["pass"])
        self.assertIn("FAIL always-fails: x=1", err)


class TestList(CommandLineTestCase):
    """Test ``qmodulus list``."""

    def test_lists_every_suite(self):
        """Test that every registered suite is listed once."""
        code, out, _ = self.run_main("list")
        self.assertEqual(code, EXIT_OK)
        names = [line.split()[0] for line in out.splitlines()]
        self.assertEqual(names, sorted(SUITES))


if __name__ == "__main__":
    unittest.main()
