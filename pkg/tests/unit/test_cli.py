"""
Unit tests for command-line parsing and config building.
"""

import contextlib
import io
import json
import os
import tempfile
import unittest
from fractions import Fraction

from qmodulus.cli import EXIT_ERROR, EXIT_OK, build_config, build_parser, main
from qmodulus.exceptions import ConfigError


def parse(*argv):
    return build_parser().parse_args(list(argv))


class TestParser(unittest.TestCase):
    """Test the argument parser."""

    def test_verify_arguments(self):
        """Test that grid flags collect several values."""
        args = parse("verify", "blowup-omega", "--a", "3/2", "--q", "0", "1")
        self.assertEqual(args.command, "verify")
        self.assertEqual(args.suite, "blowup-omega")
        self.assertEqual(args.a, ["3/2"])
        self.assertEqual(args.q, ["0", "1"])
        self.assertIsNone(args.b)
        self.assertFalse(args.verbose)

    def test_list_command(self):
        """Test that 'list' takes no arguments."""
        self.assertEqual(parse("list").command, "list")

    def test_command_required(self):
        """Test that a missing command is a usage error."""
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                parse()

    def test_format_choices(self):
        """Test that only json and md are accepted formats."""
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                parse("verify", "blowup-omega", "--format", "xml")

    def test_integer_options(self):
        """Test that --samples and --seed are parsed as integers."""
        args = parse("verify", "construction-m", "--samples", "5", "--seed", "9")
        self.assertEqual((args.samples, args.seed), (5, 9))


class TestBuildConfig(unittest.TestCase):
    """Test turning parsed arguments into a SuiteConfig."""

    def test_flags_only(self):
        """Test a config built from flags alone."""
        args = parse("verify", "blowup-omega", "--a", "3/2", "--q", "0", "1", "--format", "md")
        config = build_config(args)
        self.assertEqual(config.values("a"), (Fraction(3, 2),))
        self.assertEqual(config.values("q"), (0, 1))
        self.assertEqual(config.format, "md")
        self.assertIsNone(config.samples)

    def test_grid_file_with_overrides(self):
        """Test that flags override the values of a --grid file."""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "grid.json")
            with open(path, "w", encoding="utf-8") as handle:
                document = {"suite": "hirzebruch", "grid": {"a": ["1"], "b": ["1"]}, "seed": 4}
                json.dump(document, handle)
            args = parse("verify", "blowup-omega", "--grid", path, "--b", "2", "--seed", "8")
            config = build_config(args)
        self.assertEqual(config.suite, "blowup-omega")
        self.assertEqual(config.seed, 8)
        self.assertEqual(config.values("a"), (Fraction(1),))
        self.assertEqual(config.values("b"), (Fraction(2),))

    def test_invalid_value(self):
        """Test that invalid grid values surface as ConfigError."""
        with self.assertRaises(ConfigError):
            build_config(parse("verify", "blowup-omega", "--a", "0.5"))


class TestMain(unittest.TestCase):
    """Test exit codes of the entry point."""

    def run_main(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_list(self):
        """Test that 'list' prints every suite and marks sampled ones."""
        code, out, _ = self.run_main("list")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("blowup-omega", out)
        lines = {line.split()[0]: line for line in out.splitlines()}
        self.assertTrue(lines["construction-m"].endswith("(sampled)"))
        self.assertFalse(lines["blowup-omega"].endswith("(sampled)"))

    def test_unknown_suite(self):
        """Test that an unknown suite exits with status 2."""
        code, out, err = self.run_main("verify", "no-such-suite")
        self.assertEqual(code, EXIT_ERROR)
        self.assertEqual(out, "")
        self.assertIn("qmodulus: error: unknown suite 'no-such-suite'", err)


if __name__ == "__main__":
    unittest.main()
