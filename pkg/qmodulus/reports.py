"""
Verification records and their JSON and markdown renderings.

A record is what one parameter tuple of a suite produced: the two sides of
the identity being checked and whether they agree. Records sort by their
parameters so a report is the same however the tuples were scheduled.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, settings
from .exceptions import PreconditionError
from .rationals import format_rational

logger = logging.getLogger(__name__)


def jsonable(value):
    """Convert rationals, tuples and sets into JSON-ready values."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    return str(value)


def _sortable(value):
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return (0, Fraction(value), "")
    if isinstance(value, str):
        try:
            return (0, Fraction(value), "")
        except ValueError:
            return (1, Fraction(0), value)
    return (1, Fraction(0), json.dumps(value, sort_keys=True))


@dataclass(frozen=True)
class VerificationReport:
    """
    The outcome of one parameter tuple.

    Args:
        suite (str): Suite name.
        params (dict): Parameter values, JSON-ready.
        lhs: The left side of the checked identity, JSON-ready.
        rhs: The right side, JSON-ready.
        passed (bool): Whether the check holds.
        h0 (str | None): H^0 summary for the markdown table.
        h1 (int | None): h^1 for the markdown table.
        h2 (int | None): h^2 for the markdown table.
    """

    suite: str
    params: dict
    lhs: object
    rhs: object
    passed: bool
    h0: object = None
    h1: object = None
    h2: object = None
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "params", jsonable(self.params))
        object.__setattr__(self, "lhs", jsonable(self.lhs))
        object.__setattr__(self, "rhs", jsonable(self.rhs))
        object.__setattr__(self, "passed", bool(self.passed))

    @property
    def sort_key(self):
        return tuple((name, _sortable(value)) for name, value in sorted(self.params.items()))

    def params_text(self):
        items = sorted(self.params.items())
        return ", ".join(f"{name}={_format_param(value)}" for name, value in items)

    def to_json(self):
        return {
            "suite": self.suite,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
        }


def _format_param(value):
    if isinstance(value, list):
        return "(" + ", ".join(_format_param(v) for v in value) + ")"
    return str(value)


def sort_reports(reports):
    return sorted(reports, key=lambda r: (r.suite, r.sort_key))


def first_failure(reports):
    """The first failing record in sorted order, or None."""
    for report in sort_reports(reports):
        if not report.passed:
            return report
    return None


def _cell(value):
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return "; ".join(str(v) for v in value) or "-"
    return str(value).replace("|", "\\|")


def emit_table(reports):
    """
    Render records of one suite as a markdown table sorted by parameters.

    Failing rows are flagged ``**FAIL**``; an empty list gives the header
    only.

    Raises:
        PreconditionError: If the records come from different suites.

    Example:
        >>> print(emit_table([]))
        | params | h0 | h1 | h2 | pass |
        |---|---|---|---|---|
    """
    suites = {r.suite for r in reports}
    if len(suites) > 1:
        raise PreconditionError(f"a table holds one suite, got {sorted(suites)}")
    lines = ["| params | h0 | h1 | h2 | pass |", "|---|---|---|---|---|"]
    for r in sort_reports(reports):
        verdict = "pass" if r.passed else "**FAIL**"
        cells = [r.params_text(), r.h0, r.h1, r.h2]
        lines.append("| " + " | ".join(_cell(c) for c in cells) + f" | {verdict} |")
    return "\n".join(lines)


def report_document(suite, seed, reports):
    """The JSON document written by the command-line runner."""
    reports = sort_reports(reports)
    return {
        "suite": suite,
        "seed": seed,
        "rng": settings.get_setting("RNG_NAME"),
        "version": __version__,
        "pass": all(r.passed for r in reports),
        "records": [r.to_json() for r in reports],
    }


def dumps_json(document):
    """Stable serialization: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_markdown(suite, seed, reports):
    """A markdown report: header lines followed by one table per suite."""
    document = report_document(suite, seed, reports)
    lines = [
        f"# qmodulus verification: {suite}",
        "",
        f"- seed: {seed}",
        f"- rng: {document['rng']}",
        f"- version: {document['version']}",
        f"- records: {len(document['records'])}",
        f"- pass: {'yes' if document['pass'] else 'no'}",
    ]
    by_suite = {}
    for r in reports:
        by_suite.setdefault(r.suite, []).append(r)
    for name in sorted(by_suite):
        lines += ["", f"## {name}", "", emit_table(by_suite[name])]
    return "\n".join(lines) + "\n"
