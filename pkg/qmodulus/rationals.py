"""
Exact rational helpers.

Rationals are ``fractions.Fraction`` throughout; this module adds the
rounding functions used by the divisor calculus and the ``"p/q"`` text
form used by configs and reports.
"""

import math
import re
from fractions import Fraction

from .exceptions import ConfigError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(x):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ConfigError(f"{x!r} is not a rational number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise ConfigError(f"{x!r} is not an exact rational; use an int or a 'p/q' string")


def parse_rational(text):
    """
    Parse ``"p/q"`` or ``"n"`` into a reduced Fraction.

    Decimal and float notations are rejected so that no inexact value ever
    enters a computation.

    Raises:
        ConfigError: If the text is not of the form ``p/q`` or ``n``.

    Example:
        >>> parse_rational("6/4")
        Fraction(3, 2)
    """
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise ConfigError(f"'{text}' does not parse as 'p/q' or an integer")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ConfigError(f"'{text}' has a zero denominator")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def ceil_q(x):
    """The least integer >= x."""
    return math.ceil(Fraction(x))


def floor_q(x):
    """The greatest integer <= x."""
    return math.floor(Fraction(x))


def ceiling_threshold(d):
    """
    Largest epsilon0 with ``ceil((1 - e) * d) == ceil(d)`` for all 0 < e < epsilon0.

    For d <= 0 and for 0 < d <= 1 every e in (0, 1) works, so the threshold
    is capped at 1.
    """
    d = Fraction(d)
    if d <= 0:
        return Fraction(1)
    return min(Fraction(1), (d - ceil_q(d) + 1) / d)
