"""
Exceptions raised by qmodulus.

Every error derives from QModulusError so callers, and the command-line
runner in particular, can catch the whole family in one place. Several
classes also derive from the matching builtin (ValueError, TypeError,
ArithmeticError) so ordinary ``except ValueError`` handlers keep working.
"""


class QModulusError(Exception):
    """Base class for all qmodulus errors."""


class PreconditionError(QModulusError, ValueError):
    """
    An operation was called outside its documented domain.

    The message names the failing inequality, e.g. ``"Na - 1 = 0 is not
    positive"``.
    """


class ParameterMismatchError(QModulusError, TypeError):
    """Operands come from different rings, primes or Witt lengths."""


class FieldConstructionError(QModulusError, ValueError):
    """A finite field could not be built from the shipped modulus table."""


class InsufficientPrecisionError(QModulusError, ArithmeticError):
    """A valuation or leading term is not determined by the known slots."""


class NonExactDivisionError(QModulusError, ArithmeticError):
    """A division by a power of p in the Witt recursion left a remainder."""


class InvalidFanError(QModulusError, ValueError):
    """Ray or cone data violates the smooth-fan invariants."""


class IncompatibleFanMapError(QModulusError, ValueError):
    """A lattice map sends a source cone into no single target cone."""

    def __init__(self, message, cone=None):
        super().__init__(message)
        self.cone = cone


class ImageOutsideSupportError(QModulusError, ValueError):
    """A lattice vector lies outside the support of a fan."""


class NotMaximalSmoothConeError(QModulusError, ValueError):
    """Star subdivision was requested at a cone that cannot be subdivided."""


class UnsupportedFanShapeError(QModulusError, ValueError):
    """The Čech engine only handles fans with at most two maximal cones."""


class UnboundedRegionError(QModulusError, ValueError):
    """A finite count was requested from an infinite character region."""


class UnsupportedExtensionError(QModulusError, ValueError):
    """Only tame, totally ramified Kummer extensions are modelled."""


class DegreeOverflowError(QModulusError, ValueError):
    """A form operation would leave the degrees 0, 1, 2."""


class ConfigError(QModulusError, ValueError):
    """A suite configuration could not be parsed or validated."""
