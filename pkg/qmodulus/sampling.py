"""
Seeded random inputs for the verification suites.

Every generator takes a ``random.Random`` instance so a suite run is
reproducible from its seed alone.
"""

import random
from fractions import Fraction

from . import settings
from .exceptions import PreconditionError
from .fields import RationalFunctionField, finite_field
from .logforms import KummerExtension, LogForm
from .toric import QDivisor


def make_rng(seed=None):
    """A Mersenne Twister generator seeded with ``seed`` or the default seed."""
    return random.Random(settings.get_setting("DEFAULT_SEED") if seed is None else seed)


def random_rational(rng, max_numerator=12, max_denominator=6, positive=False):
    low = 1 if positive else 0
    return Fraction(rng.randint(low, max_numerator), rng.randint(1, max_denominator))


def random_admissible_construction(rng, max_N=16):
    """
    Random (a, b, N) with a > 0, c = a + b - (a + b + 1)/(N + 1) > 0 and
    Na - 1 > 0.
    """
    while True:
        a = random_rational(rng, positive=True)
        b = random_rational(rng)
        N = rng.randint(1, max_N)
        c = a + b - (a + b + 1) / (N + 1)
        if c > 0 and N * a - 1 > 0:
            return a, b, N


def random_rounding_inputs(rng, max_length=4, max_weight=5):
    """Random weights e (not all zero) and positive rationals r of equal length."""
    length = rng.randint(1, max_length)
    while True:
        weights = [rng.randint(0, max_weight) for _ in range(length)]
        if any(weights):
            break
    r = [random_rational(rng, positive=True) for _ in range(length)]
    return weights, r


def random_qdivisor(rng, fan, max_numerator=6, max_denominator=3, effective=False):
    """A random Q-divisor supported on the rays of ``fan``."""
    coefficients = {}
    for v in fan.rays:
        numerator = rng.randint(0 if effective else -max_numerator, max_numerator)
        coefficients[v] = Fraction(numerator, rng.randint(1, max_denominator))
    return QDivisor(coefficients)


def kummer_field(p, e):
    """
    The smallest F_q, q = p^k, containing the e-th roots of unity.

    Raises:
        PreconditionError: If p divides e or no k <= MAX_EXTENSION_DEGREE works.
    """
    if e % p == 0:
        raise PreconditionError(f"p = {p} divides e = {e}")
    for k in range(1, settings.get_setting("MAX_EXTENSION_DEGREE") + 1):
        if (p**k - 1) % e == 0:
            return finite_field(p, k)
    raise PreconditionError(f"no F_{p}^k with k <= {settings.MAX_EXTENSION_DEGREE} contains μ_{e}")


def kummer_extension(p, e, function_field=True):
    """The extension K((t'))/K((t)) with K = F_q(u), or K = F_q when asked."""
    constants = kummer_field(p, e)
    K = RationalFunctionField(constants) if function_field else constants
    return KummerExtension(K, e)


def random_series(rng, L, low=-4, high=4, density=3, nonzero=False):
    """A random exact Laurent polynomial; zero is allowed unless ``nonzero``."""
    if not nonzero and rng.random() < 0.15:
        return L.zero()
    terms = {}
    for _ in range(rng.randint(1, density)):
        terms[rng.randint(low, high)] = L.field.random_element(rng)
    f = L.series(terms, exact=True)
    if nonzero and f.is_zero():
        return L.monomial(1, low)
    return f


_INTEGRAL_BOUNDS = {0: (0,), 1: (0, 1), 2: (1,)}


def random_form(rng, L, degree, low=-4, high=4, shift=None):
    """
    A random form of the given degree.

    Args:
        shift (int | None): When given, every component has valuation at
            least ``shift``, e.g. 1 for t Ω(O_L)(log).
    """
    width = 2 if degree == 1 else 1
    components = []
    for _ in range(width):
        bottom = low if shift is None else max(low, shift)
        components.append(random_series(rng, L, bottom, max(bottom, high)))
    return LogForm(degree, components)


def random_integral_form(rng, L, degree, high=4):
    """A random element of Ω^q(O_L)."""
    components = [
        random_series(rng, L, bound, max(bound, high)) for bound in _INTEGRAL_BOUNDS[degree]
    ]
    return LogForm(degree, components)


def random_witt_vector(rng, W, low=-4, high=3, density=2):
    """A random Witt vector over a Laurent series field."""
    return W([random_series(rng, W.base, low, high, density) for _ in range(W.n)])
