"""
Coefficient rings: the integers, finite fields F_q (q = p^k, k <= 4) and the
rational function field F_q(u).

Every parent object exposes the same small protocol consumed by the
Laurent series, Witt vector and form code:

* ``zero()``, ``one()``
* calling the parent on an int (or a compatible element) coerces it
* ``characteristic``
* ``random_element(rng)`` for seeded sampling

Finite field arithmetic is carried out with ``sympy.polys.galoistools`` on
dense coefficient lists reduced modulo a Conway polynomial from
``settings.CONWAY_POLYNOMIALS``.
"""

import functools
import itertools
import logging

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_irreducible_p,
    gf_mul,
    gf_neg,
    gf_rem,
    gf_strip,
    gf_sub,
)

from . import settings
from .exceptions import FieldConstructionError, ParameterMismatchError, PreconditionError

logger = logging.getLogger(__name__)


class IntegerRing:
    """The ring of integers, with Python ints as elements."""

    characteristic = 0

    def zero(self):
        return 0

    def one(self):
        return 1

    def __call__(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise ParameterMismatchError(f"{x!r} is not an integer")
        return x

    def random_element(self, rng, bound=50):
        return rng.randint(-bound, bound)

    def __repr__(self):
        return "IntegerRing()"


INTEGERS = IntegerRing()


@functools.lru_cache(maxsize=None)
def finite_field(p, k=1):
    """
    Return the (cached) finite field with p^k elements.

    Args:
        p (int): A prime listed in the Conway polynomial table.
        k (int): Extension degree, 1 <= k <= ``MAX_EXTENSION_DEGREE``.

    Raises:
        FieldConstructionError: If p is not prime, k is out of range or the
            shipped modulus is missing or reducible.

    Example:
        >>> F9 = finite_field(3, 2)
        >>> F9.order
        9
    """
    return FiniteField(p, k)


class FiniteField:
    """
    The finite field F_q, q = p^k.

    Elements are polynomials in a root z of the Conway modulus, stored as
    galoistools dense lists (leading coefficient first).
    """

    def __init__(self, p, k=1):
        if not isprime(p):
            raise FieldConstructionError(f"p = {p} is not prime")
        if not 1 <= k <= settings.get_setting("MAX_EXTENSION_DEGREE"):
            raise FieldConstructionError(f"extension degree k = {k} is not in 1..4")
        modulus = settings.get_setting("CONWAY_POLYNOMIALS").get((p, k))
        if modulus is None:
            raise FieldConstructionError(f"no modulus polynomial shipped for F_{p}^{k}")
        modulus = [c % p for c in modulus]
        if len(modulus) != k + 1 or modulus[0] != 1:
            raise FieldConstructionError(f"modulus for F_{p}^{k} is not monic of degree {k}")
        if not gf_irreducible_p(modulus, p, ZZ):
            raise FieldConstructionError(f"modulus {modulus} for F_{p}^{k} is reducible")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        logger.debug("Built finite field of order %d with modulus %s", self.order, modulus)

    @property
    def characteristic(self):
        return self.p

    def is_prime_field(self):
        return self.k == 1

    def _element(self, rep):
        return FiniteFieldElement(self, rep)

    def zero(self):
        return self._element(())

    def one(self):
        return self._element((1,))

    def generator(self):
        """The class of z, a root of the modulus and a multiplicative generator."""
        return self._element(gf_rem([1, 0], self.modulus, self.p, ZZ))

    def __call__(self, x):
        if isinstance(x, FiniteFieldElement):
            if x.field == self:
                return x
            if x.field.p == self.p and x.field.k == 1:
                return self._element(x.rep)
            raise ParameterMismatchError(f"cannot coerce an element of {x.field} into {self}")
        if isinstance(x, bool) or not isinstance(x, int):
            raise ParameterMismatchError(f"cannot coerce {x!r} into {self}")
        return self._element(gf_strip([x % self.p]))

    def from_coefficients(self, coefficients):
        """Element with the given coefficients of 1, z, z^2, ... ."""
        rep = [c % self.p for c in reversed(list(coefficients))]
        return self._element(gf_rem(gf_strip(rep), self.modulus, self.p, ZZ))

    def elements(self):
        for digits in itertools.product(range(self.p), repeat=self.k):
            yield self._element(gf_strip(list(digits)))

    def random_element(self, rng, nonzero=False):
        while True:
            x = self.from_coefficients([rng.randrange(self.p) for _ in range(self.k)])
            if not (nonzero and x.is_zero()):
                return x

    def primitive_root_of_unity(self, e):
        """
        An element of exact multiplicative order e.

        Raises:
            PreconditionError: If e does not divide q - 1.
        """
        if e < 1 or (self.order - 1) % e:
            raise PreconditionError(f"e = {e} does not divide q - 1 = {self.order - 1}")
        zeta = self.generator() ** ((self.order - 1) // e)
        if zeta.multiplicative_order() == e:
            return zeta
        for x in self.elements():
            if not x.is_zero() and x.multiplicative_order() == e:
                return x
        raise FieldConstructionError(f"no element of order {e} in {self}")

    def frobenius(self, x):
        return self(x) ** self.p

    def __eq__(self, other):
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash(("FiniteField", self.p, self.k))

    def __repr__(self):
        return f"FiniteField({self.p}, {self.k})"

    def __str__(self):
        return f"GF({self.order})"


class FiniteFieldElement:
    """An element of a FiniteField. Immutable."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = tuple(int(c) for c in rep)

    def _coerce(self, other):
        if isinstance(other, FiniteFieldElement):
            if other.field == self.field:
                return other
            return self.field(other)
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field(other)
        return None

    def _new(self, rep):
        return FiniteFieldElement(self.field, rep)

    def is_zero(self):
        return not self.rep

    def __bool__(self):
        return bool(self.rep)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._new(gf_add(list(self.rep), list(other.rep), self.field.p, ZZ))

    __radd__ = __add__

    def __neg__(self):
        return self._new(gf_neg(list(self.rep), self.field.p, ZZ))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._new(gf_sub(list(self.rep), list(other.rep), self.field.p, ZZ))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = self.field
        product = gf_mul(list(self.rep), list(other.rep), f.p, ZZ)
        return self._new(gf_rem(product, f.modulus, f.p, ZZ))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in a field")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def multiplicative_order(self):
        if self.is_zero():
            raise PreconditionError("zero has no multiplicative order")
        one = self.field.one()
        x, n = self, 1
        while x != one:
            x, n = x * self, n + 1
        return n

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ParameterMismatchError:
            return False
        if other is None:
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.rep))

    def __str__(self):
        if self.field.k == 1:
            return str(self.rep[0] if self.rep else 0)
        degree = len(self.rep) - 1
        terms = []
        for i, c in enumerate(self.rep):
            if c == 0:
                continue
            power = degree - i
            if power == 0:
                terms.append(str(c))
            else:
                monomial = "z" if power == 1 else f"z^{power}"
                terms.append(monomial if c == 1 else f"{c}*{monomial}")
        return " + ".join(terms) or "0"

    def __repr__(self):
        return f"{self} in {self.field}"


class Polynomial:
    """
    A univariate polynomial over a field, coefficients stored lowest degree
    first with no trailing zeros.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = [field(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading_coefficient(self):
        return self.coeffs[-1]

    def _new(self, coeffs):
        return Polynomial(self.field, coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.zero()
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return self._new([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return self._new([])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._new(out)

    def scale(self, c):
        return self._new([c * x for x in self.coeffs])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coeffs)
        quotient = [self.field.zero()] * max(len(remainder) - len(other.coeffs) + 1, 0)
        inv = other.leading_coefficient().inverse()
        while len(remainder) >= len(other.coeffs) and remainder:
            shift = len(remainder) - len(other.coeffs)
            factor = remainder[-1] * inv
            quotient[shift] = factor
            for i, c in enumerate(other.coeffs):
                remainder[shift + i] = remainder[shift + i] - factor * c
            remainder.pop()
            while remainder and remainder[-1].is_zero():
                remainder.pop()
        return self._new(quotient), self._new(remainder)

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.leading_coefficient().inverse())

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def derivative(self):
        return self._new([c * i for i, c in enumerate(self.coeffs)][1:])

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def format(self, variable):
        terms = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            text = str(c)
            if self.field.k > 1 and " + " in text:
                text = f"({text})"
            if i == 0:
                terms.append(text)
                continue
            monomial = variable if i == 1 else f"{variable}^{i}"
            terms.append(monomial if c == 1 else f"{text}*{monomial}")
        return " + ".join(terms) or "0"


class RationalFunctionField:
    """
    The field F_q(u) of rational functions in one variable.

    Args:
        base (FiniteField): The constant field F_q.
        variable (str): Name used when printing, ``"u"`` by default.
    """

    def __init__(self, base, variable="u"):
        self.base = base
        self.variable = variable

    @property
    def characteristic(self):
        return self.base.characteristic

    def _polynomial(self, coeffs):
        return Polynomial(self.base, coeffs)

    def zero(self):
        return RationalFunction(self, self._polynomial([]), self._polynomial([1]))

    def one(self):
        return self(1)

    def gen(self):
        return RationalFunction(self, self._polynomial([0, 1]), self._polynomial([1]))

    def __call__(self, x):
        if isinstance(x, RationalFunction):
            if x.field == self:
                return x
            raise ParameterMismatchError(f"cannot coerce {x} into {self}")
        if isinstance(x, Polynomial):
            return RationalFunction(self, x, self._polynomial([1]))
        return RationalFunction(self, self._polynomial([self.base(x)]), self._polynomial([1]))

    def from_polynomials(self, numerator, denominator=(1,)):
        """Build ``numerator / denominator`` from coefficient lists, lowest degree first."""
        return RationalFunction(self, self._polynomial(numerator), self._polynomial(denominator))

    def random_element(self, rng, degree=2, nonzero=False):
        while True:
            numerator = [self.base.random_element(rng) for _ in range(rng.randint(0, degree) + 1)]
            denominator = [self.base.random_element(rng) for _ in range(rng.randint(0, degree))]
            denominator.append(self.base.one())
            x = self.from_polynomials(numerator, denominator)
            if not (nonzero and x.is_zero()):
                return x

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionField):
            return NotImplemented
        return self.base == other.base and self.variable == other.variable

    def __hash__(self):
        return hash(("RationalFunctionField", self.base, self.variable))

    def __str__(self):
        return f"{self.base}({self.variable})"

    def __repr__(self):
        return f"RationalFunctionField({self.base!r}, {self.variable!r})"


class RationalFunction:
    """
    An element of F_q(u), kept reduced with a monic denominator.
    """

    __slots__ = ("field", "numerator", "denominator")

    def __init__(self, field, numerator, denominator):
        if denominator.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if numerator.is_zero():
            denominator = Polynomial(field.base, [1])
        else:
            g = numerator.gcd(denominator)
            if g.degree > 0:
                numerator = numerator.divmod(g)[0]
                denominator = denominator.divmod(g)[0]
            lc = denominator.leading_coefficient()
            if lc != 1:
                inv = lc.inverse()
                numerator = numerator.scale(inv)
                denominator = denominator.scale(inv)
        self.field = field
        self.numerator = numerator
        self.denominator = denominator

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise ParameterMismatchError(f"{other.field} and {self.field} differ")
            return other
        if isinstance(other, (int, FiniteFieldElement)) and not isinstance(other, bool):
            return self.field(other)
        return None

    def _new(self, numerator, denominator):
        return RationalFunction(self.field, numerator, denominator)

    def is_zero(self):
        return self.numerator.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.denominator == other.denominator:
            return self._new(self.numerator + other.numerator, self.denominator)
        return self._new(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.field.zero()
        return self._new(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in a field")
        return self._new(self.denominator, self.numerator)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self):
        """Formal derivative d/du."""
        n, d = self.numerator, self.denominator
        return self._new(n.derivative() * d - n * d.derivative(), d * d)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __str__(self):
        var = self.field.variable
        top = self.numerator.format(var)
        if self.denominator.degree == 0:
            return top
        return f"({top})/({self.denominator.format(var)})"

    def __repr__(self):
        return f"{self} in {self.field}"
