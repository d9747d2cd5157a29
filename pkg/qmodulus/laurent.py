"""
Truncated Laurent series over the coefficient fields of ``fields.py``.

A series is a finite sorted list of nonzero terms ``(exponent, coefficient)``
together with an absolute precision A: the element is known modulo t^A.
Exact series (Laurent polynomials known to all orders) carry no bound.

Precision rules:

* ``f + g`` is known modulo t^min(A_f, A_g).
* ``f * g`` is known modulo t^min(v_f + A_g, v_g + A_f).
* ``1 / f`` keeps the relative precision A_f - v_f.
* substituting t -> c*t^e multiplies the absolute precision by e.

A series with no stored term is zero within precision; its valuation is
undetermined unless the series is exact, and every consumer of valuations
goes through ``valuation(certain=True)`` or ``valuation_at_least`` so that
filtration tests are never decided on truncation noise.
"""

import logging
import operator
from collections.abc import Mapping

from sympy import oo

from . import settings
from .exceptions import InsufficientPrecisionError, ParameterMismatchError, PreconditionError

logger = logging.getLogger(__name__)

_BY_EXPONENT = operator.itemgetter(0)


def _min_precision(*values):
    finite = [v for v in values if v is not None]
    return min(finite) if finite else None


class LaurentField:
    """
    The field L = K((t)) as a parent object.

    Args:
        field: Coefficient field K (a FiniteField or RationalFunctionField).
        variable (str): Name of the uniformizer used when printing.

    Example:
        >>> from qmodulus.fields import finite_field
        >>> L = LaurentField(finite_field(3))
        >>> t = L.gen()
        >>> str((1 + t) * (1 - t))
        '1 + 2*t^2'
    """

    def __init__(self, field, variable="t"):
        self.field = field
        self.variable = variable

    @property
    def characteristic(self):
        return self.field.characteristic

    def zero(self):
        return LaurentSeries(self.field, (), None, self.variable)

    def one(self):
        return self(1)

    def gen(self):
        return LaurentSeries(self.field, ((1, self.field.one()),), None, self.variable)

    def __call__(self, x):
        if isinstance(x, LaurentSeries):
            if x.field != self.field:
                raise ParameterMismatchError(f"series over {x.field} is not in {self}")
            return x
        return LaurentSeries(self.field, ((0, self.field(x)),), None, self.variable)

    def series(self, terms, precision=None, exact=False):
        """
        Build a series from ``{exponent: coefficient}``.

        Args:
            terms (Mapping | Iterable): Exponent/coefficient pairs.
            precision (int | None): Relative precision above the lowest given
                exponent; defaults to ``LAURENT_PRECISION``.
            exact (bool): Build an exact Laurent polynomial instead.
        """
        items = list(terms.items() if isinstance(terms, Mapping) else terms)
        if exact:
            absprec = None
        else:
            if precision is None:
                precision = settings.get_setting("LAURENT_PRECISION")
            low = min((e for e, _ in items), default=0)
            absprec = low + precision
        return LaurentSeries(self.field, items, absprec, self.variable)

    def monomial(self, coefficient, exponent):
        term = (exponent, self.field(coefficient))
        return LaurentSeries(self.field, (term,), None, self.variable)

    def zero_within(self, absprec):
        """The zero element known only modulo t^absprec."""
        return LaurentSeries(self.field, (), absprec, self.variable)

    def random_element(self, rng, low=-4, high=4, density=3, exact=True, nonzero=True):
        """A random sparse Laurent polynomial with exponents in [low, high]."""
        while True:
            count = rng.randint(1, density)
            terms = {}
            for _ in range(count):
                exponent = rng.randint(low, high)
                terms[exponent] = self.field.random_element(rng)
            f = self.series(terms, exact=exact)
            if not (nonzero and f.is_zero()):
                return f

    def __eq__(self, other):
        if not isinstance(other, LaurentField):
            return NotImplemented
        return self.field == other.field

    def __hash__(self):
        return hash(("LaurentField", self.field))

    def __str__(self):
        return f"{self.field}(({self.variable}))"

    def __repr__(self):
        return f"LaurentField({self.field!r}, {self.variable!r})"


class LaurentSeries:
    """
    An element of K((t)) known modulo t^absprec.

    Use ``LaurentField`` to build elements; the constructor expects already
    coerced coefficients.
    """

    __slots__ = ("field", "terms", "_absprec", "variable")

    def __init__(self, field, terms=(), absprec=None, variable="t"):
        acc = {}
        for exponent, coefficient in terms:
            if absprec is not None and exponent >= absprec:
                continue
            coefficient = field(coefficient)
            if exponent in acc:
                acc[exponent] = acc[exponent] + coefficient
            else:
                acc[exponent] = coefficient
        self.field = field
        self.terms = tuple(sorted(((e, c) for e, c in acc.items() if c), key=_BY_EXPONENT))
        self._absprec = absprec
        self.variable = variable

    @classmethod
    def _from_dict(cls, field, acc, absprec, variable):
        f = cls.__new__(cls)
        f.field = field
        f.terms = tuple(
            sorted(
                ((e, c) for e, c in acc.items() if c and (absprec is None or e < absprec)),
                key=_BY_EXPONENT,
            )
        )
        f._absprec = absprec
        f.variable = variable
        return f

    @property
    def absprec(self):
        """Absolute precision; ``oo`` for exact series."""
        return oo if self._absprec is None else self._absprec

    @property
    def precision(self):
        """Relative precision above the valuation offset; ``oo`` if exact."""
        if self._absprec is None:
            return oo
        return self._absprec - self._low()

    def is_exact(self):
        return self._absprec is None

    def is_zero(self):
        """Whether every known coefficient vanishes."""
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _low(self):
        """Valuation, or the absolute precision for zero within precision."""
        if self.terms:
            return self.terms[0][0]
        return self._absprec

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise ParameterMismatchError(f"series over {other.field} and {self.field} differ")
            return other
        try:
            constant = self.field(other)
        except ParameterMismatchError:
            return None
        return LaurentSeries(self.field, ((0, constant),), None, self.variable)

    def _like(self, acc, absprec):
        return LaurentSeries._from_dict(self.field, acc, absprec, self.variable)

    def valuation(self, certain=False):
        """
        Exponent of the lowest nonzero coefficient.

        Returns ``oo`` for a zero element. With ``certain=True`` a zero that
        is only known modulo t^A raises instead.

        Raises:
            InsufficientPrecisionError: "indeterminate valuation".
        """
        if self.terms:
            return self.terms[0][0]
        if certain and self._absprec is not None:
            raise InsufficientPrecisionError(
                f"indeterminate valuation: all slots below t^{self._absprec} vanish"
            )
        return oo

    def valuation_at_least(self, k):
        """
        Decide ``v(f) >= k``, raising when the known slots do not decide it.
        """
        if self.terms:
            return self.terms[0][0] >= k
        if self._absprec is None or self._absprec >= k:
            return True
        raise InsufficientPrecisionError(
            f"insufficient precision: zero known modulo t^{self._absprec}, cannot confirm v >= {k}"
        )

    def leading_coefficient(self):
        if not self.terms:
            raise InsufficientPrecisionError("insufficient precision: leading term not determined")
        return self.terms[0][1]

    def coefficient(self, k):
        if self._absprec is not None and k >= self._absprec:
            raise InsufficientPrecisionError(
                f"insufficient precision: coefficient of t^{k} is beyond t^{self._absprec}"
            )
        for exponent, c in self.terms:
            if exponent == k:
                return c
        return self.field.zero()

    def truncate(self, absprec):
        return self._like(dict(self.terms), _min_precision(self._absprec, absprec))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc[e] + c if e in acc else c
        return self._like(acc, _min_precision(self._absprec, other._absprec))

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms}, self._absprec)

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
        vf, vg = self._low(), other._low()
        bounds = []
        if other._absprec is not None and vf is not None:
            bounds.append(vf + other._absprec)
        if self._absprec is not None and vg is not None:
            bounds.append(vg + self._absprec)
        absprec = min(bounds) if bounds else None
        if not self.terms or not other.terms:
            return self._like({}, absprec)
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if absprec is not None and e >= absprec:
                    break
                product = c1 * c2
                acc[e] = acc[e] + product if e in acc else product
        return self._like(acc, absprec)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a coefficient-field element or an integer."""
        c = self.field(c)
        return self._like({e: c * a for e, a in self.terms}, self._absprec)

    def invert(self):
        """
        Multiplicative inverse, keeping the relative precision.

        Raises:
            InsufficientPrecisionError: If the leading term is not determined.
            ZeroDivisionError: For the exact zero.
        """
        if not self.terms:
            if self._absprec is None:
                raise ZeroDivisionError("the zero series has no inverse")
            raise InsufficientPrecisionError(
                "insufficient precision: cannot invert an undetermined lead"
            )
        v, a0 = self.terms[0]
        b0 = a0.inverse() if hasattr(a0, "inverse") else self.field.one() / a0
        if len(self.terms) == 1 and self._absprec is None:
            return self._like({-v: b0}, None)
        if self._absprec is None:
            relative = settings.get_setting("LAURENT_PRECISION")
        else:
            relative = self._absprec - v
        tail = [(e - v, c) for e, c in self.terms[1:] if e - v < relative]
        b = [b0]
        for k in range(1, relative):
            acc = self.field.zero()
            for j, a in tail:
                if j > k:
                    break
                acc = acc + a * b[k - j]
            b.append(-(b0 * acc))
        return self._like({k - v: c for k, c in enumerate(b)}, relative - v)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.invert()

    def __pow__(self, n):
        if n < 0:
            return self.invert() ** (-n)
        result = self._like({0: self.field.one()}, None)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute(self, e, c=None):
        """
        The series f(c * t^e); with c omitted this is the inclusion of L into
        a totally ramified extension with t = t'^e.
        """
        if e < 1:
            raise PreconditionError(f"substitution exponent e = {e} is not >= 1")
        if c is None:
            acc = {e * k: a for k, a in self.terms}
        else:
            c = self.field(c)
            acc = {e * k: a * c**k for k, a in self.terms}
        absprec = None if self._absprec is None else e * self._absprec
        return self._like(acc, absprec)

    def galois_conjugate(self, zeta):
        """The series f(zeta * t)."""
        return self.substitute(1, zeta)

    def descend(self, e):
        """
        Inverse of ``substitute(e)``: rewrite a series in t' = t^(1/e) whose
        exponents are all multiples of e as a series in t.
        """
        for k, _ in self.terms:
            if k % e:
                raise PreconditionError(f"exponent {k} is not divisible by e = {e}")
        absprec = None if self._absprec is None else -((-self._absprec) // e)
        return self._like({k // e: a for k, a in self.terms}, absprec)

    def renamed(self, variable):
        """The same series printed in another uniformizer."""
        return LaurentSeries._from_dict(self.field, dict(self.terms), self._absprec, variable)

    def derivative_t(self):
        """The log derivative t * df/dt."""
        return self._like({k: a * k for k, a in self.terms}, self._absprec)

    def derivative_coefficients(self):
        """Apply d/du to every coefficient; constants differentiate to zero."""
        acc = {}
        for k, a in self.terms:
            derivative = getattr(a, "derivative", None)
            if derivative is not None:
                acc[k] = derivative()
        return self._like(acc, self._absprec)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ParameterMismatchError:
            return False
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        parts = []
        for k, c in self.terms:
            text = str(c)
            if k == 0:
                parts.append(text)
                continue
            if " + " in text or "/" in text:
                text = f"({text})"
            monomial = self.variable if k == 1 else f"{self.variable}^{k}"
            parts.append(monomial if c == 1 else f"{text}*{monomial}")
        if self._absprec is not None:
            parts.append(f"O({self.variable}^{self._absprec})")
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"LaurentSeries({self})"


def laurent_valuation(f, certain=False):
    """Valuation of a Laurent series; see ``LaurentSeries.valuation``."""
    return f.valuation(certain=certain)
