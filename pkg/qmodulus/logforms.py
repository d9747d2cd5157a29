"""
Differential forms over L = K((t)) with K = F_q(u), in the basis du, dlog t.

A form of degree 0 is a single series f, of degree 1 a pair (f_u, f_l)
meaning f_u du + f_l dlog t, and of degree 2 a single series h meaning
h du ∧ dlog t. Since dt = t dlog t, integrality is a shifted valuation test
on the dlog t slot:

* Ω^q(O_L): v(f) >= 0 (q = 0); v(f_u) >= 0 and v(f_l) >= 1 (q = 1);
  v(h) >= 1 (q = 2).
* Ω^q(O_L)(log): every component has v >= 0.

The logarithmic filtration Fil_r is Ω^q(O_L) for r = 0 and
t^(1 - ceil(r)) Ω^q(O_L)(log) for r > 0.
"""

import logging

from .exceptions import (
    DegreeOverflowError,
    ParameterMismatchError,
    PreconditionError,
    UnsupportedExtensionError,
)
from .fields import RationalFunctionField
from .laurent import LaurentField, LaurentSeries
from .rationals import ceil_q
from .witt import FiltrationQuery

logger = logging.getLogger(__name__)

_WIDTH = {0: 1, 1: 2, 2: 1}


class LogForm:
    """
    A differential form of degree 0, 1 or 2 over a Laurent series field.

    Args:
        degree (int): 0, 1 or 2.
        components (Iterable[LaurentSeries]): One component for degrees 0
            and 2, two for degree 1.

    Example:
        >>> from qmodulus.fields import finite_field, RationalFunctionField
        >>> L = LaurentField(RationalFunctionField(finite_field(3)))
        >>> str(du_form(L).wedge(dlog_t_form(L)))
        '(1)·du∧dlog t'
    """

    __slots__ = ("degree", "components")

    def __init__(self, degree, components):
        if degree not in _WIDTH:
            raise DegreeOverflowError(f"degree overflow: forms of degree {degree} are not modelled")
        components = tuple(components)
        if len(components) != _WIDTH[degree]:
            raise PreconditionError(
                f"a form of degree {degree} has {_WIDTH[degree]} components, got {len(components)}"
            )
        fields = {c.field for c in components}
        if len(fields) != 1:
            raise ParameterMismatchError("form components live over different fields")
        self.degree = degree
        self.components = components

    @property
    def field(self):
        return self.components[0].field

    @property
    def variable(self):
        return self.components[0].variable

    def _check(self, other):
        if not isinstance(other, LogForm):
            return None
        if other.degree != self.degree:
            raise ParameterMismatchError(
                f"cannot add forms of degrees {self.degree} and {other.degree}"
            )
        return other

    def _like(self, components):
        return LogForm(self.degree, components)

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self._like(a + b for a, b in zip(self.components, other.components))

    def __neg__(self):
        return self._like(-a for a in self.components)

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def scale(self, f):
        """Multiply by a function (a series, coefficient or integer)."""
        return self._like(a * f for a in self.components)

    def wedge(self, other):
        """
        The exterior product.

        Raises:
            DegreeOverflowError: If the degrees add up to more than 2.
        """
        total = self.degree + other.degree
        if total > 2:
            raise DegreeOverflowError(f"degree overflow: {self.degree} + {other.degree} > 2")
        if self.degree == 0:
            return other.scale(self.components[0])
        if other.degree == 0:
            return self.scale(other.components[0])
        (a, b), (c, d) = self.components, other.components
        # (a du + b dlog t) ∧ (c du + d dlog t) = (ad - bc) du ∧ dlog t
        return LogForm(2, (a * d - b * c,))

    def d(self):
        """
        Exterior derivative, with d(f) = (∂f/∂u) du + (t ∂f/∂t) dlog t.

        Raises:
            DegreeOverflowError: On 2-forms.
        """
        if self.degree == 0:
            (f,) = self.components
            return LogForm(1, (f.derivative_coefficients(), f.derivative_t()))
        if self.degree == 1:
            f_u, f_l = self.components
            return LogForm(2, (f_l.derivative_coefficients() - f_u.derivative_t(),))
        raise DegreeOverflowError("degree overflow: d of a 2-form has degree 3")

    def _thresholds(self):
        """Per-component valuation bounds defining Ω^q(O_L)."""
        return {0: (0,), 1: (0, 1), 2: (1,)}[self.degree]

    def in_integral(self):
        """Membership in Ω^q(O_L)."""
        return all(c.valuation_at_least(k) for c, k in zip(self.components, self._thresholds()))

    def in_log_integral(self, shift=0):
        """Membership in t^shift Ω^q(O_L)(log)."""
        return all(c.valuation_at_least(shift) for c in self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, LogForm):
            return NotImplemented
        return self.degree == other.degree and all(
            a == b for a, b in zip(self.components, other.components)
        )

    __hash__ = None

    def __str__(self):
        var = self.variable
        if self.degree == 0:
            return str(self.components[0])
        if self.degree == 1:
            f_u, f_l = self.components
            return f"({f_u})·du + ({f_l})·dlog {var}"
        return f"({self.components[0]})·du∧dlog {var}"

    def __repr__(self):
        return f"LogForm({self.degree}, {self})"


def function_form(f):
    """The 0-form f."""
    return LogForm(0, (f,))


def du_form(L):
    return LogForm(1, (L.one(), L.zero()))


def dlog_t_form(L):
    return LogForm(1, (L.zero(), L.one()))


def dlog(g):
    """
    The 1-form dg / g of a nonzero function.

    Raises:
        PreconditionError: If g is zero.
        InsufficientPrecisionError: If the leading term of g is undetermined.
    """
    if isinstance(g, LogForm):
        if g.degree != 0:
            raise PreconditionError("dlog is taken of functions")
        (g,) = g.components
    if g.is_zero() and g.is_exact():
        raise PreconditionError("dlog of zero is undefined")
    inverse = g.invert()
    return LogForm(1, (g.derivative_coefficients() * inverse, g.derivative_t() * inverse))


def log_fil_member(omega, r):
    """
    Membership of omega in Fil_r.

    Raises:
        PreconditionError: If r < 0.
        InsufficientPrecisionError: If a valuation is not determined.
    """
    r = FiltrationQuery(r).level
    if r == 0:
        return omega.in_integral()
    return omega.in_log_integral(1 - ceil_q(r))


def log_fil_min_ceil(omega):
    """
    The least l >= 0 such that omega lies in Fil_r whenever ceil(r) = l.
    """
    if omega.in_integral():
        return 0
    ell = 1
    for c in omega.components:
        if not c.valuation_at_least(0):
            ell = max(ell, 1 - c.valuation(certain=True))
    return ell


def omega_max_check(omega):
    """
    Compare ``omega ∈ t Ω^q(O_L)(log)`` with ``omega ∧ dlog t ∈ Ω^(q+1)(O_L)``.

    Returns:
        tuple[bool, bool]: ``(lhs, rhs)``; the two always agree.

    Raises:
        PreconditionError: If omega is not in Ω^q(O_L).
    """
    if not omega.in_integral():
        raise PreconditionError(f"{omega} is not in Ω^{omega.degree}(O_L)")
    lhs = omega.in_log_integral(1)
    if omega.degree == 2:
        # Ω^3 vanishes, so the wedge is zero.
        return lhs, True
    L = LaurentField(omega.field, omega.variable)
    rhs = omega.wedge(dlog_t_form(L)).in_integral()
    return lhs, rhs


class KummerExtension:
    """
    The tame totally ramified extension L' = K((t')) of L = K((t)), t = t'^e.

    Args:
        residue_field: K, a FiniteField or a RationalFunctionField over F_q.
        e (int): Ramification index.

    Raises:
        UnsupportedExtensionError: If p divides e or e does not divide q - 1,
            so the extension is wild or not Kummer over F_q.
    """

    def __init__(self, residue_field, e):
        constants = residue_field
        if isinstance(residue_field, RationalFunctionField):
            constants = residue_field.base
        p, q = constants.characteristic, constants.order
        if e < 1:
            raise PreconditionError(f"ramification index e = {e} is not positive")
        if e % p == 0:
            raise UnsupportedExtensionError(
                f"wild or non-Kummer extension unsupported: p = {p} divides e = {e}"
            )
        if (q - 1) % e:
            raise UnsupportedExtensionError(
                f"wild or non-Kummer extension unsupported: e = {e} does not divide q - 1 = {q - 1}"
            )
        self.e = e
        self.residue_field = residue_field
        self.constants = constants
        self.zeta = residue_field(constants.primitive_root_of_unity(e))
        self.base = LaurentField(residue_field, "t")
        self.extension = LaurentField(residue_field, "t'")

    @property
    def p(self):
        return self.constants.characteristic

    def conjugates(self):
        """zeta^j for j = 0, ..., e - 1."""
        return [self.zeta**j for j in range(self.e)]

    def include(self, f):
        """L -> L', t -> t'^e."""
        return f.substitute(self.e).renamed(self.extension.variable)

    def field_trace(self, g):
        """
        Tr_{L'/L}: keeps the exponents divisible by e, multiplied by e.
        """
        e = self.e
        kept = [(k // e, a * e) for k, a in g.terms if k % e == 0]
        absprec = None if g.is_exact() else -((-g.absprec) // e)
        return LaurentSeries(g.field, kept, absprec, self.base.variable)

    def galois_trace(self, g):
        """Tr_{L'/L} as the sum of the conjugates f(zeta^j t')."""
        total = self.extension.zero()
        for zeta in self.conjugates():
            total = total + g.galois_conjugate(zeta)
        return total.descend(self.e).renamed(self.base.variable)

    def __repr__(self):
        return f"KummerExtension({self.residue_field}, e={self.e})"


def _divide_by_e(f, ext):
    return f.scale(pow(ext.e, -1, ext.p))


def _to_base_basis(omega, ext):
    """Components in du, dlog t, using dlog t' = (1/e) dlog t."""
    if omega.degree == 0:
        return omega.components
    if omega.degree == 1:
        f_u, f_l = omega.components
        return f_u, _divide_by_e(f_l, ext)
    return (_divide_by_e(omega.components[0], ext),)


def form_kummer_trace(omega, ext):
    """
    Trace of a form over L' down to L, coefficient-wise with the field trace.

    Example:
        For e = 2, Tr(t' dt') = Tr(t'^2 dlog t') = dt, i.e. components (0, t).
    """
    components = tuple(ext.field_trace(c) for c in _to_base_basis(omega, ext))
    return LogForm(omega.degree, components)


def galois_form_trace(omega, ext):
    """The same trace computed as a sum of Galois conjugates."""
    components = tuple(ext.galois_trace(c) for c in _to_base_basis(omega, ext))
    return LogForm(omega.degree, components)


def pullback_extension(omega, ext):
    """Inclusion Ω^q(L) -> Ω^q(L'), with dlog t = e dlog t'."""
    components = [ext.include(c) for c in omega.components]
    if omega.degree == 1:
        components[1] = components[1] * ext.e
    elif omega.degree == 2:
        components[0] = components[0] * ext.e
    return LogForm(omega.degree, components)
