"""
Truncated p-typical Witt vectors.

Addition, multiplication and negation evaluate universal integer
polynomials S_i, P_i, N_i, built once per (p, n) by the ghost recursion

    w_k(a) = sum_{j <= k} p^j a_j^(p^(k-j))
    S_k = (w_k(X) + w_k(Y) - sum_{j < k} p^j S_j^(p^(k-j))) / p^k

with sympy sparse polynomials over ZZ; every division is checked to be
exact so a remainder can never be silently dropped.

Over Z and finite fields the same operations are computed through integral
ghost components by ``GhostArithmetic``.

Over Laurent series fields the module also provides the Brylinski-Kato
filtration, tame Kummer traces, and the length of Witt divisorial sheaf
cohomology on toric fans.
"""

import functools
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.rings import ring

from . import settings
from .cohomology import cech_h, divisorial_sheaf
from .exceptions import (
    NonExactDivisionError,
    ParameterMismatchError,
    PreconditionError,
    UnsupportedExtensionError,
)
from .fields import FiniteField, FiniteFieldElement, IntegerRing, finite_field
from .laurent import LaurentField
from .rationals import as_rational, ceil_q

logger = logging.getLogger(__name__)


def _check_parameters(p, n):
    if not isprime(p):
        raise PreconditionError(f"p = {p} is not prime")
    if not 1 <= n <= settings.get_setting("MAX_WITT_LENGTH"):
        raise PreconditionError(f"Witt length n = {n} is not in 1..{settings.MAX_WITT_LENGTH}")


def _exact_divide(poly, divisor):
    if any(c % divisor for c in poly.itercoeffs()):
        message = f"non-exact division by {divisor} in the Witt recursion"
        raise NonExactDivisionError(message)
    return poly.quo_ground(divisor)


class WittUniversalPolys:
    """
    Universal sum, product and negation polynomials for W_n, built lazily.

    Args:
        p (int): The prime.
        n (int): Truncation length, 1 <= n <= ``MAX_WITT_LENGTH``.

    Example:
        >>> polys = witt_universal_polys(2, 2)
        >>> polys.sums[1] == polys.xs[1] + polys.ys[1] - polys.xs[0] * polys.ys[0]
        True
    """

    def __init__(self, p, n):
        _check_parameters(p, n)
        self.p = p
        self.n = n
        names = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
        self.ring, *generators = ring(",".join(names), ZZ)
        self.xs = tuple(generators[:n])
        self.ys = tuple(generators[n:])
        self._terms = {}

    def ghost(self, coords, k):
        """The ghost component w_k of a tuple of polynomials."""
        p = self.p
        return sum((p**j * coords[j] ** (p ** (k - j)) for j in range(k + 1)), self.ring.zero)

    def _solve(self, targets, family_name):
        p = self.p
        family = []
        for k in range(self.n):
            partial = sum(
                (p**j * family[j] ** (p ** (k - j)) for j in range(k)), self.ring.zero
            )
            family.append(_exact_divide(targets[k] - partial, p**k))
            if self.ghost(family, k) != targets[k]:
                raise NonExactDivisionError(f"ghost identity fails for {family_name}_{k}")
        logger.debug(
            "Built %s polynomials for p=%d n=%d with %s terms",
            family_name,
            self.p,
            self.n,
            [len(f.terms()) for f in family],
        )
        return tuple(family)

    @functools.cached_property
    def sums(self):
        return self._solve(
            [self.ghost(self.xs, k) + self.ghost(self.ys, k) for k in range(self.n)], "S"
        )

    @functools.cached_property
    def products(self):
        return self._solve(
            [self.ghost(self.xs, k) * self.ghost(self.ys, k) for k in range(self.n)], "P"
        )

    @functools.cached_property
    def negations(self):
        return self._solve([-self.ghost(self.xs, k) for k in range(self.n)], "N")

    def terms(self, family, k, characteristic=0):
        """
        Terms ``(coefficient, exponents)`` of a polynomial, with coefficients
        reduced modulo the characteristic of the ring it will be evaluated in.
        """
        key = (family, k, characteristic)
        if key not in self._terms:
            poly = getattr(self, family)[k]
            terms = []
            for monom, coeff in poly.terms():
                coeff = int(coeff)
                if characteristic:
                    coeff %= characteristic
                if coeff:
                    terms.append((coeff, monom))
            self._terms[key] = tuple(terms)
        return self._terms[key]


@functools.lru_cache(maxsize=None)
def witt_universal_polys(p, n):
    """Shared, lazily filled universal polynomial table for (p, n)."""
    return WittUniversalPolys(p, n)


class IntegralLift:
    """Z as a lift of itself, or of a prime field F_p by residues 0..p-1."""

    zero = 0

    def __init__(self, base):
        self.base = base

    def lift(self, x):
        if isinstance(x, FiniteFieldElement):
            return x.rep[0] if x.rep else 0
        return x

    def reduce(self, x):
        return self.base(int(x))

    def multiply(self, x, y):
        return x * y

    def power(self, x, e):
        return x**e

    def divide(self, x, d):
        if x % d:
            raise NonExactDivisionError(f"non-exact division by {d} in the ghost inversion")
        return x // d


class UnramifiedLift(IntegralLift):
    """
    F_q = F_p[z]/(f) lifted to Z[z]/(f~), where f~ is f with its
    coefficients read as integers 0..p-1. f~ is monic, so reduction
    modulo f~ stays integral.
    """

    def __init__(self, base):
        self.base = base
        self.ring, _ = ring("z", ZZ)
        self.modulus = self.ring.from_list(list(base.modulus))
        self.zero = self.ring.zero

    def lift(self, x):
        return self.ring.from_list(list(x.rep))

    def reduce(self, x):
        return self.base.from_coefficients(reversed(x.to_dense()))

    def multiply(self, x, y):
        return (x * y) % self.modulus

    def power(self, x, e):
        result = self.ring.one
        while e:
            if e & 1:
                result = self.multiply(result, x)
            x = self.multiply(x, x)
            e >>= 1
        return result

    def divide(self, x, d):
        return _exact_divide(x, d)


def integral_lift(base):
    """The p-torsion free lift used for ghost arithmetic over ``base``, or None."""
    if isinstance(base, IntegerRing):
        return IntegralLift(base)
    if isinstance(base, FiniteField):
        return IntegralLift(base) if base.is_prime_field() else UnramifiedLift(base)
    return None


class GhostArithmetic:
    """
    Witt vector sums, products and negatives through ghost components.

    Coordinates are lifted to a p-torsion free ring A, where the ghost map
    W_n(A) -> A^n is injective. The operation is applied to the ghost
    vectors componentwise and inverted with the ghost recursion; reducing
    the coordinates of the result is the ring map W_n(A) -> W_n(base).

    Args:
        lift: An ``IntegralLift`` or ``UnramifiedLift``.
        p (int): The prime.
    """

    def __init__(self, lift, p):
        self.lift = lift
        self.p = p

    def _ghosts(self, values):
        A, p = self.lift, self.p
        return [
            sum((p**j * A.power(values[j], p ** (k - j)) for j in range(k + 1)), A.zero)
            for k in range(len(values))
        ]

    def _from_ghosts(self, ghosts):
        A, p = self.lift, self.p
        coords = []
        for k, w in enumerate(ghosts):
            rest = w - sum((p**j * A.power(coords[j], p ** (k - j)) for j in range(k)), A.zero)
            coords.append(A.divide(rest, p**k))
        return coords

    def combine(self, family, xs, ys=()):
        """Coordinates of x + y, x * y or -x, by universal polynomial family name."""
        A = self.lift
        gx = self._ghosts([A.lift(c) for c in xs])
        if family == "negations":
            ghosts = [-w for w in gx]
        else:
            gy = self._ghosts([A.lift(c) for c in ys])
            if family == "sums":
                ghosts = [u + w for u, w in zip(gx, gy)]
            else:
                ghosts = [A.multiply(u, w) for u, w in zip(gx, gy)]
        return tuple(A.reduce(c) for c in self._from_ghosts(ghosts))


class WittRing:
    """
    The ring W_n(R) of p-typical Witt vectors of length n over a base ring.

    Args:
        base: A parent from ``fields`` or ``laurent`` (``zero``, ``one``,
            ``characteristic``, element coercion).
        p (int): The prime.
        n (int): Length.
        arithmetic (str | None): ``"ghost"`` or ``"polynomial"``. Defaults to
            ghost arithmetic over Z and finite fields and to the universal
            polynomials everywhere else.

    Raises:
        ParameterMismatchError: If the base has characteristic other than 0 or p.
        PreconditionError: If ghost arithmetic is requested over a base
            without an integral lift.
    """

    def __init__(self, base, p, n, arithmetic=None):
        _check_parameters(p, n)
        if base.characteristic not in (0, p):
            raise ParameterMismatchError(
                f"base ring of characteristic {base.characteristic} does not match p = {p}"
            )
        lift = integral_lift(base)
        if arithmetic is None:
            arithmetic = "polynomial" if lift is None else "ghost"
        if arithmetic not in ("ghost", "polynomial"):
            raise PreconditionError(f"unknown Witt arithmetic '{arithmetic}'")
        if arithmetic == "ghost" and lift is None:
            raise PreconditionError(f"{base!r} has no integral lift for ghost arithmetic")
        self.base = base
        self.p = p
        self.n = n
        self.arithmetic = arithmetic
        self.ghost = GhostArithmetic(lift, p) if arithmetic == "ghost" else None
        self.polys = witt_universal_polys(p, n)

    def __call__(self, coords):
        if isinstance(coords, WittVector):
            if coords.ring != self:
                raise ParameterMismatchError("Witt vector belongs to another ring")
            return coords
        coords = tuple(self.base(c) for c in coords)
        if len(coords) != self.n:
            raise ParameterMismatchError(f"expected {self.n} coordinates, got {len(coords)}")
        return WittVector(self, coords)

    def zero(self):
        return WittVector(self, (self.base.zero(),) * self.n)

    def one(self):
        return self.teichmuller(self.base.one())

    def teichmuller(self, a):
        """The Teichmüller lift [a] = (a, 0, ..., 0)."""
        return WittVector(self, (self.base(a),) + (self.base.zero(),) * (self.n - 1))

    def from_integer(self, k):
        """The image of the integer k."""
        return self.one().scale(k)

    def scalar(self, k, a):
        """k * a by repeated Witt addition."""
        return self(a).scale(k)

    def cardinality(self):
        order = getattr(self.base, "order", None)
        if order is None:
            raise PreconditionError(f"{self.base} is not finite")
        return order**self.n

    def elements(self):
        elements = list(self.base.elements())
        for coords in itertools.product(elements, repeat=self.n):
            yield WittVector(self, coords)

    def random_element(self, rng, **kwargs):
        coords = tuple(self.base.random_element(rng, **kwargs) for _ in range(self.n))
        return WittVector(self, coords)

    def truncation(self):
        if self.n == 1:
            raise PreconditionError("cannot truncate Witt vectors of length 1")
        return WittRing(self.base, self.p, self.n - 1, self.arithmetic)

    def combine(self, family, xs, ys=()):
        """
        Coordinates of x + y, x * y or -x for the family ``"sums"``,
        ``"products"`` or ``"negations"``.
        """
        if self.ghost is not None:
            return self.ghost.combine(family, xs, ys)
        return tuple(self._evaluate(family, k, xs, ys) for k in range(self.n))

    def _evaluate(self, family, k, xs, ys=()):
        characteristic = self.base.characteristic
        values = tuple(xs) + tuple(ys)
        powers = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = values[i] if e == 1 else values[i] ** e
            return powers[key]

        total = self.base.zero()
        for coeff, monom in self.polys.terms(family, k, characteristic):
            term = None
            for i, e in enumerate(monom):
                if e:
                    factor = power(i, e)
                    term = factor if term is None else term * factor
            term = self.base(coeff) if term is None else term * coeff
            total = total + term
        return total

    def __eq__(self, other):
        if not isinstance(other, WittRing):
            return NotImplemented
        return (self.base, self.p, self.n) == (other.base, other.p, other.n)

    def __hash__(self):
        return hash((self.base, self.p, self.n))

    def __repr__(self):
        return f"WittRing({self.base!r}, p={self.p}, n={self.n})"


class WittVector:
    """
    A Witt vector (a_0, ..., a_{n-1}). Immutable.

    Example:
        >>> from qmodulus.fields import finite_field
        >>> W = WittRing(finite_field(2), 2, 2)
        >>> str(W.one() + W.one())
        '(0, 1)'
    """

    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = tuple(coords)

    def _check(self, other):
        if not isinstance(other, WittVector):
            return None
        if other.ring != self.ring:
            raise ParameterMismatchError(
                f"Witt vectors from {self.ring!r} and {other.ring!r} do not combine"
            )
        return other

    def _binary(self, family, other):
        return WittVector(self.ring, self.ring.combine(family, self.coords, other.coords))

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self._binary("sums", other)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self._binary("products", other)

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __neg__(self):
        return WittVector(self.ring, self.ring.combine("negations", self.coords))

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def scale(self, k):
        """k * a by double-and-add with Witt addition."""
        if k < 0:
            return (-self).scale(-k)
        result = self.ring.zero()
        base = self
        while k:
            if k & 1:
                result = result + base
            base = base + base
            k >>= 1
        return result

    def verschiebung(self):
        """V(a) = (0, a_0, ..., a_{n-2})."""
        return WittVector(self.ring, (self.ring.base.zero(),) + self.coords[:-1])

    def frobenius(self):
        """
        Coordinate-wise p-th power; only defined in characteristic p.

        Raises:
            ParameterMismatchError: Over rings of characteristic 0, where
                ``ghost_frobenius`` is the right tool.
        """
        W = self.ring
        if W.base.characteristic != W.p:
            raise ParameterMismatchError(
                "coordinate-wise Frobenius needs a base of characteristic p"
            )
        return WittVector(W, tuple(c**W.p for c in self.coords))

    def truncate(self):
        """Drop the last coordinate: W_n -> W_{n-1}."""
        return WittVector(self.ring.truncation(), self.coords[:-1])

    def ghost_components(self):
        p = self.ring.p
        return tuple(
            sum(
                (self.coords[j] ** (p ** (k - j)) * p**j for j in range(k + 1)),
                self.ring.base.zero(),
            )
            for k in range(self.ring.n)
        )

    def is_zero(self):
        return all(not c for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return self.ring == other.ring and all(
            a == b for a, b in zip(self.coords, other.coords)
        )

    __hash__ = None

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"WittVector{self}"


def ghost_components(coords, p):
    """Ghost components of an integral Witt vector given as a tuple of ints."""
    return tuple(
        sum(p**j * coords[j] ** (p ** (k - j)) for j in range(k + 1)) for k in range(len(coords))
    )


def from_ghost(ghosts, p):
    """
    Invert the ghost map over the integers.

    Raises:
        NonExactDivisionError: If the ghost vector is not the image of an
            integral Witt vector.
    """
    coords = []
    for k, w in enumerate(ghosts):
        rest = w - sum(p**j * coords[j] ** (p ** (k - j)) for j in range(k))
        if rest % p**k:
            raise NonExactDivisionError(f"ghost component {k} is not divisible by {p**k}")
        coords.append(rest // p**k)
    return tuple(coords)


def ghost_add(x, y, p):
    return from_ghost([a + b for a, b in zip(ghost_components(x, p), ghost_components(y, p))], p)


def ghost_multiply(x, y, p):
    return from_ghost([a * b for a, b in zip(ghost_components(x, p), ghost_components(y, p))], p)


def ghost_negate(x, p):
    return from_ghost([-a for a in ghost_components(x, p)], p)


def ghost_frobenius(x, p):
    """Frobenius W_n(Z) -> W_{n-1}(Z), defined by shifting ghost components."""
    return from_ghost(ghost_components(x, p)[1:], p)


@dataclass(frozen=True)
class FiltrationQuery:
    """A filtration level r >= 0."""

    level: Fraction

    def __post_init__(self):
        level = as_rational(self.level)
        if level < 0:
            raise PreconditionError(f"filtration level r = {level} is negative")
        object.__setattr__(self, "level", level)

    @property
    def ceiling(self):
        return ceil_q(self.level)


def _laurent_coordinates(a):
    if not isinstance(a.ring.base, LaurentField):
        raise ParameterMismatchError("the filtration is defined on Witt vectors over K((t))")
    return a.coords


def bk_member(a, r):
    """
    Membership of a in the Brylinski-Kato filtration Fil_r W_n(L).

    For r = 0 every coordinate must be integral; for r > 0 the condition is
    p^(n-1) v(a_i) + p^i (ceil(r) - 1) >= 0 for every i.

    Raises:
        InsufficientPrecisionError: If a valuation is not determined.
    """
    r = FiltrationQuery(r).level
    coords = _laurent_coordinates(a)
    p, n = a.ring.p, a.ring.n
    if r == 0:
        return all(c.valuation_at_least(0) for c in coords)
    ell = ceil_q(r)
    for i, c in enumerate(coords):
        # v(a_i) >= -p^i (ceil(r) - 1) / p^(n-1), rounded up
        threshold = -((p**i * (ell - 1)) // p ** (n - 1))
        if not c.valuation_at_least(threshold):
            return False
    return True


def bk_min_ceil(a):
    """
    The least l >= 0 such that a lies in Fil_r for every r with ceil(r) = l;
    l = 0 means a is integral.
    """
    coords = _laurent_coordinates(a)
    p, n = a.ring.p, a.ring.n
    ell = 0
    for i, c in enumerate(coords):
        if c.valuation_at_least(0):
            continue
        v = c.valuation(certain=True)
        ell = max(ell, 1 - p ** (n - 1 - i) * v)
    return ell


def witt_kummer_trace(a, ext):
    """
    Trace of a Witt vector over L' = K((t')) down to L = K((t)), t = t'^e.

    The trace is the Witt sum of the Galois conjugates t' -> zeta^j t',
    rewritten in t.

    Raises:
        UnsupportedExtensionError: If the extension is not tame.
    """
    if ext.p != a.ring.p:
        raise ParameterMismatchError(
            f"extension of characteristic {ext.p} does not match p = {a.ring.p}"
        )
    if ext.e % a.ring.p == 0:
        raise UnsupportedExtensionError(
            f"wild or non-Kummer extension unsupported: p = {a.ring.p} divides e = {ext.e}"
        )
    coords = _laurent_coordinates(a)
    W = a.ring
    total = W.zero()
    for zeta in ext.conjugates():
        total = total + WittVector(W, tuple(c.galois_conjugate(zeta) for c in coords))
    base = WittRing(ext.base, W.p, W.n)
    descended = tuple(c.descend(ext.e).renamed(ext.base.variable) for c in total.coords)
    return WittVector(base, descended)


def witt_pullback_extension(a, ext):
    """Coordinate-wise inclusion W_n(L) -> W_n(L')."""
    W = WittRing(ext.extension, a.ring.p, a.ring.n)
    return WittVector(W, tuple(ext.include(c) for c in _laurent_coordinates(a)))


def witt_h0_slot_regions(fan, D, p, n):
    """H^0 regions of O(floor(p^j D)) for j = 0, ..., n - 1."""
    _check_parameters(p, n)
    return tuple(divisorial_sheaf(fan, D * p**j).region() for j in range(n))


@dataclass(frozen=True)
class WittCohomology:
    """
    Cohomology lengths of W_n O(D): slot j is the cohomology of O(floor(p^j D)).
    """

    p: int
    n: int
    slots: tuple

    @property
    def h0_length(self):
        lengths = [slot.h0_dimension for slot in self.slots]
        return None if None in lengths else sum(lengths)

    @property
    def h1_length(self):
        return sum(slot.h1 for slot in self.slots)

    @property
    def higher_vanishes(self):
        return all(slot.higher_vanishes for slot in self.slots)

    def regions(self):
        return tuple(slot.h0 for slot in self.slots)

    def to_json(self):
        return {
            "h0_length": self.h0_length if self.h0_length is not None else "infinite",
            "h1_length": self.h1_length,
            "slots": [slot.to_json() for slot in self.slots],
        }


def witt_cohomology_lengths(fan, D, p, n):
    """
    Lengths of H^i(W_n O(D)) as sums of the graded pieces O(floor(p^j D)).

    Sections of W_n O(D) are coordinate-wise, a_j a section of
    O(floor(p^j D)), so restriction W_n -> W_{n-1} is onto on every Čech
    group and the lengths add up over the slots.
    """
    _check_parameters(p, n)
    slots = tuple(cech_h(divisorial_sheaf(fan, D * p**j)) for j in range(n))
    return WittCohomology(p, n, slots)


def count_witt_sections(fan, D, p, n, field=None):
    """
    Enumerate H^0(W_n O(D)) on a rank 1 fan with finite H^0 by brute force.

    Sections are Witt vectors over F_p[x, 1/x] whose j-th coordinate is a
    Laurent polynomial with exponents in the H^0 region of O(floor(p^j D)).

    Returns:
        tuple[int, bool]: The number of sections and whether the set is
        closed under Witt addition.
    """
    if fan.rank != 1:
        raise PreconditionError("brute-force Witt section counts need a rank 1 fan")
    field = field or finite_field(p)
    L = LaurentField(field, "x")
    regions = witt_h0_slot_regions(fan, D, p, n)
    monomials = [[m[0] for m in region.lattice_points()] for region in regions]
    scalars = list(field.elements())

    def slot_values(exponents):
        for coeffs in itertools.product(scalars, repeat=len(exponents)):
            yield L.series(dict(zip(exponents, coeffs)), exact=True)

    W = WittRing(L, p, n)
    slots = [list(slot_values(e)) for e in monomials]
    sections = [W(coords) for coords in itertools.product(*slots)]

    def admissible(vector):
        for c, allowed in zip(vector.coords, monomials):
            if any(k not in allowed for k, _ in c.terms):
                return False
        return True

    closed = all(admissible(x + y) for x in sections for y in sections)
    return len(sections), closed
