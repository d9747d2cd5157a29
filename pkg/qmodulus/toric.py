"""
Smooth fans in rank 1 and 2, torus-invariant Q-divisors and fan maps.

Convention: the ray with primitive generator v corresponds to the boundary
divisor along which a character m has order <m, v>. On the affine plane the
ray (1, 0) is the line L and the ray (0, 1) the line L'.

Divisors are keyed by ray vectors rather than ray indices, so a divisor can
be compared across fans that share rays (a fan and its star subdivision).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .exceptions import (
    ImageOutsideSupportError,
    IncompatibleFanMapError,
    InvalidFanError,
    NotMaximalSmoothConeError,
    PreconditionError,
)
from .rationals import as_rational, ceil_q, ceiling_threshold, floor_q, format_rational
from .utils import det2, is_primitive, mat_det, mat_mul, mat_vec, solve_in_basis

logger = logging.getLogger(__name__)

# Named rays of the affine plane, its blow-up and the fans Delta_n.
L_RAY = (1, 0)
L_PRIME_RAY = (0, 1)
EXCEPTIONAL_RAY = (1, 1)
D0_RAY = (1, 0)
E_RAY = (0, 1)

FAN_KINDS = ("affine_plane", "affine_line", "proj_line", "delta", "blowup_affine_plane")


def d_infinity_ray(n):
    """The ray (-1, n) of Delta_n."""
    return (-1, n)


@dataclass(frozen=True)
class Fan2D:
    """
    A smooth fan in a lattice of rank 1 or 2.

    Only full-dimensional maximal cones are stored; lower faces are implied.

    Args:
        rank (int): Lattice rank, 1 or 2.
        rays (tuple): Primitive integer ray generators.
        cones (tuple): Maximal cones as sets of ray indices (pairs in rank 2,
            singletons in rank 1).
        name (str): Label used in reports.

    Raises:
        InvalidFanError: If any smooth-fan invariant fails.

    Example:
        >>> fan = standard_fan("delta", 1)
        >>> fan.rays
        ((1, 0), (0, 1), (-1, 1))
    """

    rank: int
    rays: tuple
    cones: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in v) for v in self.rays))
        object.__setattr__(self, "cones", tuple(frozenset(c) for c in self.cones))
        self._validate()

    def _validate(self):
        if self.rank not in (1, 2):
            raise InvalidFanError(f"lattice rank {self.rank} is not 1 or 2")
        for v in self.rays:
            if len(v) != self.rank:
                raise InvalidFanError(f"ray {v} does not live in a rank {self.rank} lattice")
            if not is_primitive(v):
                raise InvalidFanError(f"ray {v} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise InvalidFanError("duplicate rays")
        if len(set(self.cones)) != len(self.cones):
            raise InvalidFanError("duplicate cones")
        used = set()
        for cone in self.cones:
            if len(cone) != self.rank or not cone <= set(range(len(self.rays))):
                raise InvalidFanError(
                    f"cone {sorted(cone)} is not a maximal cone of rank {self.rank}"
                )
            if self.rank == 2:
                a, b = self.cone_rays(cone)
                if abs(det2(a, b)) != 1:
                    raise InvalidFanError(f"cone {sorted(cone)} is not smooth")
            used |= cone
        if used != set(range(len(self.rays))):
            raise InvalidFanError("every ray must lie in some maximal cone")
        for i, first in enumerate(self.cones):
            for second in self.cones[i + 1 :]:
                self._check_faces(first, second)

    def _check_faces(self, first, second):
        shared = first & second
        for cone, other in ((first, second), (second, first)):
            for index in other - shared:
                if self._in_cone(cone, self.rays[index]):
                    raise InvalidFanError(
                        f"cones {sorted(first)} and {sorted(second)} do not meet in a common face"
                    )

    def cone_rays(self, cone):
        """Ray vectors of a cone, in index order."""
        return tuple(self.rays[i] for i in sorted(cone))

    def _in_cone(self, cone, v):
        coords = solve_in_basis(self.cone_rays(cone), v)
        return all(c >= 0 for c in coords)

    def cone_containing(self, v):
        """Index of the first maximal cone containing v, or None."""
        for j, cone in enumerate(self.cones):
            if self._in_cone(cone, v):
                return j
        return None

    def ray_index(self, v):
        try:
            return self.rays.index(tuple(v))
        except ValueError:
            raise PreconditionError(f"{tuple(v)} is not a ray of the fan {self.name or self.rays}")

    def shared_face(self, i, j):
        return self.cones[i] & self.cones[j]

    def same_as(self, other):
        """Equality up to the order of rays and cones."""
        if self.rank != other.rank or set(self.rays) != set(other.rays):
            return False
        mine = {frozenset(self.cone_rays(c)) for c in self.cones}
        theirs = {frozenset(other.cone_rays(c)) for c in other.cones}
        return mine == theirs

    def to_dict(self):
        return {
            "name": self.name,
            "rank": self.rank,
            "rays": [list(v) for v in self.rays],
            "cones": [sorted(c) for c in self.cones],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            rank=data["rank"],
            rays=tuple(tuple(v) for v in data["rays"]),
            cones=tuple(frozenset(c) for c in data["cones"]),
            name=data.get("name", ""),
        )


def standard_fan(kind, n=None):
    """
    Build one of the fans used by the verification suites.

    Args:
        kind (str): One of ``affine_plane``, ``affine_line``, ``proj_line``,
            ``delta`` (needs n >= 0) and ``blowup_affine_plane``.
        n (int | None): The twist of Delta_n.
    """
    if kind == "affine_plane":
        return Fan2D(2, (L_RAY, L_PRIME_RAY), ({0, 1},), name="A2")
    if kind == "affine_line":
        return Fan2D(1, ((1,),), ({0},), name="A1")
    if kind == "proj_line":
        return Fan2D(1, ((1,), (-1,)), ({0}, {1}), name="P1")
    if kind == "delta":
        if n is None or n < 0:
            raise PreconditionError(f"delta(n) needs n >= 0, got {n}")
        return Fan2D(2, (D0_RAY, E_RAY, d_infinity_ray(n)), ({0, 1}, {1, 2}), name=f"Delta_{n}")
    if kind == "blowup_affine_plane":
        return Fan2D(2, (L_RAY, EXCEPTIONAL_RAY, L_PRIME_RAY), ({0, 1}, {1, 2}), name="Bl_0 A2")
    raise PreconditionError(f"unknown fan kind '{kind}'; expected one of {', '.join(FAN_KINDS)}")


def _normalize_coefficients(coefficients):
    items = coefficients.items() if hasattr(coefficients, "items") else coefficients
    acc = {}
    for v, d in items:
        v = tuple(int(x) for x in v)
        acc[v] = acc.get(v, Fraction(0)) + as_rational(d)
    return tuple(sorted((v, d) for v, d in acc.items() if d != 0))


@dataclass(frozen=True)
class QDivisor:
    """
    A torus-invariant Q-divisor: rational coefficients on ray vectors.

    Absent rays have coefficient 0; zero coefficients are never stored.

    Example:
        >>> D = QDivisor({L_RAY: "3/2", L_PRIME_RAY: "1/2"})
        >>> D.modulus_twist().coefficient(L_RAY)
        Fraction(1, 1)
    """

    coefficients: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _normalize_coefficients(self.coefficients))

    @classmethod
    def from_indices(cls, fan, coefficients):
        """Build from ``{ray index: coefficient}`` on the given fan."""
        return cls({fan.rays[i]: d for i, d in coefficients.items()})

    def as_dict(self):
        return dict(self.coefficients)

    def coefficient(self, v):
        return self.as_dict().get(tuple(v), Fraction(0))

    @property
    def support(self):
        return frozenset(v for v, _ in self.coefficients)

    @property
    def is_effective(self):
        return all(d >= 0 for _, d in self.coefficients)

    def _map(self, fn):
        return QDivisor({v: fn(d) for v, d in self.coefficients})

    def __add__(self, other):
        acc = self.as_dict()
        for v, d in other.coefficients:
            acc[v] = acc.get(v, Fraction(0)) + d
        return QDivisor(acc)

    def __neg__(self):
        return self._map(lambda d: -d)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, factor):
        factor = as_rational(factor)
        return self._map(lambda d: d * factor)

    __rmul__ = __mul__

    def __truediv__(self, factor):
        return self * (1 / as_rational(factor))

    def __le__(self, other):
        rays = self.support | other.support
        return all(self.coefficient(v) <= other.coefficient(v) for v in rays)

    def __ge__(self, other):
        return other <= self

    def ceil(self):
        return self._map(lambda d: Fraction(ceil_q(d)))

    def floor(self):
        return self._map(lambda d: Fraction(floor_q(d)))

    def reduced(self):
        """The support |D| as a reduced divisor."""
        return self._map(lambda d: Fraction(1))

    def modulus_twist(self):
        """The divisor ceil(D) - |D|."""
        return self.ceil() - self.reduced()

    def scale_threshold(self):
        """Largest epsilon0 with ceil((1 - e)D) = ceil(D) for all 0 < e < epsilon0."""
        thresholds = [ceiling_threshold(d) for _, d in self.coefficients if d > 0]
        return min(thresholds, default=Fraction(1))

    def check_on(self, fan):
        missing = [v for v in self.support if v not in fan.rays]
        if missing:
            raise PreconditionError(
                f"divisor rays {missing} are not rays of {fan.name or fan.rays}"
            )
        return self

    def to_dict(self, fan):
        """Coefficients as ``"p/q"`` strings keyed by ray index of ``fan``."""
        self.check_on(fan)
        return {str(fan.ray_index(v)): format_rational(d) for v, d in self.coefficients}

    @classmethod
    def from_dict(cls, fan, data):
        return cls({fan.rays[int(i)]: d for i, d in data.items()})

    def describe(self):
        if not self.coefficients:
            return "0"
        return " + ".join(f"{format_rational(d)}*{list(v)}" for v, d in self.coefficients)


class ScaleStabilization(NamedTuple):
    threshold: Fraction
    ceiling: QDivisor


ROUNDING_VARIANTS = ("ceil", "floor", "support", "modulus_twist", "scale")


def divisor_rounding(D, variant):
    """
    Coefficient-wise rounding of a Q-divisor.

    Args:
        D (QDivisor): The divisor.
        variant (str): ``ceil``, ``floor``, ``support``, ``modulus_twist`` or
            ``scale``.

    Returns:
        QDivisor, or for ``scale`` a ScaleStabilization ``(threshold,
        ceiling)`` such that ceil((1 - e)D) equals ``ceiling`` for every
        0 < e < threshold.
    """
    if variant == "ceil":
        return D.ceil()
    if variant == "floor":
        return D.floor()
    if variant == "support":
        return D.reduced()
    if variant == "modulus_twist":
        return D.modulus_twist()
    if variant == "scale":
        return ScaleStabilization(D.scale_threshold(), D.ceil())
    raise PreconditionError(f"unknown rounding variant '{variant}'")


def hirzebruch_divisor(n, a, b, c):
    """The divisor a*D0 + b*D_inf + c*E on Delta_n."""
    return QDivisor({D0_RAY: a, d_infinity_ray(n): b, E_RAY: c})


@dataclass(frozen=True)
class FanMap:
    """
    A morphism of fans given by an integer matrix acting on column vectors.

    Construction verifies that the image of every source cone lies in a
    single target cone.

    Raises:
        IncompatibleFanMapError: Names the first violating source cone.
    """

    matrix: tuple
    source: Fan2D
    target: Fan2D

    def __post_init__(self):
        matrix = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", matrix)
        rank = self.source.rank
        if self.target.rank != rank or len(matrix) != rank or any(len(r) != rank for r in matrix):
            raise PreconditionError(f"matrix {matrix} is not a square map of rank {rank}")
        if mat_det(matrix) == 0:
            raise PreconditionError(f"matrix {matrix} is singular")
        for cone in self.source.cones:
            images = [self.apply(v) for v in self.source.cone_rays(cone)]
            if not any(
                all(self.target._in_cone(target_cone, w) for w in images)
                for target_cone in self.target.cones
            ):
                rays = [list(v) for v in self.source.cone_rays(cone)]
                raise IncompatibleFanMapError(
                    f"incompatible fan map: cone {rays} maps into no single target cone",
                    cone=cone,
                )

    def apply(self, v):
        return mat_vec(self.matrix, v)

    def compose(self, other):
        """The map ``self`` after ``other``."""
        if not other.target.same_as(self.source):
            raise PreconditionError("fan maps are not composable")
        return FanMap(mat_mul(self.matrix, other.matrix), other.source, self.target)

    def is_isomorphism(self):
        if abs(mat_det(self.matrix)) != 1:
            return False
        images = {
            frozenset(self.apply(v) for v in self.source.cone_rays(c)) for c in self.source.cones
        }
        targets = {frozenset(self.target.cone_rays(c)) for c in self.target.cones}
        return images == targets

    def pullback(self, D):
        """See ``pullback_qdivisor``."""
        return pullback_qdivisor(self, D)


def fan_map(matrix, source, target):
    """Build a FanMap after checking cone compatibility."""
    return FanMap(tuple(tuple(r) for r in matrix), source, target)


def pullback_qdivisor(f, D):
    """
    Pull a Q-divisor back along a fan map.

    The coefficient on a source ray v' is psi_D(A v'), where psi_D is the
    cone-wise linear function taking the value d_rho on each target ray.

    Raises:
        ImageOutsideSupportError: If A v' lies in no target cone.
    """
    D.check_on(f.target)
    coefficients = {}
    for v in f.source.rays:
        w = f.apply(v)
        j = f.target.cone_containing(w)
        if j is None:
            raise ImageOutsideSupportError(
                f"image outside fan support: {list(v)} maps to {list(w)}"
            )
        basis = f.target.cone_rays(f.target.cones[j])
        lam = solve_in_basis(basis, w)
        coefficients[v] = sum((c * D.coefficient(r) for c, r in zip(lam, basis)), Fraction(0))
    return QDivisor(coefficients)


def star_subdivision(fan, cone):
    """
    Subdivide a smooth maximal 2-dimensional cone at the sum of its rays.

    Args:
        fan (Fan2D): A rank 2 fan.
        cone: The two ray indices of a maximal cone.

    Returns:
        tuple[Fan2D, FanMap]: The subdivided fan and the identity map from
        it to ``fan``.

    Raises:
        NotMaximalSmoothConeError: If ``cone`` is not a maximal cone.
    """
    cone = frozenset(cone)
    if fan.rank != 2 or len(cone) != 2 or cone not in fan.cones:
        raise NotMaximalSmoothConeError(f"not a maximal smooth cone: {sorted(cone)}")
    i, j = sorted(cone)
    a, b = fan.rays[i], fan.rays[j]
    new_index = len(fan.rays)
    rays = fan.rays + ((a[0] + b[0], a[1] + b[1]),)
    cones = tuple(c for c in fan.cones if c != cone) + ({i, new_index}, {new_index, j})
    subdivided = Fan2D(2, rays, cones, name=f"{fan.name}*" if fan.name else "")
    logger.debug("Star subdivision of %s at %s adds ray %s", fan.name, sorted(cone), rays[-1])
    return subdivided, fan_map(((1, 0), (0, 1)), subdivided, fan)


def product_fan(first, second):
    """The product of two rank 1 fans; rays of ``first`` become (r, 0)."""
    if first.rank != 1 or second.rank != 1:
        raise PreconditionError("product fans are built from two rank 1 fans")
    rays = tuple((r[0], 0) for r in first.rays) + tuple((0, r[0]) for r in second.rays)
    offset = len(first.rays)
    cones = tuple(
        {i, offset + j} for c1 in first.cones for i in c1 for c2 in second.cones for j in c2
    )
    name = f"{first.name}x{second.name}" if first.name and second.name else ""
    return Fan2D(2, rays, cones, name=name)


@dataclass(frozen=True)
class ToricModulusPair:
    """
    A smooth fan with an effective Q-divisor on its rays.

    Raises:
        PreconditionError: If the divisor is not effective or uses rays
            outside the fan.
    """

    fan: Fan2D
    modulus: QDivisor

    def __post_init__(self):
        self.modulus.check_on(self.fan)
        if not self.modulus.is_effective:
            raise PreconditionError(f"modulus {self.modulus.describe()} is not effective")

    @property
    def support_indices(self):
        return frozenset(self.fan.ray_index(v) for v in self.modulus.support)

    def tensor(self, other):
        """The pair (X x Y, pr1*D_X + pr2*D_Y) of two rank 1 pairs."""
        fan = product_fan(self.fan, other.fan)
        coefficients = {(v[0], 0): d for v, d in self.modulus.coefficients}
        coefficients.update({(0, v[0]): d for v, d in other.modulus.coefficients})
        return ToricModulusPair(fan, QDivisor(coefficients))

    def pullback(self, f):
        if not f.target.same_as(self.fan):
            raise PreconditionError("fan map does not land on this pair's fan")
        return ToricModulusPair(f.source, f.pullback(self.modulus))

    def scaled(self, factor):
        return ToricModulusPair(self.fan, self.modulus * factor)

    def isomorphic_via(self, f, other):
        """Whether the isomorphism ``f: other.fan -> self.fan`` carries D to D'."""
        return f.is_isomorphism() and f.pullback(self.modulus) == other.modulus

    def to_dict(self):
        return {"fan": self.fan.to_dict(), "modulus": self.modulus.to_dict(self.fan)}

    @classmethod
    def from_dict(cls, data):
        fan = Fan2D.from_dict(data["fan"])
        return cls(fan, QDivisor.from_dict(fan, data["modulus"]))


def cube_pair():
    """The cube (P^1, [infinity]); infinity is the ray (-1,)."""
    fan = standard_fan("proj_line")
    return ToricModulusPair(fan, QDivisor({(-1,): 1}))


def affine_line_pair(c):
    """The pair (A^1, c[0])."""
    return ToricModulusPair(standard_fan("affine_line"), QDivisor({(1,): c}))


def blowup_to_hirzebruch():
    """
    The lattice isomorphism from the blown-up plane to Delta_1.

    It sends the strict transforms of L and L' to D0 and D_inf and the
    exceptional ray to E.
    """
    return fan_map(((1, -1), (0, 1)), standard_fan("blowup_affine_plane"), standard_fan("delta", 1))
