"""
Character-graded Čech cohomology of torus-equivariant sheaves.

A sheaf is given by a fan, a form degree q, an integer twist n_rho per ray
and the set S of rays along which logarithmic poles are allowed. For a
character m and a ray rho put s_rho(m) = <m, v_rho> + n_rho. A coefficient
vector c in the dlog-wedge basis of degree q gives a section chi^m * c over
a cone when, for every ray of the cone,

* s_rho >= 0, and
* if s_rho == 0 and rho is not in S, the contraction of c with v_rho
  vanishes (no pole along rho).

Divisorial sheaves O(D) are the case q = 0, where the contraction is void.

Fans with one or two maximal cones are supported. With two cones the Čech
complex in each character is V_1 + V_2 -> V_12, so H^0(m) = V_1 ∩ V_2 and
H^1(m) = V_12 / (V_1 + V_2); H^1 is supported in the finite region where
the shared rays are admissible and the two remaining rays are not.
"""

import functools
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import PreconditionError, UnboundedRegionError, UnsupportedFanShapeError
from .toric import Fan2D
from .utils import HalfPlanes, Subspace, dot, format_inequality

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def _full(ambient):
    return Subspace.full(ambient)


@functools.lru_cache(maxsize=None)
def _zero(ambient):
    return Subspace.zero(ambient)


def wedge_basis(rank, q):
    """Index sets of the dlog wedge monomials of degree q."""
    return tuple(itertools.combinations(range(rank), q))


def contraction_rows(rank, q, v):
    """
    Matrix of the contraction with v from degree q to degree q - 1 wedges,
    one row per target basis element.
    """
    source = wedge_basis(rank, q)
    target = wedge_basis(rank, q - 1)
    rows = []
    for J in target:
        row = []
        for I in source:
            entry = 0
            for k, index in enumerate(I):
                if I[:k] + I[k + 1 :] == J:
                    entry = (-1) ** k * v[index]
            row.append(entry)
        rows.append(tuple(row))
    return rows


@functools.lru_cache(maxsize=None)
def residue_subspace(rank, q, v):
    """Coefficient vectors with no pole along the ray v."""
    ambient = math.comb(rank, q)
    if q == 0:
        return _full(ambient)
    return Subspace.kernel(ambient, contraction_rows(rank, q, v))


@dataclass(frozen=True)
class RayConstraint:
    """
    The condition imposed by one ray: ``<m, normal> + offset >= 0``, and on
    the boundary ``<m, normal> + offset == 0`` the coefficients must lie in
    ``boundary``.
    """

    normal: tuple
    offset: int
    boundary: Subspace

    def value(self, m):
        return dot(m, self.normal) + self.offset

    def allowed(self, m):
        s = self.value(m)
        ambient = self.boundary.ambient
        if s < 0:
            return _zero(ambient)
        if s > 0:
            return _full(ambient)
        return self.boundary

    def is_strict(self):
        """Whether the boundary admits nothing, i.e. the condition is really s >= 1."""
        return self.boundary.is_zero()

    def describe(self):
        text = format_inequality(self.normal, self.offset)
        if self.boundary.is_full():
            return text
        if self.boundary.is_zero():
            return format_inequality(self.normal, self.offset - 1)
        return f"{text} [residue-free on equality]"


@dataclass(frozen=True)
class EquivariantSheaf:
    """
    Character-graded data of Ω^q(log S)(twists) on a fan.

    Args:
        fan (Fan2D): The fan.
        degree (int): Form degree q, 0 <= q <= 2.
        twists (tuple[int, ...]): Integer twist per ray index.
        log_rays (frozenset[int]): Ray indices carrying allowed log poles.
    """

    fan: Fan2D
    degree: int
    twists: tuple
    log_rays: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(n) for n in self.twists))
        object.__setattr__(self, "log_rays", frozenset(self.log_rays))
        if not 0 <= self.degree <= 2:
            raise PreconditionError(f"form degree q = {self.degree} is not in 0..2")
        if len(self.twists) != len(self.fan.rays):
            raise PreconditionError("one twist per ray is required")
        if not self.log_rays <= set(range(len(self.fan.rays))):
            raise PreconditionError(f"log rays {sorted(self.log_rays)} are not rays of the fan")

    @property
    def basis(self):
        return wedge_basis(self.fan.rank, self.degree)

    @property
    def coefficient_rank(self):
        return math.comb(self.fan.rank, self.degree)

    def ray_constraint(self, index):
        v = self.fan.rays[index]
        if index in self.log_rays:
            boundary = _full(self.coefficient_rank)
        else:
            boundary = residue_subspace(self.fan.rank, self.degree, v)
        return RayConstraint(v, self.twists[index], boundary)

    def region(self, rays=None):
        """The H^0 character region, optionally restricted to some rays."""
        indices = range(len(self.fan.rays)) if rays is None else sorted(rays)
        return CharacterRegion(
            self.fan.rank, self.coefficient_rank, tuple(self.ray_constraint(i) for i in indices)
        )

    def describe(self):
        twists = ", ".join(f"{list(v)}:{n}" for v, n in zip(self.fan.rays, self.twists))
        logs = sorted(self.log_rays)
        return f"q={self.degree} twists({twists}) log{logs}"


def divisorial_sheaf(fan, D):
    """The sheaf O(D) = O(floor(D)) as degree 0 equivariant data."""
    D.check_on(fan)
    twists = tuple(math.floor(D.coefficient(v)) for v in fan.rays)
    return EquivariantSheaf(fan, 0, twists)


def log_differential_sheaf(fan, q, S, E):
    """
    The sheaf Ω^q(log S)(floor(E)).

    Args:
        fan (Fan2D): The fan.
        q (int): Form degree.
        S (Iterable): Rays with allowed log poles, as indices or vectors.
        E (QDivisor): The twist divisor.
    """
    E.check_on(fan)
    log_rays = frozenset(fan.ray_index(r) if isinstance(r, tuple) else int(r) for r in S)
    twists = tuple(math.floor(E.coefficient(v)) for v in fan.rays)
    return EquivariantSheaf(fan, q, twists, log_rays)


def _cone_indices(sheaf, cone):
    cone = frozenset(cone)
    if not any(cone <= c for c in sheaf.fan.cones):
        raise PreconditionError(f"{sorted(cone)} is not a cone of the fan")
    return cone


def sections_at_character(sheaf, cone, m):
    """
    The coefficient vectors c such that chi^m * c is a section over ``cone``.

    Args:
        sheaf (EquivariantSheaf): The sheaf.
        cone (Iterable[int]): Ray indices of a cone of the fan (a maximal
            cone or a face of one; the zero cone is the empty set).
        m (tuple[int, ...]): A character.

    Returns:
        Subspace: A subspace of the coefficient space.
    """
    result = _full(sheaf.coefficient_rank)
    for index in sorted(_cone_indices(sheaf, cone)):
        result = result.intersect(sheaf.ray_constraint(index).allowed(m))
        if result.is_zero():
            break
    return result


class CharacterRegion:
    """
    The set of characters carrying sections, as a finite conjunction of ray
    conditions, with the graded dimension at each character.

    Example:
        >>> from qmodulus.toric import standard_fan
        >>> sheaf = EquivariantSheaf(standard_fan("proj_line"), 0, (2, 0))
        >>> sheaf.region().dimension()
        3
    """

    def __init__(self, rank, coefficient_rank, constraints):
        self.rank = rank
        self.coefficient_rank = coefficient_rank
        self.constraints = tuple(constraints)

    def subspace_at(self, m):
        result = _full(self.coefficient_rank)
        for constraint in self.constraints:
            result = result.intersect(constraint.allowed(m))
            if result.is_zero():
                break
        return result

    def dimension_at(self, m):
        return self.subspace_at(m).dimension

    def contains(self, m):
        return self.dimension_at(m) > 0

    def halfplanes(self):
        return HalfPlanes(self.rank, ((c.normal, c.offset) for c in self.constraints))

    def is_bounded(self):
        return self.coefficient_rank == 0 or self.halfplanes().is_bounded()

    def lattice_points(self):
        """Characters with nonzero sections; the region must be bounded."""
        if self.coefficient_rank == 0:
            return []
        return [m for m in self.halfplanes().lattice_points() if self.contains(m)]

    def dimension(self):
        """
        Total dimension of the sections.

        Raises:
            UnboundedRegionError: If the region is infinite.
        """
        if self.coefficient_rank == 0:
            return 0
        return sum(self.dimension_at(m) for m in self.halfplanes().lattice_points())

    def restrict(self, axis, value):
        """The region of characters with m[axis] == value, in the remaining coordinates."""
        if self.rank != 2:
            raise PreconditionError("only rank 2 regions can be restricted")
        constraints = []
        for c in self.constraints:
            normal = tuple(x for i, x in enumerate(c.normal) if i != axis)
            constraints.append(RayConstraint(normal, c.offset + value * c.normal[axis], c.boundary))
        return CharacterRegion(1, self.coefficient_rank, constraints)

    def covered_by(self, other):
        """
        Whether every section of this region is a section of ``other``.

        Constraints of ``other`` present verbatim here are skipped; for any
        other constraint, only characters where it is not strictly satisfied
        can fail, and those are enumerated in a bounded witness set.

        Raises:
            UnboundedRegionError: If a witness set is infinite.
        """
        base = self.halfplanes()
        for constraint in other.constraints:
            if constraint in self.constraints:
                continue
            flipped = (tuple(-x for x in constraint.normal), -constraint.offset)
            for m in base.extend([flipped]).lattice_points():
                if not constraint.allowed(m).contains(self.subspace_at(m)):
                    return False
        return True

    def same_sections(self, other):
        """
        Exact equality of the graded section spaces.

        Raises:
            PreconditionError: If lattice or coefficient ranks differ.
            UnboundedRegionError: If equality cannot be decided from finite data.
        """
        if (self.rank, self.coefficient_rank) != (other.rank, other.coefficient_rank):
            raise PreconditionError("regions live in different character or coefficient spaces")
        return self.covered_by(other) and other.covered_by(self)

    def minimized(self):
        """Drop constraints that provably cut out no sections."""
        kept = list(self.constraints)
        for constraint in self.constraints:
            others = [c for c in kept if c != constraint]
            trial = CharacterRegion(self.rank, self.coefficient_rank, others)
            try:
                redundant = trial.covered_by(
                    CharacterRegion(self.rank, self.coefficient_rank, kept)
                )
            except UnboundedRegionError:
                redundant = False
            if redundant:
                kept.remove(constraint)
        return CharacterRegion(self.rank, self.coefficient_rank, kept)

    def critical_points(self):
        """Integer test characters covering every sign pattern of a rank 1 region."""
        if self.rank != 1:
            raise PreconditionError("critical points are defined for rank 1 regions")
        points = set()
        for c in self.constraints:
            k = c.normal[0]
            if k:
                x = Fraction(-c.offset, k)
                points |= {math.floor(x) - 1, math.floor(x), math.ceil(x), math.ceil(x) + 1}
        return points or {0}

    def same_dimension_profile(self, other):
        """Whether two rank 1 regions have equal graded dimensions everywhere."""
        points = sorted(self.critical_points() | other.critical_points())
        return all(self.dimension_at((x,)) == other.dimension_at((x,)) for x in points)

    def describe(self):
        """Sorted textual conditions of the minimized region."""
        if self.coefficient_rank == 0:
            return ["empty"]
        return sorted(c.describe() for c in self.minimized().constraints)

    def summary(self):
        """JSON-ready summary: conditions plus the dimension when finite."""
        data = {"region": self.describe()}
        data["dimension"] = self.dimension() if self.is_bounded() else "infinite"
        return data


@dataclass(frozen=True)
class CohomologyReport:
    """
    Cohomology of an equivariant sheaf.

    ``h0`` is the H^0 character region; H^1 is a finite dimension with its
    supporting characters; H^i for i >= 2 vanishes on every supported fan.
    """

    h0: CharacterRegion
    h1: int
    h1_support: tuple = ()

    h2 = 0

    @property
    def h0_dimension(self):
        """Dimension of H^0, or None when infinite."""
        return self.h0.dimension() if self.h0.is_bounded() else None

    @property
    def higher_vanishes(self):
        return self.h1 == 0 and self.h2 == 0

    def to_json(self):
        h0 = self.h0_dimension
        if h0 is None:
            h0 = {"region": self.h0.describe()}
        return {
            "h": [h0, self.h1, self.h2],
            "support": [list(m) for m, _ in self.h1_support],
        }


def character_cohomology(sheaf, m):
    """
    (h^0, h^1) of the Čech complex in the single character m.

    This is the brute-force oracle behind ``cech_h``.
    """
    cones = sheaf.fan.cones
    if len(cones) > 2:
        raise UnsupportedFanShapeError(f"unsupported fan shape: {len(cones)} maximal cones")
    first = sections_at_character(sheaf, cones[0], m)
    if len(cones) == 1:
        return first.dimension, 0
    second = sections_at_character(sheaf, cones[1], m)
    overlap = sections_at_character(sheaf, cones[0] & cones[1], m)
    return first.intersect(second).dimension, overlap.dimension - first.add(second).dimension


def h1_candidates(sheaf):
    """
    Half-planes containing the H^1 support of a two-cone fan.

    Shared rays must be admissible (s >= 0) and the two remaining rays
    inadmissible: s <= -1 when the ray imposes no boundary condition, else
    s <= 0.
    """
    cones = sheaf.fan.cones
    if len(cones) != 2:
        raise UnsupportedFanShapeError(f"unsupported fan shape: {len(cones)} maximal cones")
    shared = cones[0] & cones[1]
    constraints = [(sheaf.fan.rays[i], sheaf.twists[i]) for i in sorted(shared)]
    for cone in cones:
        extra = cone - shared
        if len(extra) != 1:
            raise UnsupportedFanShapeError("unsupported fan shape: cones must differ in one ray")
        (index,) = extra
        c = sheaf.ray_constraint(index)
        bound = -1 if c.boundary.is_full() else 0
        # s <= bound  <=>  -<m, v> - n + bound >= 0
        constraints.append((tuple(-x for x in c.normal), bound - c.offset))
    return HalfPlanes(sheaf.fan.rank, constraints)


def h1_support(sheaf, box=None):
    """
    Characters with nonzero H^1 and their dimensions.

    Args:
        sheaf (EquivariantSheaf): The sheaf.
        box (int | None): If given, only characters with all coordinates in
            [-box, box] are examined, which also works for infinite supports.

    Raises:
        UnboundedRegionError: If ``box`` is None and the support is infinite.
    """
    if len(sheaf.fan.cones) == 1:
        return ()
    candidates = h1_candidates(sheaf)
    if box is None:
        points = candidates.lattice_points()
    else:
        ranges = [range(-box, box + 1)] * sheaf.fan.rank
        points = [m for m in itertools.product(*ranges) if candidates.contains(m)]
    support = []
    for m in points:
        h1 = character_cohomology(sheaf, m)[1]
        if h1:
            support.append((tuple(m), h1))
    return tuple(support)


def brute_force_h1_support(sheaf, box):
    """H^1 support found by examining every character in [-box, box]^rank."""
    ranges = [range(-box, box + 1)] * sheaf.fan.rank
    support = []
    for m in itertools.product(*ranges):
        h1 = character_cohomology(sheaf, m)[1]
        if h1:
            support.append((tuple(m), h1))
    return tuple(support)


def cech_h(sheaf):
    """
    Čech cohomology of an equivariant sheaf on a fan with at most two cones.

    Raises:
        UnsupportedFanShapeError: For three or more maximal cones.
        UnboundedRegionError: If H^1 is infinite-dimensional.
    """
    if len(sheaf.fan.cones) > 2:
        raise UnsupportedFanShapeError(
            f"unsupported fan shape: {len(sheaf.fan.cones)} maximal cones"
        )
    support = h1_support(sheaf)
    logger.debug("cech_h %s: h1 support %s", sheaf.describe(), support)
    return CohomologyReport(
        h0=sheaf.region(),
        h1=sum(d for _, d in support),
        h1_support=support,
    )
