"""
Lattice and linear-algebra helpers shared by the toric and cohomology code.

Two small value types live here:

* ``Subspace``: a subspace of Q^d kept as a canonical reduced row echelon
  basis, with exact rank and nullspace computations done by sympy's
  ``DomainMatrix`` over ``QQ``.
* ``HalfPlanes``: a system of integral affine inequalities
  ``<m, v> + n >= 0`` in rank 1 or 2, with exact emptiness and boundedness
  tests and lattice point enumeration inside a derived bounding box.
"""

import itertools
import logging
import math
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import PreconditionError, UnboundedRegionError

logger = logging.getLogger(__name__)


def dot(m, v):
    """Pairing <m, v> of a character with a lattice vector."""
    return sum(a * b for a, b in zip(m, v))


def det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def is_primitive(v):
    return any(v) and math.gcd(*v) == 1


def mat_vec(matrix, v):
    """Apply an integer matrix (tuple of rows) to a column vector."""
    return tuple(sum(a * b for a, b in zip(row, v)) for row in matrix)


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_det(matrix):
    if len(matrix) == 1:
        return matrix[0][0]
    if len(matrix) == 2:
        return det2(matrix[0], matrix[1])
    raise PreconditionError(f"lattice rank {len(matrix)} is not 1 or 2")


def solve_in_basis(basis, v):
    """
    Coordinates of ``v`` in the given basis of Q^d (d = 1 or 2).

    Args:
        basis: One or two lattice vectors forming a basis.
        v: The vector to express.

    Returns:
        tuple[Fraction, ...]: Coefficients ``c`` with ``sum(c_i * basis_i) = v``.
    """
    if len(basis) == 1:
        return (Fraction(v[0], basis[0][0]),)
    a, b = basis
    d = det2(a, b)
    if d == 0:
        raise PreconditionError("basis vectors are parallel")
    return (Fraction(det2(v, b), d), Fraction(det2(a, v), d))


def dual_basis(basis):
    """The characters u_i with <u_i, basis_j> = delta_ij, for a unimodular basis."""
    if len(basis) == 1:
        return ((Fraction(1, basis[0][0]),),)
    a, b = basis
    d = det2(a, b)
    # rows of the inverse of the matrix with columns a, b
    return (
        (Fraction(b[1], d), Fraction(-b[0], d)),
        (Fraction(-a[1], d), Fraction(a[0], d)),
    )


def _to_qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _domain_matrix(rows, ncols):
    return DomainMatrix([[_to_qq(x) for x in row] for row in rows], (len(rows), ncols), QQ)


def _rows_of(dm):
    matrix = dm.to_Matrix()
    return [
        tuple(Fraction(int(matrix[i, j].p), int(matrix[i, j].q)) for j in range(matrix.cols))
        for i in range(matrix.rows)
    ]


class Subspace:
    """
    A subspace of Q^ambient.

    The basis is stored in reduced row echelon form, so two subspaces are
    equal exactly when their stored bases are equal.

    Example:
        >>> line = Subspace.span(2, [(1, 1)])
        >>> line.dimension
        1
        >>> line.intersect(Subspace.kernel(2, [(1, 0)])).dimension
        0
    """

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient, basis=()):
        self.ambient = ambient
        self.basis = tuple(basis)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient):
        rows = tuple(
            tuple(Fraction(int(i == j)) for j in range(ambient)) for i in range(ambient)
        )
        return cls(ambient, rows)

    @classmethod
    def span(cls, ambient, vectors):
        vectors = [tuple(Fraction(x) for x in v) for v in vectors if any(v)]
        if not vectors or ambient == 0:
            return cls.zero(ambient)
        reduced, pivots = _domain_matrix(vectors, ambient).rref()
        return cls(ambient, _rows_of(reduced)[: len(pivots)])

    @classmethod
    def kernel(cls, ambient, constraints):
        """The common zero set of the linear forms given as rows."""
        constraints = [c for c in constraints if any(c)]
        if not constraints:
            return cls.full(ambient)
        if ambient == 0:
            return cls.zero(0)
        null = _domain_matrix(constraints, ambient).nullspace()
        return cls.span(ambient, _rows_of(null))

    @property
    def dimension(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def is_full(self):
        return len(self.basis) == self.ambient

    def annihilator(self):
        """Linear forms vanishing on this subspace."""
        if self.is_zero():
            return Subspace.full(self.ambient).basis
        if self.is_full():
            return ()
        return Subspace.kernel(self.ambient, self.basis).basis

    def intersect(self, other):
        self._check(other)
        if self.is_full() or other.is_zero():
            return other
        if other.is_full() or self.is_zero():
            return self
        return Subspace.kernel(self.ambient, self.annihilator() + other.annihilator())

    def add(self, other):
        self._check(other)
        if self.is_full() or other.is_zero():
            return self
        if other.is_full() or self.is_zero():
            return other
        return Subspace.span(self.ambient, self.basis + other.basis)

    def contains(self, other):
        """Whether ``other`` is a subspace of this one."""
        self._check(other)
        if self.is_full() or other.is_zero():
            return True
        return self.add(other).dimension == self.dimension

    def _check(self, other):
        if self.ambient != other.ambient:
            raise PreconditionError(
                f"subspaces of Q^{self.ambient} and Q^{other.ambient} are not comparable"
            )

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, basis={self.basis!r})"


class HalfPlanes:
    """
    A system of inequalities ``<m, normal> + offset >= 0`` over characters m.

    Normals and offsets are integers. Emptiness and boundedness are decided
    over the reals from the vertices of the arrangement; the bounding box
    used for enumeration is derived from those vertices.

    Args:
        rank (int): Lattice rank, 1 or 2.
        constraints (Iterable[tuple[tuple[int, ...], int]]): Pairs
            ``(normal, offset)``.
    """

    def __init__(self, rank, constraints=()):
        if rank not in (1, 2):
            raise PreconditionError(f"lattice rank {rank} is not 1 or 2")
        self.rank = rank
        self.constraints = tuple((tuple(v), int(n)) for v, n in constraints)
        self._inconsistent = any(not any(v) and n < 0 for v, n in self.constraints)
        self._active = tuple((v, n) for v, n in self.constraints if any(v))

    def contains(self, m):
        return all(dot(m, v) + n >= 0 for v, n in self.constraints)

    def extend(self, constraints):
        return HalfPlanes(self.rank, self.constraints + tuple(constraints))

    def _vertices(self):
        vertices = []
        for (v1, n1), (v2, n2) in itertools.combinations(self._active, 2):
            d = det2(v1, v2)
            if d == 0:
                continue
            # <x, v1> = -n1, <x, v2> = -n2
            x = (Fraction(-n1 * v2[1] + n2 * v1[1], d), Fraction(-v1[0] * n2 + v2[0] * n1, d))
            if all(dot(x, v) + n >= 0 for v, n in self._active):
                vertices.append(x)
        return vertices

    def _interval(self, normals):
        """Bounds along a primitive direction when all normals are parallel."""
        lo, hi = None, None
        for k, n in normals:
            if k > 0:
                bound = Fraction(-n, k)
                lo = bound if lo is None else max(lo, bound)
            else:
                bound = Fraction(-n, k)
                hi = bound if hi is None else min(hi, bound)
        return lo, hi

    def _spans_plane(self):
        normals = [v for v, _ in self._active]
        return any(det2(a, b) != 0 for a, b in itertools.combinations(normals, 2))

    def _parallel_projection(self):
        u = self._active[0][0]
        g = math.gcd(*u)
        u = tuple(x // g for x in u)
        projected = []
        for v, n in self._active:
            k = v[0] // u[0] if u[0] else v[1] // u[1]
            projected.append((k, n))
        return projected

    def is_empty(self):
        if self._inconsistent:
            return True
        if not self._active:
            return False
        if self.rank == 1:
            lo, hi = self._interval([(v[0], n) for v, n in self._active])
            if lo is None or hi is None:
                return False
            return math.ceil(lo) > math.floor(hi)
        if self._spans_plane():
            return not self._vertices()
        lo, hi = self._interval(self._parallel_projection())
        if lo is None or hi is None:
            return False
        return math.ceil(lo) > math.floor(hi)

    def is_bounded(self):
        if self.is_empty():
            return True
        if self.rank == 1:
            lo, hi = self._interval([(v[0], n) for v, n in self._active])
            return lo is not None and hi is not None
        if not self._spans_plane():
            return False
        for v, _ in self._active:
            for d in ((-v[1], v[0]), (v[1], -v[0])):
                if all(dot(d, w) >= 0 for w, _ in self._active):
                    return False
        return True

    def box(self):
        """
        Integer bounds per axis enclosing every lattice point of the region.

        Returns:
            tuple[tuple[int, int], ...] | None: ``None`` when the region is
            empty.

        Raises:
            UnboundedRegionError: If the region is infinite.
        """
        if self.is_empty():
            return None
        if not self.is_bounded():
            raise UnboundedRegionError(
                f"region {self.describe()} is unbounded; no finite enumeration exists"
            )
        if self.rank == 1:
            lo, hi = self._interval([(v[0], n) for v, n in self._active])
            return ((math.ceil(lo), math.floor(hi)),)
        vertices = self._vertices()
        return tuple(
            (math.ceil(min(x[i] for x in vertices)), math.floor(max(x[i] for x in vertices)))
            for i in range(2)
        )

    def lattice_points(self):
        box = self.box()
        if box is None:
            return []
        logger.debug("Enumerating lattice points of %s in box %s", self.describe(), box)
        ranges = [range(lo, hi + 1) for lo, hi in box]
        return [m for m in itertools.product(*ranges) if self.contains(m)]

    def describe(self):
        """Human-readable inequalities, e.g. ``["m1 >= -1", "m1 + m2 >= 0"]``."""
        return [format_inequality(v, n) for v, n in self.constraints]


def format_inequality(normal, offset):
    """Render ``<m, normal> + offset >= 0`` as ``"m1 - 2*m2 >= -3"``."""
    terms = []
    for i, k in enumerate(normal, start=1):
        if k == 0:
            continue
        coeff = "" if abs(k) == 1 else f"{abs(k)}*"
        sign = "-" if k < 0 else "+"
        terms.append((sign, f"{coeff}m{i}"))
    if not terms:
        return f"0 >= {-offset}"
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return f"{text} >= {-offset}"
