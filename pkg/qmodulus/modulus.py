"""
Modulus sheaves on toric modulus pairs and the invariance checks built on them.

For a pair (X, D) the two sheaves are given by their log formulas:

* MΩ^q(X, D) = Ω^q(log |D|)(ceil(D) - |D|)
* MW_n(X, D) = W_n O((ceil(D) - |D|) / p^(n-1))

Each ``verify_*`` function builds both sides of one invariance statement,
computes their character-graded cohomology exactly and returns a
VerificationReport.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import cech_h, divisorial_sheaf, log_differential_sheaf, sections_at_character
from .exceptions import PreconditionError
from .fields import RationalFunctionField, finite_field
from .laurent import LaurentField
from .logforms import LogForm, function_form, log_fil_member
from .rationals import as_rational, floor_q, format_rational
from .reports import VerificationReport
from .toric import (
    L_PRIME_RAY,
    L_RAY,
    QDivisor,
    ToricModulusPair,
    affine_line_pair,
    blowup_to_hirzebruch,
    cube_pair,
    divisor_rounding,
    fan_map,
    hirzebruch_divisor,
    pullback_qdivisor,
    standard_fan,
    star_subdivision,
)
from .utils import Subspace, dot
from .witt import WittRing, WittVector, bk_member, witt_cohomology_lengths

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HirzebruchParams:
    """
    Parameters of the pair (Delta_n, a D0 + b D_inf + c E).
    """

    n: int
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError(f"n = {self.n} is negative")
        for name in ("a", "b", "c"):
            value = as_rational(getattr(self, name))
            if value < 0:
                raise PreconditionError(f"{name} = {format_rational(value)} is negative")
            object.__setattr__(self, name, value)

    @property
    def divisor(self):
        return hirzebruch_divisor(self.n, self.a, self.b, self.c)

    def pair(self):
        return ToricModulusPair(standard_fan("delta", self.n), self.divisor)


def hirzebruch_pair(n, a, b, c):
    """The pair H^(n)(a, b, c)."""
    return HirzebruchParams(n, a, b, c).pair()


def _require_nonzero_a(a):
    if a == 0:
        raise PreconditionError("precondition a ≠ 0 fails: a = 0")
    if a < 0:
        raise PreconditionError(f"a = {format_rational(a)} is negative")


def construction_c(a, b, N):
    """c = a + b - (a + b + 1) / (N + 1)."""
    a, b = as_rational(a), as_rational(b)
    return a + b - (a + b + 1) / (N + 1)


def construction_m(a, b, N):
    """
    Split N = m + m' with m c <= N a - 1 and m' c <= N b.

    Among the valid splits the one with the largest m is returned.

    Args:
        a (Fraction): Coefficient of D0, nonzero.
        b (Fraction): Coefficient of D_inf.
        N (int): The power used by the ambient morphism.

    Returns:
        tuple[int, int]: ``(m, m')``.

    Raises:
        PreconditionError: Naming the failing inequality.

    Example:
        >>> construction_m(1, 0, 2)
        (2, 0)
    """
    a, b = as_rational(a), as_rational(b)
    _require_nonzero_a(a)
    if b < 0:
        raise PreconditionError(f"b = {format_rational(b)} is negative")
    if N < 1:
        raise PreconditionError(f"N = {N} is not positive")
    c = construction_c(a, b, N)
    if c <= 0:
        raise PreconditionError(
            f"c = a + b - (a + b + 1)/(N + 1) = {format_rational(c)} is not positive"
        )
    slack = N * a - 1
    if slack <= 0:
        raise PreconditionError(f"Na - 1 = {format_rational(slack)} is not positive")
    m = min(N, floor_q(slack / c))
    m_prime = N - m
    if m_prime * c > N * b:
        raise PreconditionError(
            f"m'c = {format_rational(m_prime * c)} exceeds Nb = {format_rational(N * b)}"
        )
    return m, m_prime


def brute_force_construction_m(a, b, N):
    """All valid splits (m, m') by direct search, largest m first."""
    a, b = as_rational(a), as_rational(b)
    c = construction_c(a, b, N)
    return [
        (m, N - m)
        for m in range(N, -1, -1)
        if m * c <= N * a - 1 and (N - m) * c <= N * b
    ]


def admissible_power(a, b, base=2, limit=64):
    """
    The least N = base^M, M >= 1, for which ``construction_m`` succeeds.

    Raises:
        PreconditionError: If a = 0 or no exponent up to ``limit`` works.
    """
    a, b = as_rational(a), as_rational(b)
    _require_nonzero_a(a)
    for M in range(1, limit + 1):
        N = base**M
        if construction_c(a, b, N) > 0 and N * a - 1 > 0 and brute_force_construction_m(a, b, N):
            return N
    raise PreconditionError(f"no admissible power of {base} up to {base}^{limit}")


@dataclass(frozen=True)
class SheafKind:
    """Which modulus sheaf a check is about: MΩ^q or MW_n."""

    name: str
    q: int = 0
    p: int = 0
    n: int = 0

    @classmethod
    def omega(cls, q):
        if q not in (0, 1, 2):
            raise PreconditionError(f"form degree q = {q} is not in 0..2")
        return cls("omega", q=q)

    @classmethod
    def witt(cls, p, n):
        return cls("witt", p=p, n=n)

    @property
    def label(self):
        if self.name == "omega":
            return f"omega({self.q})"
        return f"witt({self.p},{self.n})"

    def params(self):
        if self.name == "omega":
            return {"q": self.q}
        return {"p": self.p, "n": self.n}


def momega_sheaf(pair, q):
    """MΩ^q of a pair: Ω^q(log |D|)(ceil(D) - |D|)."""
    return log_differential_sheaf(pair.fan, q, pair.support_indices, pair.modulus.modulus_twist())


def mwitt_divisor(pair, p, n):
    """(ceil(D) - |D|) / p^(n-1)."""
    return pair.modulus.modulus_twist() / p ** (n - 1)


def mwitt_lengths(pair, p, n):
    """Cohomology lengths of MW_n of a pair."""
    return witt_cohomology_lengths(pair.fan, mwitt_divisor(pair, p, n), p, n)


@dataclass(frozen=True)
class ModulusCohomology:
    """
    Cohomology of a modulus sheaf, one H^0 region per graded slot.

    MΩ^q has a single slot; MW_n has n, slot j being O(floor(p^j D_W)).
    """

    kind: SheafKind
    regions: tuple
    h1: int
    h2: int = 0

    @property
    def higher_vanishes(self):
        return self.h1 == 0 and self.h2 == 0

    def same_h0(self, other):
        return len(self.regions) == len(other.regions) and all(
            mine.same_sections(theirs) for mine, theirs in zip(self.regions, other.regions)
        )

    def h0_summary(self):
        return [" & ".join(region.describe()) for region in self.regions]

    def to_json(self):
        return {"h0": self.h0_summary(), "h1": self.h1, "h2": self.h2}


def modulus_cohomology(pair, kind):
    """Compute the cohomology of the modulus sheaf ``kind`` on a pair."""
    if kind.name == "omega":
        report = cech_h(momega_sheaf(pair, kind.q))
        return ModulusCohomology(kind, (report.h0,), report.h1, report.h2)
    lengths = mwitt_lengths(pair, kind.p, kind.n)
    h2 = sum(slot.h2 for slot in lengths.slots)
    return ModulusCohomology(kind, lengths.regions(), lengths.h1_length, h2)


def modulus_sheaves(pair, kind):
    """The equivariant sheaves making up the modulus sheaf, one per slot."""
    if kind.name == "omega":
        return (momega_sheaf(pair, kind.q),)
    D = mwitt_divisor(pair, kind.p, kind.n)
    return tuple(divisorial_sheaf(pair.fan, D * kind.p**j) for j in range(kind.n))


@dataclass(frozen=True)
class MonomialValuation:
    """
    A monomial valuation centred on a chart: integer weights e_i >= 0 on the
    coordinates of a maximal cone, listed in increasing ray index.

    Args:
        cone (frozenset[int]): Ray indices of the chart's maximal cone.
        weights (tuple[int, ...]): One weight per ray of the cone.
    """

    cone: frozenset
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "cone", frozenset(self.cone))
        object.__setattr__(self, "weights", tuple(int(e) for e in self.weights))
        if len(self.weights) != len(self.cone):
            raise PreconditionError("one weight per chart coordinate is required")
        if any(e < 0 for e in self.weights):
            raise PreconditionError(f"weights {self.weights} are not all >= 0")
        if not any(self.weights):
            raise PreconditionError("weights are all zero")

    @property
    def rays(self):
        return tuple(sorted(self.cone))

    def check_on(self, pair):
        if self.cone not in pair.fan.cones:
            raise PreconditionError(f"{sorted(self.cone)} is not a maximal cone of the fan")
        support = pair.support_indices
        if not any(e for i, e in zip(self.rays, self.weights) if i in support):
            raise PreconditionError("the valuation does not meet the modulus support")
        return self

    def character_value(self, fan, m):
        """v(chi^m) = sum_i e_i <m, v_i>."""
        return sum(e * dot(m, fan.rays[i]) for i, e in zip(self.rays, self.weights))

    def divisor_value(self, D, fan):
        """v(D) = sum_i e_i d_i over the chart rays."""
        terms = (e * D.coefficient(fan.rays[i]) for i, e in zip(self.rays, self.weights))
        return sum(terms, Fraction(0))


def monomial_bound_inequality(weights, r):
    """
    Whether sum e_i (ceil(r_i) - 1) <= ceil(sum e_i r_i) - 1.

    Raises:
        PreconditionError: If the lengths differ, some r_i <= 0 or every
            weight vanishes.
    """
    r = [as_rational(x) for x in r]
    weights = [int(e) for e in weights]
    if len(weights) != len(r):
        raise PreconditionError(f"{len(weights)} weights for {len(r)} coefficients")
    if any(x <= 0 for x in r):
        raise PreconditionError("coefficients r_i must be positive")
    if any(e < 0 for e in weights) or not any(weights):
        raise PreconditionError("weights must be >= 0 and not all zero")
    lhs = sum(e * (math.ceil(x) - 1) for e, x in zip(weights, r))
    rhs = math.ceil(sum(e * x for e, x in zip(weights, r))) - 1
    return lhs <= rhs


@dataclass(frozen=True)
class FormSection:
    """The local section chi^m * sum_I c_I dlog x^I of MΩ^q on a chart."""

    cone: frozenset
    character: tuple
    coefficients: tuple


@dataclass(frozen=True)
class WittSection:
    """
    The local section (a_0, ..., a_{n-1}) of MW_n with a_j = s_j chi^(m_j);
    a slot with character None is zero.
    """

    cone: frozenset
    characters: tuple
    scalars: tuple


def default_residue_field(p=3):
    """The residue field F_p(u) used for pullbacks."""
    return RationalFunctionField(finite_field(p))


def _units(K, val):
    """The units u + k attached to the chart coordinates."""
    u = K.gen()
    return [u + k for k in range(len(val.rays))]


def _pull_character(L, fan, val, units, m):
    coefficient = L.field.one()
    for unit, i in zip(units, val.rays):
        coefficient = coefficient * unit ** dot(m, fan.rays[i])
    return L.monomial(coefficient, val.character_value(fan, m))


def _pull_dlog_coordinate(L, fan, val, units, j):
    """Pullback of dlog chi^(f_j) = sum_i v_i[j] (du / unit_i + e_i dlog t)."""
    du_part = L.field.zero()
    log_part = 0
    for unit, i, e in zip(units, val.rays, val.weights):
        k = fan.rays[i][j]
        du_part = du_part + unit.inverse() * k
        log_part += k * e
    return LogForm(1, (L(du_part), L(log_part)))


def pullback_form_section(section, pair, val, q, field=None):
    """The form rho^* section over L = K((t))."""
    K = field or default_residue_field()
    L = LaurentField(K)
    fan = pair.fan
    units = _units(K, val)
    f = _pull_character(L, fan, val, units, section.character)
    if q == 0:
        return function_form(f * section.coefficients[0])
    dlogs = [_pull_dlog_coordinate(L, fan, val, units, j) for j in range(fan.rank)]
    if q == 1:
        total = LogForm(1, (L.zero(), L.zero()))
        for c, form in zip(section.coefficients, dlogs):
            total = total + form.scale(c)
        return total.scale(f)
    return dlogs[0].wedge(dlogs[1]).scale(f * section.coefficients[0])


def pullback_witt_section(section, pair, val, p, n, field=None):
    """The Witt vector rho^* section over L = K((t))."""
    K = field or default_residue_field(p)
    L = LaurentField(K)
    units = _units(K, val)
    coords = []
    for m, s in zip(section.characters, section.scalars):
        if m is None:
            coords.append(L.zero())
        else:
            coords.append(_pull_character(L, pair.fan, val, units, m) * s)
    return WittVector(WittRing(L, p, n), coords)


def monomial_filtration_check(section, pair, val, kind, field=None):
    """
    Whether the pullback of a section along a monomial valuation lies in
    Fil_r with r = v(D).

    Args:
        section (FormSection | WittSection): A local section on ``val``'s chart.
        pair (ToricModulusPair): The pair.
        val (MonomialValuation): The valuation.
        kind (SheafKind): The sheaf the section belongs to.
        field: Residue field K; F_3(u) for forms and F_p(u) for Witt
            vectors by default.

    Raises:
        PreconditionError: If the section is not a section of the sheaf on
            the chart, or the valuation misses the modulus support.
        InsufficientPrecisionError: If a valuation is not determined.
    """
    val.check_on(pair)
    r = val.divisor_value(pair.modulus, pair.fan)
    if kind.name == "omega":
        sheaf = momega_sheaf(pair, kind.q)
        if any(section.coefficients):
            local = sections_at_character(sheaf, val.cone, section.character)
            vector = Subspace.span(sheaf.coefficient_rank, [section.coefficients])
            if not local.contains(vector):
                raise PreconditionError(f"{section} is not a section of MΩ^{kind.q} on the chart")
        form = pullback_form_section(section, pair, val, kind.q, field)
        return log_fil_member(form, r)
    for sheaf, m in zip(modulus_sheaves(pair, kind), section.characters):
        if m is not None and sections_at_character(sheaf, val.cone, m).is_zero():
            raise PreconditionError(f"{section} is not a section of MW_{kind.n} on the chart")
    vector = pullback_witt_section(section, pair, val, kind.p, kind.n, field)
    return bk_member(vector, r)


def _chart_characters(sheaf, cone, box):
    ranges = [range(-box, box + 1)] * sheaf.fan.rank
    found = []
    for m in itertools.product(*ranges):
        local = sections_at_character(sheaf, cone, m)
        if not local.is_zero():
            found.append((m, local))
    return found


def _primitive(combination):
    scale = math.lcm(*(Fraction(x).denominator for x in combination))
    vector = [int(x * scale) for x in combination]
    divisor = math.gcd(*vector)
    return tuple(x // divisor for x in vector)


def _integral_vector(subspace, rng, p=3):
    """
    A random primitive integer vector of a subspace, so its reduction mod p
    is nonzero. Vectors whose nonzero entries are all units mod p are
    preferred; after a few draws the first primitive one is kept.
    """
    candidate = None
    for _ in range(20):
        weights = [rng.randint(-2, 2) for _ in subspace.basis]
        combination = [
            sum((w * row[i] for w, row in zip(weights, subspace.basis)), Fraction(0))
            for i in range(subspace.ambient)
        ]
        if not any(combination):
            continue
        vector = _primitive(combination)
        if all(x % p for x in vector if x):
            return vector
        candidate = candidate or vector
    return candidate or _primitive(subspace.basis[0])


def sample_sections(pair, kind, cone, rng, count=1, box=None, characteristic=3):
    """
    Random monomial sections of a modulus sheaf on the chart of ``cone``.

    Characters are drawn from the box [-box, box]^rank, by default two
    steps wider than the largest twist. Form coefficients are primitive
    integer vectors with nonzero entries prime to ``characteristic``
    whenever the chart admits one.
    """
    sheaves = modulus_sheaves(pair, kind)
    if box is None:
        box = 2 + max((abs(n) for sheaf in sheaves for n in sheaf.twists), default=0)
    cone = frozenset(cone)
    slots = [_chart_characters(sheaf, cone, box) for sheaf in sheaves]
    sections = []
    for _ in range(count):
        if kind.name == "omega":
            if not slots[0]:
                break
            m, local = rng.choice(slots[0])
            sections.append(FormSection(cone, m, _integral_vector(local, rng, characteristic)))
            continue
        characters, scalars = [], []
        for found in slots:
            if found and rng.random() < 0.75:
                characters.append(rng.choice(found)[0])
                scalars.append(rng.randint(1, kind.p - 1))
            else:
                characters.append(None)
                scalars.append(0)
        sections.append(WittSection(cone, tuple(characters), tuple(scalars)))
    return sections


def random_valuation(pair, cone, rng, high=3):
    """Random weights in [0, high] on a chart, meeting the modulus support."""
    cone = frozenset(cone)
    rays = sorted(cone)
    support = [k for k, i in enumerate(rays) if i in pair.support_indices]
    if not support:
        raise PreconditionError(f"chart {rays} does not meet the modulus support")
    while True:
        weights = [rng.randint(0, high) for _ in rays]
        if any(weights[k] for k in support):
            return MonomialValuation(cone, tuple(weights))


def blowup_pairs(a, b):
    """
    The pair (A^2, aL + bL') and its pullback to the blow-up at the origin.

    Raises:
        PreconditionError: If a = 0 or a coefficient is negative.
    """
    a, b = as_rational(a), as_rational(b)
    _require_nonzero_a(a)
    affine = ToricModulusPair(standard_fan("affine_plane"), QDivisor({L_RAY: a, L_PRIME_RAY: b}))
    _, f = star_subdivision(affine.fan, {0, 1})
    return affine, affine.pullback(f)


def _verify_blowup(suite, a, b, kind):
    affine, blown = blowup_pairs(a, b)
    below = modulus_cohomology(affine, kind)
    above = modulus_cohomology(blown, kind)
    same = below.same_h0(above)
    passed = same and above.higher_vanishes and below.higher_vanishes
    logger.debug(
        "%s a=%s b=%s %s: same H0 %s, blow-up h1 %d", suite, a, b, kind.label, same, above.h1
    )
    return VerificationReport(
        suite=suite,
        params={"a": as_rational(a), "b": as_rational(b), **kind.params()},
        lhs=below.to_json(),
        rhs=above.to_json(),
        passed=passed,
        h0=above.h0_summary(),
        h1=above.h1,
        h2=above.h2,
    )


def verify_blowup_omega(a, b, q):
    """
    Compare MΩ^q of (A^2, aL + bL') with MΩ^q of its blow-up at the origin.

    The check passes when the H^0 regions agree and the blow-up side has no
    higher cohomology.

    Raises:
        PreconditionError: If a = 0.

    Example:
        >>> verify_blowup_omega("3/2", "1/2", 0).passed
        True
    """
    return _verify_blowup("blowup-omega", a, b, SheafKind.omega(q))


def verify_blowup_witt(a, b, p, n):
    """The Witt counterpart of ``verify_blowup_omega``, slot by slot."""
    return _verify_blowup("blowup-witt", a, b, SheafKind.witt(p, n))


def verify_hirzebruch(a, b, kind):
    """
    Vanishing of higher cohomology on Delta_1 with (a, b, a + b), and the
    chain of pullbacks reducing it to Delta_0 with (1, 0, c).

    With N = admissible_power(a, b), (m, m') = construction_m(a, b, N) and
    c = a + b - (a + b + 1)/(N + 1) the report checks:

    * H^{>0} = 0 on Delta_1 for (a, b, a + b), on Delta_N for (Na, Nb, c)
      and on Delta_0 for (1, 0, c);
    * theta_N^*(a, b, c) = (Na, Nb, c);
    * psi^*(D0 + cE) = (mc + 1) D0 + m'c D_inf + cE <= Na D0 + Nb D_inf + cE;
    * the blow-up pair is isomorphic to Delta_1 with (a, b, a + b).
    """
    a, b = as_rational(a), as_rational(b)
    _require_nonzero_a(a)
    N = admissible_power(a, b)
    m, m_prime = construction_m(a, b, N)
    c = construction_c(a, b, N)

    chain = {
        "delta_1": hirzebruch_pair(1, a, b, a + b),
        "delta_N": hirzebruch_pair(N, N * a, N * b, c),
        "delta_0": hirzebruch_pair(0, 1, 0, c),
    }
    cohomology = {name: modulus_cohomology(pair, kind) for name, pair in chain.items()}

    theta = fan_map(((N, 0), (0, 1)), standard_fan("delta", N), standard_fan("delta", 1))
    psi = fan_map(((1, 0), (m, 1)), standard_fan("delta", N), standard_fan("delta", 0))
    psi_pullback = pullback_qdivisor(psi, hirzebruch_divisor(0, 1, 0, c))
    _, blown = blowup_pairs(a, b)
    identities = {
        "theta": pullback_qdivisor(theta, hirzebruch_divisor(1, a, b, c))
        == hirzebruch_divisor(N, N * a, N * b, c),
        "psi": psi_pullback == hirzebruch_divisor(N, m * c + 1, m_prime * c, c),
        "ambient": psi_pullback <= hirzebruch_divisor(N, N * a, N * b, c),
        "blowup_iso": chain["delta_1"].isomorphic_via(blowup_to_hirzebruch(), blown),
    }
    lhs = {
        "higher": {name: [coh.h1, coh.h2] for name, coh in cohomology.items()},
        "identities": identities,
    }
    rhs = {
        "higher": {name: [0, 0] for name in chain},
        "identities": {name: True for name in identities},
    }
    return VerificationReport(
        suite="hirzebruch",
        params={"a": a, "b": b, "kind": kind.label, "N": N, "m": m, "m'": m_prime},
        lhs=lhs,
        rhs=rhs,
        passed=lhs == rhs,
        h0=cohomology["delta_1"].h0_summary(),
        h1=sum(coh.h1 for coh in cohomology.values()),
        h2=sum(coh.h2 for coh in cohomology.values()),
    )


def _vanishes_off_axis(region, values=(-2, -1, 1, 2)):
    for value in values:
        restricted = region.restrict(1, value)
        if any(restricted.dimension_at((x,)) for x in restricted.critical_points()):
            return False
    return True


def verify_cube_invariance(c, kind):
    """
    Compare a modulus sheaf on (A^1, c[0]) ⊗ (P^1, [infinity]) with the one
    on (A^1, c[0]).

    The product's H^0 must sit in P^1-character 0 with the same graded
    dimensions as the A^1 side, and neither side may have higher cohomology.
    """
    c = as_rational(c)
    base = affine_line_pair(c)
    product = base.tensor(cube_pair())
    below = modulus_cohomology(base, kind)
    above = modulus_cohomology(product, kind)
    concentrated = all(_vanishes_off_axis(region) for region in above.regions)
    profiles = all(
        region.restrict(1, 0).same_dimension_profile(slot)
        for region, slot in zip(above.regions, below.regions)
    )
    lhs = {"concentrated": concentrated, "same_profile": profiles, "h1": [below.h1, above.h1]}
    rhs = {"concentrated": True, "same_profile": True, "h1": [0, 0]}
    return VerificationReport(
        suite="cube-invariance",
        params={"c": c, **kind.params()},
        lhs=lhs,
        rhs=rhs,
        passed=lhs == rhs,
        h0=below.h0_summary(),
        h1=above.h1,
        h2=above.h2,
    )


def verify_left_continuity(pair, kind, label=None):
    """
    The modulus sheaves of (1 - e)D and D agree for 0 < e < e0, the
    threshold of ``divisor_rounding(D, "scale")``, and differ at e0 when
    e0 < 1.
    """
    stabilization = divisor_rounding(pair.modulus, "scale")
    threshold = stabilization.threshold
    sheaves = modulus_sheaves(pair, kind)
    inside = pair.scaled(1 - threshold / 2)
    stable = (
        inside.modulus.ceil() == stabilization.ceiling and modulus_sheaves(inside, kind) == sheaves
    )
    changes = None
    if threshold < 1:
        changes = modulus_sheaves(pair.scaled(1 - threshold), kind) != sheaves
    lhs = {"threshold": threshold, "stable_below": stable, "changes_at": changes}
    rhs = {
        "threshold": threshold,
        "stable_below": True,
        "changes_at": True if threshold < 1 else None,
    }
    return VerificationReport(
        suite="left-continuity",
        params={"pair": label or pair.fan.name, "D": pair.modulus.describe(), **kind.params()},
        lhs=lhs,
        rhs=rhs,
        passed=lhs == rhs,
    )
