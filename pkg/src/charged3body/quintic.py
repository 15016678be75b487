"""Reduced quintic for collinear central configurations.

The collinear problem reduces to a single coordinate u on the circle
R u {inf}; the intervals I1 = (-inf, -1), I2 = (-1, 0), I3 = (0, inf)
correspond to the three orderings of the bodies on a line, and the values
{-1, 0, inf} are double collisions.  For couplings alpha and masses m the
central configurations on the reduced space are the zeros of

    f(u) = a1*f1(u) + a2*f2(u) + a3*f3(u)

with the basis polynomials below.  Root counting and multiplicity detection
are exact (see polyroots), so region boundaries are decided, never guessed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import polyroots as pr
from .errors import AllZeroError, DegenerateAtCollisionError, OnDiscriminantError

Number = int | float | Fraction


def _rat(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class MassTriple:
    m1: Number
    m2: Number
    m3: Number

    def __post_init__(self):
        if not all(_rat(v) > 0 for v in (self.m1, self.m2, self.m3)):
            raise ValueError("masses must be strictly positive")

    @property
    def total(self) -> float:
        return float(self.m1) + float(self.m2) + float(self.m3)

    def as_tuple(self) -> tuple[float, float, float]:
        return (float(self.m1), float(self.m2), float(self.m3))

    def rational(self) -> tuple[Fraction, Fraction, Fraction]:
        return (_rat(self.m1), _rat(self.m2), _rat(self.m3))


@dataclass(frozen=True)
class CouplingTriple:
    """Potential coefficients (a1, a2, a3); a_i couples the pair not naming i,
    so a1 acts between bodies 2 and 3, a2 between 1 and 3, a3 between 1 and 2.
    Mixed signs are allowed; the all-zero triple is rejected."""

    a1: Number
    a2: Number
    a3: Number

    def __post_init__(self):
        if all(_rat(v) == 0 for v in (self.a1, self.a2, self.a3)):
            raise AllZeroError("all three couplings are zero")

    @classmethod
    def gravitational(cls, m: MassTriple) -> "CouplingTriple":
        m1, m2, m3 = m.rational()
        return cls(m2 * m3, m1 * m3, m1 * m2)

    @classmethod
    def from_beta(cls, b1: Number, b2: Number) -> "CouplingTriple":
        return cls(_rat(b1), _rat(b2), Fraction(1))

    def as_tuple(self) -> tuple[float, float, float]:
        return (float(self.a1), float(self.a2), float(self.a3))

    def rational(self) -> tuple[Fraction, Fraction, Fraction]:
        return (_rat(self.a1), _rat(self.a2), _rat(self.a3))

    def pairwise(self) -> dict[tuple[int, int], float]:
        """Couplings keyed by 0-based body pairs."""
        return {
            (1, 2): float(self.a1),
            (0, 2): float(self.a2),
            (0, 1): float(self.a3),
        }


class IntervalId(enum.Enum):
    I1 = "I1"
    I2 = "I2"
    I3 = "I3"

    @staticmethod
    def of(u) -> "IntervalId | None":
        """Interval containing u, or None for the collision values -1, 0, inf."""
        if u == -1 or u == 0 or (isinstance(u, float) and math.isinf(u)):
            return None
        if u < -1:
            return IntervalId.I1
        if u < 0:
            return IntervalId.I2
        return IntervalId.I3


# fault-injection switch used only by the verification suite's mutation test;
# flips the sign of the u^3 coefficient of f2
_FAULT_FLIP_F2 = False


@dataclass(frozen=True)
class ReducedQuintic:
    """Degree <= 5 polynomial in u, exact rational coefficients ascending."""

    coeffs: tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]

    @classmethod
    def from_coeffs(cls, coeffs) -> "ReducedQuintic":
        cs = [_rat(c) for c in coeffs]
        if len(cs) > 6:
            raise ValueError("degree must be at most 5")
        cs += [Fraction(0)] * (6 - len(cs))
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return pr.degree(list(self.coeffs))

    def __call__(self, u):
        return pr.evaluate(self.coeffs, u)

    def derivative_coeffs(self) -> list[Fraction]:
        return [k * c for k, c in enumerate(self.coeffs)][1:]

    def scale_to_int(self) -> list[int]:
        return pr.clear_denominators(list(self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def basis_polynomials(m: MassTriple) -> tuple[ReducedQuintic, ReducedQuintic, ReducedQuintic]:
    """The three coupling-independent pieces of the reduced equation:

        f1(u) = m1 u^2 (1+u)^2 (m2 + m2 u + m3 u)
        f2(u) = -m2 (1+u)^2 (m1 + m3 + m1 u)
        f3(u) = -m3 u^2 (m2 - m1 u)
    """
    m1, m2, m3 = m.rational()
    f1 = [
        Fraction(0),
        Fraction(0),
        m1 * m2,
        m1 * (3 * m2 + m3),
        m1 * (3 * m2 + 2 * m3),
        m1 * (m2 + m3),
    ]
    f2 = [
        -m2 * (m1 + m3),
        -m2 * (3 * m1 + 2 * m3),
        -m2 * (3 * m1 + m3),
        -m1 * m2,
        Fraction(0),
        Fraction(0),
    ]
    if _FAULT_FLIP_F2:
        f2[3] = -f2[3]
    f3 = [Fraction(0), Fraction(0), -m2 * m3, m1 * m3, Fraction(0), Fraction(0)]
    return (
        ReducedQuintic(tuple(f1)),
        ReducedQuintic(tuple(f2)),
        ReducedQuintic(tuple(f3)),
    )


def build_quintic(alpha: CouplingTriple, m: MassTriple) -> ReducedQuintic:
    """f = a1*f1 + a2*f2 + a3*f3 with exact rational coefficients."""
    a1, a2, a3 = alpha.rational()
    f1, f2, f3 = basis_polynomials(m)
    coeffs = tuple(
        a1 * c1 + a2 * c2 + a3 * c3
        for c1, c2, c3 in zip(f1.coeffs, f2.coeffs, f3.coeffs)
    )
    q = ReducedQuintic(coeffs)
    if q.is_zero():
        raise AllZeroError("reduced polynomial is identically zero")
    return q


@dataclass(frozen=True)
class IsolatedRealRoot:
    value: float
    multiplicity: int
    interval: IntervalId
    enclosure: tuple[float, float]
    exact: Fraction | None = None

    @property
    def enclosure_width(self) -> float:
        return self.enclosure[1] - self.enclosure[0]


@dataclass(frozen=True)
class RootList:
    """All real roots of a reduced quintic away from the collision values.

    ``infinity_multiplicity`` is the degree deficit 5 - deg(f): the number of
    roots that escaped to u = inf (bodies 2 and 3 colliding).
    """

    roots: tuple[IsolatedRealRoot, ...]
    infinity_multiplicity: int

    def counts(self) -> tuple[int, int, int]:
        """Simple-root counts per interval (multiplicities other than 1 are
        not folded in; callers that care must inspect the roots)."""
        n = {IntervalId.I1: 0, IntervalId.I2: 0, IntervalId.I3: 0}
        for r in self.roots:
            if r.multiplicity == 1:
                n[r.interval] += 1
        return (n[IntervalId.I1], n[IntervalId.I2], n[IntervalId.I3])

    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots) + self.infinity_multiplicity


_COLLISION_POINTS = (Fraction(-1), Fraction(0))


def _strip_collision_factors(p: list[int]) -> tuple[list[int], int, int]:
    """Divide out u^k and (1+u)^j factors; returns (poly, mult_at_0, mult_at_-1)."""
    mult0 = 0
    while p and p[0] == 0:
        p = p[1:]
        mult0 += 1
    multm1 = 0
    while p and pr.evaluate(p, -1) == 0:
        # synthetic division by (u + 1)
        out = [0] * (len(p) - 1)
        carry = 0
        for k in range(len(p) - 1, 0, -1):
            carry = p[k] + carry
            out[k - 1] = carry
            carry = -carry
        p = out
        multm1 += 1
    return p, mult0, multm1


@dataclass(frozen=True)
class ExactRootRecord:
    """Internal: certified enclosure plus the square-free factor it lives in."""

    enclosure: pr.Enclosure
    factor: tuple[int, ...]
    interval: IntervalId

    @property
    def multiplicity(self) -> int:
        return self.enclosure.multiplicity

    @property
    def value(self) -> float:
        return self.enclosure.value


def _isolate(q: ReducedQuintic, refine_rel: Fraction) -> tuple[list[ExactRootRecord], int, int, int]:
    """Shared engine: certified roots plus collision multiplicities."""
    if q.is_zero():
        raise AllZeroError("reduced polynomial is identically zero")
    p = q.scale_to_int()
    deg_full = pr.degree(p)
    inf_mult = 5 - deg_full
    p, mult0, multm1 = _strip_collision_factors(pr.trim(p))
    records: list[ExactRootRecord] = []
    if pr.degree(p) >= 1:
        for enc, fac in pr.isolate_all(p):
            enc = pr.refine_away_from(fac, enc, _COLLISION_POINTS)
            if not enc.exact:
                width = refine_rel * max(1, abs(enc.lo), abs(enc.hi))
                enc = pr.refine(fac, enc, width)
            if enc.exact:
                interval = IntervalId.of(enc.lo)
            else:
                # endpoints exclude -1 and 0, so the enclosure sits in one interval
                ilo, ihi = IntervalId.of(enc.lo), IntervalId.of(enc.hi)
                interval = ilo if ilo == ihi else None
            if interval is None:
                raise AssertionError("enclosure straddles a collision point")
            records.append(ExactRootRecord(enc, tuple(fac), interval))
    records.sort(key=lambda r: (r.enclosure.lo, r.enclosure.hi))
    return records, inf_mult, mult0, multm1


def isolate_real_roots(q: ReducedQuintic, refine_rel: Fraction = Fraction(1, 10**13)) -> RootList:
    """Certified real roots with multiplicities and interval assignment.

    Raises DegenerateAtCollision when a root sits exactly on u = -1 or u = 0;
    a drop in degree (roots at u = inf) is reported on the RootList instead,
    since the reduced space closes up at infinity.
    """
    records, inf_mult, mult0, multm1 = _isolate(q, refine_rel)
    if mult0 or multm1:
        at = []
        if mult0:
            at.append(f"u=0 (multiplicity {mult0})")
        if multm1:
            at.append(f"u=-1 (multiplicity {multm1})")
        raise DegenerateAtCollisionError("root at collision point: " + ", ".join(at))
    roots = tuple(
        IsolatedRealRoot(
            value=r.value,
            multiplicity=r.multiplicity,
            interval=r.interval,
            enclosure=(float(r.enclosure.lo), float(r.enclosure.hi)),
            exact=r.enclosure.lo if r.enclosure.exact else None,
        )
        for r in records
    )
    return RootList(roots, inf_mult)


@dataclass(frozen=True)
class IntervalCounts:
    """Per-interval simple-root counts plus collision-point multiplicities."""

    n1: int
    n2: int
    n3: int
    infinity_multiplicity: int = 0
    zero_multiplicity: int = 0
    minus_one_multiplicity: int = 0

    def triple(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)


def count_roots_by_interval(alpha: CouplingTriple, m: MassTriple) -> IntervalCounts:
    """Simple-root counts (n1, n2, n3) of f over I1, I2, I3.

    Roots at the collision values {-1, 0, inf} are excluded from the counts
    and reported via the multiplicity fields.  An interior multiple root
    means the parameters lie on the discriminant curve: OnDiscriminant.
    """
    q = build_quintic(alpha, m)
    records, inf_mult, mult0, multm1 = _isolate(q, Fraction(1, 10**8))
    doubled = [r for r in records if r.multiplicity >= 2]
    if doubled:
        raise OnDiscriminantError(
            "multiple root inside an interval: "
            + ", ".join(f"u~{r.value:.6g} (mult {r.multiplicity})" for r in doubled)
        )
    n = {IntervalId.I1: 0, IntervalId.I2: 0, IntervalId.I3: 0}
    for r in records:
        n[r.interval] += 1
    return IntervalCounts(
        n[IntervalId.I1],
        n[IntervalId.I2],
        n[IntervalId.I3],
        infinity_multiplicity=inf_mult,
        zero_multiplicity=mult0,
        minus_one_multiplicity=multm1,
    )
