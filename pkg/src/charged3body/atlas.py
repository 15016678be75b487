"""Atlas of the coupling-parameter plane.

The discriminant set of the reduced quintic consists of the two coordinate
axes of the beta chart plus a curve traced by the double-root parameter u.
Together they cut the plane into thirteen regions with constant root-count
triples; this module traces the curve, computes its cusps and points at
infinity, classifies parameter points into regions, and evaluates the sign
of the reduced potential at each root (which decides whether the associated
critical point of the integral map exists).

Note on orientation: the closed form used for the curve here is the solution
of the double-zero system f(u) = f'(u) = 0 by Cramer's rule.  It equals the
*negative* of one published explicit form; the double-zero identity is the
defining property and is enforced by tests, so the sign here is the correct
one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import polyroots as pr
from .errors import AllZeroError, CollisionPointError, InputError, NotACuspError
from .quintic import (
    CouplingTriple,
    IntervalId,
    MassTriple,
    build_quintic,
    _isolate,
)

Number = int | float | Fraction


def _rat(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class BetaPoint:
    """Reduced couplings (b1, b2) = (a1/a3, a2/a3); needs a3 != 0."""

    b1: Number
    b2: Number

    def as_floats(self) -> tuple[float, float]:
        return (float(self.b1), float(self.b2))

    def rational(self) -> tuple[Fraction, Fraction]:
        return (_rat(self.b1), _rat(self.b2))

    def couplings(self) -> CouplingTriple:
        return CouplingTriple(_rat(self.b1), _rat(self.b2), Fraction(1))


@dataclass(frozen=True)
class GammaSample:
    """One point of the double-root curve: either a finite parameter point or
    an at-infinity marker with the normalized escape direction."""

    u: float
    point: tuple | None
    direction: tuple[float, float] | None
    at_infinity: bool
    branch: int


@dataclass(frozen=True)
class SpecialPoints:
    """Parameter values where the curve leaves the plane (xi) or has a cusp
    (eta), for masses (mu, mu, 1).  Products xi-*xi+ and eta-*eta+ are 1."""

    xi_minus: float
    xi_plus: float
    eta_minus: float
    eta_plus: float
    xi_zero: float = -1.0
    eta_zero: float = 1.0

    def ordered(self) -> tuple[float, ...]:
        return (
            self.xi_minus,
            self.eta_minus,
            self.xi_zero,
            self.eta_plus,
            self.xi_plus,
            self.eta_zero,
        )


# Table of root-count triples per region, canonical numbering.
REGION_BY_TRIPLE: dict[tuple[int, int, int], int] = {
    (0, 0, 1): 1,
    (2, 0, 1): 2,
    (1, 0, 0): 3,
    (1, 2, 0): 4,
    (1, 3, 1): 5,
    (1, 1, 1): 6,
    (3, 1, 1): 7,
    (2, 1, 0): 8,
    (0, 1, 0): 9,
    (0, 2, 1): 10,
    (0, 1, 2): 11,
    (1, 0, 2): 12,
    (1, 1, 3): 13,
}

# The sign-table source swaps the labels of the mirror-image region pairs
# (2,10), (3,9), (11,12) relative to the canonical numbering; keep both.
REGION_ALT_BY_TRIPLE: dict[tuple[int, int, int], int] = {
    **REGION_BY_TRIPLE,
    (0, 2, 1): 2,
    (2, 0, 1): 10,
    (0, 1, 0): 3,
    (1, 0, 0): 9,
    (1, 0, 2): 11,
    (0, 1, 2): 12,
}

TRIPLES = tuple(REGION_BY_TRIPLE)

# Potential-sign patterns per triple ('+'/'-' per root, ascending u, one
# string per interval).  The I3 entry of triple (1,1,1) depends on the side
# of the zero-potential parabola and is handled separately.
SIGN_TABLE: dict[tuple[int, int, int], tuple[str, str, str]] = {
    (0, 0, 1): ("", "", "-"),
    (0, 2, 1): ("", "--", "-"),
    (0, 1, 0): ("", "-", ""),
    (1, 1, 1): ("+", "-", "?"),
    (1, 0, 0): ("+", "", ""),
    (2, 0, 1): ("++", "", "-"),
    (1, 0, 2): ("+", "", "--"),
    (0, 1, 2): ("", "-", "--"),
    (1, 1, 3): ("+", "-", "---"),
    # rows absent from the published sign table, computed here and checked
    # against the mirror action in the test suite
    (1, 3, 1): ("+", "+++", "+"),
    (3, 1, 1): ("---", "-", "+"),
    (1, 2, 0): ("+", "++", ""),
    (2, 1, 0): ("--", "-", ""),
}


def _g_polys(m: MassTriple) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """Numerator/denominator polynomials of the curve parameterization
    (ascending coefficients; g2 and g3 are degree 5)."""
    m1, m2, m3 = m.rational()
    g1 = [
        -2 * m2 * (m1 + m3),
        m1 * (3 * m1 - m2 + 3 * m3),
        m1 * (3 * m1 + m2 + m3),
    ]
    g2_core = [
        m2 * (m1 + 3 * m2 + m3),
        m2 * (3 * m2 + 3 * m3 - m1),
        -2 * m1 * (m2 + m3),
    ]
    g2 = [Fraction(0)] * 3 + g2_core
    core = [
        2 * m2 * (m1 + m3),
        3 * m3 * (m2 + m3) + m1 * (4 * m2 + 3 * m3),
        2 * m1 * (m2 + m3),
    ]
    # (1+u)^3 * core
    binom = [Fraction(1), Fraction(3), Fraction(3), Fraction(1)]
    g3 = [Fraction(0)] * 6
    for i, b in enumerate(binom):
        for j, c in enumerate(core):
            g3[i + j] += b * c
    return g1, g2, g3


def gamma_point(u, m: MassTriple) -> GammaSample:
    """Point of the double-root curve at parameter u (u = inf allowed).

    Exact on rational inputs.  Where the denominator vanishes the curve has
    a point at infinity: the sample then carries the normalized escape
    direction instead of a finite point.
    """
    g1, g2, g3 = _g_polys(m)
    m1, m2, m3 = m.rational()
    if isinstance(u, float) and math.isinf(u):
        # leading behaviour: first component -> 0, second -> m3/m2
        return GammaSample(
            u=math.inf,
            point=(Fraction(0), m3 / m2),
            direction=None,
            at_infinity=False,
            branch=3,
        )
    ur = _rat(u) if not isinstance(u, float) else Fraction(u)
    v1 = pr.evaluate(g1, ur)
    v2 = pr.evaluate(g2, ur)
    v3 = pr.evaluate(g3, ur)
    if v3 == 0:
        d1 = float(-(m3 / m1) * v1)
        d2 = float(-(m3 / m2) * v2)
        norm = math.hypot(d1, d2)
        return GammaSample(
            u=float(u),
            point=None,
            direction=(d1 / norm, d2 / norm),
            at_infinity=True,
            branch=_branch_of(float(u), m),
        )
    b1 = -(m3 / m1) * v1 / v3
    b2 = -(m3 / m2) * v2 / v3
    return GammaSample(
        u=float(u),
        point=(b1, b2),
        direction=None,
        at_infinity=False,
        branch=_branch_of(float(u), m),
    )


def infinity_parameters(m: MassTriple) -> tuple[float, float, float]:
    """The three u values sending the curve to infinity: (xi-, xi0=-1, xi+)."""
    m1, m2, m3 = m.rational()
    a = 2 * m1 * (m2 + m3)
    b = 3 * m3 * (m2 + m3) + m1 * (4 * m2 + 3 * m3)
    c = 2 * m2 * (m1 + m3)
    disc = b * b - 4 * a * c
    if disc < 0:
        raise AssertionError("denominator quadratic lost its real roots")
    s = math.sqrt(float(disc))
    xm = (-float(b) - s) / (2 * float(a))
    xp = (-float(b) + s) / (2 * float(a))
    return (xm, -1.0, xp)


def _branch_of(u: float, m: MassTriple) -> int:
    xm, _, xp = infinity_parameters(m)
    if xm < u < -1:
        return 1
    if -1 < u < xp:
        return 2
    return 3


def special_points(mu: Number) -> SpecialPoints:
    """Closed forms for masses (mu, mu, 1)."""
    muf = float(mu)
    if not muf > 0:
        raise InputError("mu must be positive")
    dxi = math.sqrt(9 + 36 * muf + 44 * muf**2 + 16 * muf**3)
    xi_m = (-3 - 6 * muf - 4 * muf**2 - dxi) / (4 * muf * (1 + muf))
    xi_p = (-3 - 6 * muf - 4 * muf**2 + dxi) / (4 * muf * (1 + muf))
    deta = math.sqrt(21 + 80 * muf + 92 * muf**2 + 32 * muf**3)
    den = 2 * (1 + 5 * muf + 4 * muf**2)
    eta_m = (-5 - 12 * muf - 8 * muf**2 - deta) / den
    eta_p = (-5 - 12 * muf - 8 * muf**2 + deta) / den
    return SpecialPoints(xi_minus=xi_m, xi_plus=xi_p, eta_minus=eta_m, eta_plus=eta_p)


def cusp_parameters(m: MassTriple) -> tuple[float, float, float]:
    """Cusp parameter values of the curve for general masses.

    They are the real roots of the cubic factor of the singularity condition
    c'(u) = 0 (the collision values split off as spurious factors); each root
    is certified by checking that the curve derivative vanishes there.
    """
    m1, m2, m3 = m.rational()
    c3 = m1 * (m2 + m3) * (3 * m1 + m2 + m3)
    c2 = m1 * (5 * m1 * m2 + 4 * m1 * m3 - m2 * m2 + 3 * m2 * m3 + 4 * m3 * m3)
    c1 = m2 * (m1 * m1 - 5 * m1 * m2 - 3 * m1 * m3 - 4 * m2 * m3 - 4 * m3 * m3)
    c0 = -m2 * (m1 * m1 + 3 * m1 * m2 + 2 * m1 * m3 + 3 * m2 * m3 + m3 * m3)
    roots = pr.isolate_all(pr.clear_denominators([c0, c1, c2, c3]), target_width=Fraction(1, 10**12))
    vals = sorted(e.value for e, _ in roots)
    if len(vals) != 3:
        raise AssertionError("cusp cubic must have three real roots for positive masses")
    for v in vals:
        if _curve_derivative_norm(v, m) > 1e-6 * _point_scale(v, m):
            raise AssertionError("cusp certificate failed")
    return tuple(vals)


def _point_scale(u: float, m: MassTriple) -> float:
    g = gamma_point(u, m)
    if g.at_infinity:
        return math.inf
    return max(1.0, math.hypot(float(g.point[0]), float(g.point[1])))


def _curve_derivative_norm(u: float, m: MassTriple, h: float = 1e-6) -> float:
    lo = gamma_point(u - h, m)
    hi = gamma_point(u + h, m)
    if lo.at_infinity or hi.at_infinity:
        return math.inf
    d1 = (float(hi.point[0]) - float(lo.point[0])) / (2 * h)
    d2 = (float(hi.point[1]) - float(lo.point[1])) / (2 * h)
    return math.hypot(d1, d2)


def cusp_local_form(eta: float, m: MassTriple) -> tuple[float, float]:
    """Leading coefficients (gamma1, gamma2) of the rotated local expansion
    at a cusp: along the tangent the curve grows like gamma2 t^2, transverse
    to it like gamma1 t^3.

    The tangent vector is normalized to unit max-norm with positive leading
    component, which reproduces the published closed forms at eta = 1.
    Raises NotACusp when the curve derivative does not vanish at eta.
    """
    c0 = gamma_point(eta, m)
    if c0.at_infinity:
        raise NotACuspError("parameter sends the curve to infinity")
    if _curve_derivative_norm(eta, m) > 1e-4 * _point_scale(eta, m):
        raise NotACuspError(f"curve is regular at u={eta}")
    base = (float(c0.point[0]), float(c0.point[1]))
    steps = [1e-3 * k for k in (1, 2, 3, 4, -1, -2, -3, -4)]
    rows = []
    dx = []
    dy = []
    for t in steps:
        s = gamma_point(eta + t, m)
        rows.append((t**2, t**3, t**4, t**5))
        dx.append(float(s.point[0]) - base[0])
        dy.append(float(s.point[1]) - base[1])
    cx = _lstsq4(rows, dx)
    cy = _lstsq4(rows, dy)
    v2 = (cx[0], cy[0])
    v3 = (cx[1], cy[1])
    scale = max(abs(v2[0]), abs(v2[1]))
    if scale == 0:
        raise NotACuspError("degenerate local expansion")
    v = (v2[0] / scale, v2[1] / scale)
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        v = (-v[0], -v[1])
    jv = (-v[1], v[0])
    gamma1 = jv[0] * v3[0] + jv[1] * v3[1]
    gamma2 = v[0] * v2[0] + v[1] * v2[1]
    if gamma1 == 0 or gamma2 == 0:
        raise NotACuspError("cusp is degenerate")
    return (gamma1, gamma2)


def _lstsq4(rows: list[tuple], rhs: list[float]) -> list[float]:
    import numpy as np

    sol, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    return [float(x) for x in sol]


def reduced_potential(u, beta: BetaPoint):
    """Potential on the reduced collinear space:
    U(u) = -(b1 u^2 + (1 + b1 + b2) u + b2) / (u (1 + u)).

    Exact on rational inputs; poles at the collision values 0 and -1.
    """
    if u == 0 or u == -1:
        raise CollisionPointError(f"U has a pole at u={u}")
    b1, b2 = beta.rational() if isinstance(beta, BetaPoint) else (_rat(beta[0]), _rat(beta[1]))
    if isinstance(u, float):
        b1f, b2f = float(b1), float(b2)
        return -(b1f * u * u + (1 + b1f + b2f) * u + b2f) / (u * (1 + u))
    ur = _rat(u)
    return -(b1 * ur * ur + (1 + b1 + b2) * ur + b2) / (ur * (1 + ur))


def zero_potential_parabola(beta) -> float:
    """Signed defect (b1-b2)^2 + 2(b1+b2) + 1; zero on the curve where some
    root of f has vanishing potential, and the double-root curve lies
    entirely on its positive side."""
    b1, b2 = (beta.b1, beta.b2) if isinstance(beta, BetaPoint) else beta
    b1, b2 = float(b1), float(b2)
    return (b1 - b2) ** 2 + 2 * (b1 + b2) + 1


def _u_sign_exact(enc: pr.Enclosure, fac: list[int], beta_r: tuple[Fraction, Fraction]) -> int:
    """Exact sign of U at an isolated root given by a certified enclosure.

    sign U = -sign(numerator) * sign(u(1+u)); the latter is constant on each
    interval, and the numerator sign is decided by shrinking the enclosure
    until the quadratic numerator cannot change sign inside it.
    """
    b1, b2 = beta_r
    num = [b2, 1 + b1 + b2, b1]  # ascending
    lo, hi = enc.lo, enc.hi
    if enc.exact:
        nv = pr.evaluate(num, lo)
        s_num = pr.sign_of(nv)
    else:
        while True:
            s_lo = pr.sign_of(pr.evaluate(num, lo))
            s_hi = pr.sign_of(pr.evaluate(num, hi))
            if s_lo == s_hi and s_lo != 0:
                s_num = s_lo
                break
            # the numerator has a zero inside: either the root itself lies on
            # the zero-potential set, or shrinking separates them
            g = pr.poly_gcd(fac, pr.clear_denominators([Fraction(c) for c in num]))
            if pr.degree(g) >= 1 and pr.sign_of(pr.evaluate(g, lo)) * pr.sign_of(pr.evaluate(g, hi)) <= 0:
                s_num = 0
                break
            e2 = pr.refine(fac, pr.Enclosure(lo, hi), (hi - lo) / 4)
            if e2.exact:
                s_num = pr.sign_of(pr.evaluate(num, e2.lo))
                break
            lo, hi = e2.lo, e2.hi
    mid = lo if enc.exact else (lo + hi) / 2
    denom_sign = 1 if (mid < -1 or mid > 0) else -1
    return -s_num * denom_sign


@dataclass(frozen=True)
class RootSign:
    u: float
    interval: IntervalId
    multiplicity: int
    u_sign: int  # sign of the reduced potential at the root


@dataclass(frozen=True)
class RegionReport:
    beta: tuple[float, float]
    triple: tuple[int, int, int] | None
    region: int | None
    region_alt: int | None
    boundary: bool
    boundary_reason: str | None
    roots: tuple[RootSign, ...]
    neg_u_counts: tuple[int, int, int]
    parabola_defect: float

    @property
    def sign_pattern(self) -> tuple[str, str, str]:
        pats = {IntervalId.I1: "", IntervalId.I2: "", IntervalId.I3: ""}
        for r in self.roots:
            pats[r.interval] += {1: "+", -1: "-", 0: "0"}[r.u_sign]
        return (pats[IntervalId.I1], pats[IntervalId.I2], pats[IntervalId.I3])

    @property
    def region_label(self) -> str:
        if self.boundary:
            return "B"
        return str(self.region) if self.region is not None else "?"


def classify(beta, m: MassTriple) -> RegionReport:
    """Certified region classification of a beta-chart point.

    Boundary points (a coordinate axis, or an interior double root: the
    discriminant curve) are reported with region 'B' rather than raised, so
    sweeps never abort; the triple still carries the simple-root counts.
    """
    bp = beta if isinstance(beta, BetaPoint) else BetaPoint(beta[0], beta[1])
    b1, b2 = bp.rational()
    defect = zero_potential_parabola(bp)
    boundary_reason = None
    # naming follows the crossing rules: the beta1-axis is the line b2 = 0
    # (double zero at u = 0), the beta2-axis is b1 = 0 (double zero at inf)
    if b1 == 0 and b2 == 0:
        boundary_reason = "axes"
    elif b2 == 0:
        boundary_reason = "beta1-axis"
    elif b1 == 0:
        boundary_reason = "beta2-axis"
    q = build_quintic(CouplingTriple(b1, b2, Fraction(1)), m)
    records, inf_mult, mult0, multm1 = _isolate(q, Fraction(1, 10**8))
    if multm1:
        boundary_reason = boundary_reason or "collision-root"
    if any(r.multiplicity >= 2 for r in records):
        boundary_reason = boundary_reason or "discriminant-curve"
    signs: list[RootSign] = []
    for r in records:
        s = _u_sign_exact(r.enclosure, list(r.factor), (b1, b2))
        signs.append(RootSign(r.value, r.interval, r.multiplicity, s))
    neg = [0, 0, 0]
    for s in signs:
        if s.u_sign < 0:
            neg[{IntervalId.I1: 0, IntervalId.I2: 1, IntervalId.I3: 2}[s.interval]] += 1
    n = [0, 0, 0]
    for r in records:
        if r.multiplicity == 1:
            n[{IntervalId.I1: 0, IntervalId.I2: 1, IntervalId.I3: 2}[r.interval]] += 1
    triple = (n[0], n[1], n[2])
    boundary = boundary_reason is not None
    region = None if boundary else REGION_BY_TRIPLE.get(triple)
    region_alt = None if boundary else REGION_ALT_BY_TRIPLE.get(triple)
    return RegionReport(
        beta=bp.as_floats(),
        triple=triple,
        region=region,
        region_alt=region_alt,
        boundary=boundary,
        boundary_reason=boundary_reason,
        roots=tuple(signs),
        neg_u_counts=(neg[0], neg[1], neg[2]),
        parabola_defect=defect,
    )


@dataclass(frozen=True)
class GridSpec:
    """Rectangular raster: values are min + k*(max-min)/(n-1), row-major.

    Zero-step axes are allowed here (an empty grid sweeps to an empty
    stream); the service request schema enforces steps >= 1.
    """

    b1_min: float
    b1_max: float
    n1: int
    b2_min: float
    b2_max: float
    n2: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise InputError("grid steps must be >= 0")

    def axis1(self) -> list[Fraction]:
        return _axis(self.b1_min, self.b1_max, self.n1)

    def axis2(self) -> list[Fraction]:
        return _axis(self.b2_min, self.b2_max, self.n2)


def _axis(lo: float, hi: float, n: int) -> list[Fraction]:
    lo_r, hi_r = Fraction(lo), Fraction(hi)
    if n == 0:
        return []
    if n == 1:
        return [lo_r]
    step = (hi_r - lo_r) / (n - 1)
    return [lo_r + k * step for k in range(n)]


def raster_sweep(grid: GridSpec, m: MassTriple) -> Iterator[RegionReport]:
    """Classify every grid cell, row-major (b1 outer, b2 inner); boundary
    cells come back as reports, never as exceptions."""
    ax1 = grid.axis1()
    ax2 = grid.axis2()
    for b1 in ax1:
        for b2 in ax2:
            try:
                yield classify(BetaPoint(b1, b2), m)
            except AllZeroError:
                yield RegionReport(
                    beta=(float(b1), float(b2)),
                    triple=None,
                    region=None,
                    region_alt=None,
                    boundary=True,
                    boundary_reason="all-zero",
                    roots=(),
                    neg_u_counts=(0, 0, 0),
                    parabola_defect=zero_potential_parabola((b1, b2)),
                )


def infinity_sample(xi: float, m: MassTriple) -> GammaSample:
    """At-infinity marker for a numerically computed zero of the denominator
    (the exact-zero test in gamma_point cannot fire on a float)."""
    g1, g2, _ = _g_polys(m)
    m1, m2, m3 = m.rational()
    d1 = float(-(m3 / m1) * pr.evaluate([float(c) for c in g1], xi))
    d2 = float(-(m3 / m2) * pr.evaluate([float(c) for c in g2], xi))
    norm = math.hypot(d1, d2)
    return GammaSample(
        u=float(xi), point=None, direction=(d1 / norm, d2 / norm), at_infinity=True,
        branch=_branch_of(float(xi), m),
    )


def trace_gamma(
    m: MassTriple,
    samples_per_branch: int = 200,
    max_jump: float = 0.5,
    max_depth: int = 12,
) -> list[GammaSample]:
    """Adaptively sample the double-root curve over all three branches.

    The parameter circle is covered via the angle substitution u = tan(t);
    exact special values (cusps, points at infinity, the collision values)
    are inserted, and segments whose endpoints are far apart relative to
    their local scale are subdivided up to max_depth times.
    """
    xi_m, _, xi_p = infinity_parameters(m)
    cusps = cusp_parameters(m)
    specials = sorted({xi_m, -1.0, xi_p, *cusps, 0.0})
    infinity_us = {xi_m, xi_p}
    special_theta = {math.atan(s): s for s in specials}
    thetas = sorted(
        set(special_theta)
        | {math.pi * (k / samples_per_branch - 0.5) for k in range(1, samples_per_branch)}
        | {math.pi / 2}
    )
    out: list[GammaSample] = []

    def sample(theta: float) -> GammaSample:
        if abs(theta - math.pi / 2) < 1e-15:
            return gamma_point(math.inf, m)
        u = special_theta.get(theta, math.tan(theta))
        if u in infinity_us:
            return infinity_sample(u, m)
        return gamma_point(u, m)

    def emit(a: float, sa: GammaSample, b: float, sb: GammaSample, depth: int):
        if depth >= max_depth:
            return
        if sa.at_infinity or sb.at_infinity:
            return
        pa, pb = sa.point, sb.point
        dist = math.hypot(float(pb[0]) - float(pa[0]), float(pb[1]) - float(pa[1]))
        scale = 1.0 + min(
            math.hypot(float(pa[0]), float(pa[1])), math.hypot(float(pb[0]), float(pb[1]))
        )
        if dist > max_jump * scale:
            mid = (a + b) / 2
            sm = sample(mid)
            emit(a, sa, mid, sm, depth + 1)
            out.append(sm)
            emit(mid, sm, b, sb, depth + 1)

    prev_theta = None
    prev_sample = None
    for th in thetas:
        s = sample(th)
        if prev_sample is not None:
            emit(prev_theta, prev_sample, th, s, 0)
        out.append(s)
        prev_theta, prev_sample = th, s
    out.sort(key=lambda g: math.atan(g.u) if not math.isinf(g.u) else math.pi / 2)
    return out


def region_samples(m: MassTriple, offsets=(1e-2, 1e-3, 1e-4)) -> dict[tuple[int, int, int], tuple[float, float]]:
    """One certified representative point per root-count triple.

    Candidates are generated from the traced curve: midpoints of adjacent
    curve samples pushed off along the normal at several relative offsets
    (every region's boundary contains curve arcs, so this reaches all of
    them), plus the quadrant anchors.  Each candidate is classified with the
    exact isolator before being accepted; nothing is assumed.
    """
    trace = [g for g in trace_gamma(m) if not g.at_infinity]
    found: dict[tuple[int, int, int], tuple[float, float]] = {}

    def try_point(b1: float, b2: float):
        if not (math.isfinite(b1) and math.isfinite(b2)):
            return
        if abs(b1) > 1e6 or abs(b2) > 1e6:
            return
        try:
            rep = classify(BetaPoint(b1, b2), m)
        except AllZeroError:
            return
        if rep.boundary or rep.triple is None:
            return
        found.setdefault(rep.triple, rep.beta)

    for anchor in ((1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)):
        try_point(*anchor)
    for a, b in zip(trace, trace[1:]):
        pa, pb = a.point, b.point
        mx = (float(pa[0]) + float(pb[0])) / 2
        my = (float(pa[1]) + float(pb[1])) / 2
        tx = float(pb[0]) - float(pa[0])
        ty = float(pb[1]) - float(pa[1])
        norm = math.hypot(tx, ty)
        if norm == 0:
            continue
        nx, ny = -ty / norm, tx / norm
        scale = 1.0 + math.hypot(mx, my)
        for off in offsets:
            for sgn in (1.0, -1.0):
                try_point(mx + sgn * off * scale * nx, my + sgn * off * scale * ny)
        if len(found) == len(TRIPLES):
            break
    return found
