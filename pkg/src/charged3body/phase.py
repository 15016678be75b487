"""Configurations, central configurations, and phase-space critical points.

Positions and momenta live in 3-space with the center of mass and total
momentum pinned to zero.  A central configuration satisfies
grad_i V = lambda m_i (q_i - Q); planar ones with positive multiplier become
relative equilibria by the rigid-rotation momentum choice p_i = m_i e x q_i
with |e|^2 = lambda.  The ten classical integrals (H, L, P, Q) assemble into
one map whose 18x10 transposed Jacobian loses rank exactly at collinear
phase points, equilibria, and relative equilibria; the rank test is a plain
singular-value threshold.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CollisionError,
    CollisionInputError,
    InputError,
    NonpositiveMultiplierError,
    NotACentralConfigurationError,
    NotRealizableError,
)
from .quintic import CouplingTriple, IntervalId, MassTriple


@dataclass(frozen=True, eq=False)
class Configuration:
    """Three bodies in 3-space, center of mass at the origin."""

    positions: np.ndarray  # shape (3, 3), row i = body i
    masses: MassTriple

    @property
    def q(self) -> np.ndarray:
        return self.positions

    def distance(self, i: int, j: int) -> float:
        return float(np.linalg.norm(self.positions[i] - self.positions[j]))

    def distances(self) -> tuple[float, float, float]:
        """(r12, r13, r23) in body-pair order."""
        return (self.distance(0, 1), self.distance(0, 2), self.distance(1, 2))

    def center_of_mass(self) -> np.ndarray:
        mv = np.array(self.masses.as_tuple())
        return (mv[:, None] * self.positions).sum(axis=0) / mv.sum()


def make_configuration(positions, masses: MassTriple, recenter: bool = True) -> Configuration:
    """Validate distances and pin the center of mass at the origin."""
    q = np.array(positions, dtype=float).reshape(3, 3)
    mv = np.array(masses.as_tuple())
    if recenter:
        q = q - (mv[:, None] * q).sum(axis=0) / mv.sum()
    for i in range(3):
        for j in range(i + 1, 3):
            if not np.linalg.norm(q[i] - q[j]) > 0:
                raise CollisionError(f"bodies {i + 1} and {j + 1} coincide")
    return Configuration(q, masses)


@dataclass(frozen=True, eq=False)
class PhasePoint:
    """Configuration plus momenta with vanishing total momentum."""

    config: Configuration
    momenta: np.ndarray  # shape (3, 3)

    @property
    def q(self) -> np.ndarray:
        return self.config.positions

    @property
    def p(self) -> np.ndarray:
        return self.momenta

    @property
    def masses(self) -> MassTriple:
        return self.config.masses


def make_phase_point(config: Configuration, momenta) -> PhasePoint:
    p = np.array(momenta, dtype=float).reshape(3, 3)
    total = np.abs(p.sum(axis=0)).max()
    scale = max(1.0, float(np.abs(p).max()))
    if total > 1e-12 * scale:
        raise InputError("total momentum must vanish")
    return PhasePoint(config, p)


class CriticalPointClass(enum.Enum):
    COLLINEAR_PHASE = "collinear-phase"
    EQUILIBRIUM = "equilibrium"
    RELATIVE_EQUILIBRIUM = "relative-equilibrium"
    REGULAR = "regular"


@dataclass(frozen=True)
class CentralConfigResult:
    kind: str  # "collinear" | "noncollinear"
    distances: tuple[float, float, float]  # (r12, r13, r23)
    multiplier: float
    potential: float
    inertia: float
    residual: float


@dataclass(frozen=True, eq=False)
class IntegralValue:
    h: float
    l: np.ndarray  # angular momentum, 3-vector
    p: np.ndarray  # total momentum, 3-vector
    q: np.ndarray  # center of mass, 3-vector


def _pair_items(gamma: CouplingTriple):
    return tuple((ij, g) for ij, g in gamma.pairwise().items())


def potential(config: Configuration, gamma: CouplingTriple) -> float:
    v = 0.0
    for (i, j), g in _pair_items(gamma):
        v -= g / config.distance(i, j)
    return v


def gradient_and_alpha_matrix(config: Configuration, gamma: CouplingTriple):
    """Gradient of V per body and the symmetric matrix A with grad_i = sum_j A_ij q_j.

    A_ij = -gamma_ij / r_ij^3 off the diagonal; rows sum to zero, so the total
    force vanishes and (1,1,1) spans part of the kernel.
    """
    q = config.positions
    A = np.zeros((3, 3))
    for (i, j), g in _pair_items(gamma):
        rij = config.distance(i, j)
        if rij == 0:
            raise CollisionError("collision in gradient evaluation")
        w = g / rij**3
        A[i, j] = -w
        A[j, i] = -w
    for i in range(3):
        A[i, i] = -(A[i].sum() - A[i, i])
    grad = A @ q
    return grad, A


def moment_of_inertia_config(config: Configuration) -> float:
    mv = np.array(config.masses.as_tuple())
    qc = config.positions - config.center_of_mass()
    return float((mv * (qc**2).sum(axis=1)).sum())


def moment_of_inertia(r12: float, r13: float, r23: float, m: MassTriple) -> float:
    """Moment of inertia about the center of mass from mutual distances:
    I = (m1 m2 r12^2 + m1 m3 r13^2 + m2 m3 r23^2) / m.

    The 1/m normalization makes this equal Sigma m_i |q_i - Q|^2 for any
    embedding of the triangle, which the tests verify by embedding.
    """
    _check_triangle(r12, r13, r23)
    m1, m2, m3 = (float(x) for x in MassTriple(m.m1, m.m2, m.m3).as_tuple())
    return (m1 * m2 * r12**2 + m1 * m3 * r13**2 + m2 * m3 * r23**2) / (m1 + m2 + m3)


def _check_triangle(r12: float, r13: float, r23: float, rel: float = 1e-12):
    sides = (r12, r13, r23)
    if min(sides) <= 0:
        raise NotRealizableError("distances must be positive")
    s = max(sides)
    if 2 * s > sum(sides) + rel * s:
        raise NotRealizableError("triangle inequality violated")


def embed_triangle(r12: float, r13: float, r23: float, m: MassTriple) -> Configuration:
    """Planar embedding: body 1 at the origin, body 2 on the positive x-axis,
    body 3 in the upper half plane; recentered so the center of mass is 0."""
    _check_triangle(r12, r13, r23)
    x3 = (r13**2 + r12**2 - r23**2) / (2 * r12)
    y3sq = r13**2 - x3**2
    y3 = math.sqrt(max(0.0, y3sq))
    pts = [[0.0, 0.0, 0.0], [r12, 0.0, 0.0], [x3, y3, 0.0]]
    return make_configuration(pts, m)


def reconstruct_collinear(u: float, scale: float, m: MassTriple) -> Configuration:
    """Collinear configuration on the x-axis with gap pattern
    r2 - r3 = scale, r3 - r1 = u*scale and mass-weighted sum zero."""
    if u == 0 or u == -1 or (isinstance(u, float) and math.isinf(u)):
        raise CollisionInputError(f"u={u} is a collision value")
    if not scale > 0:
        raise InputError("scale must be positive")
    m1, m2, m3 = MassTriple(m.m1, m.m2, m.m3).as_tuple()
    uf = float(u)
    A = np.array([[0.0, 1.0, -1.0], [-1.0, 0.0, 1.0], [m1, m2, m3]])
    rhs = np.array([scale, uf * scale, 0.0])
    r = np.linalg.solve(A, rhs)
    pts = np.zeros((3, 3))
    pts[:, 0] = r
    return make_configuration(pts, m, recenter=False)


def effective_couplings(gamma: CouplingTriple, interval: IntervalId) -> CouplingTriple:
    """Couplings of the physical system for which a root of f in the given
    interval is a genuine central configuration.

    The reduced equation is derived with the body order of I3; the other two
    orderings flip the sign of the coupling whose pair distance changes
    orientation (a1 for I1, a2 for I2).
    """
    a1, a2, a3 = gamma.rational()
    if interval is IntervalId.I3:
        return gamma
    if interval is IntervalId.I2:
        return CouplingTriple(a1, -a2, a3)
    return CouplingTriple(-a1, a2, a3)


def multiplier_of(config: Configuration, gamma: CouplingTriple, tol: float = 1e-8) -> CentralConfigResult:
    """Multiplier lambda = -V/I plus the residual of the defining equation
    grad_i V = lambda m_i (q_i - Q), normalized by the force scale.

    Raises NotACentralConfiguration when the residual exceeds tol.
    """
    grad, _ = gradient_and_alpha_matrix(config, gamma)
    v = potential(config, gamma)
    inertia = moment_of_inertia_config(config)
    lam = -v / inertia
    mv = np.array(config.masses.as_tuple())
    qc = config.positions - config.center_of_mass()
    resid_vec = grad - lam * mv[:, None] * qc
    scale = max(
        1e-300,
        float(np.abs(grad).max()),
        float(np.abs(lam * mv[:, None] * qc).max()),
    )
    residual = float(np.abs(resid_vec).max()) / scale
    if residual > tol:
        raise NotACentralConfigurationError(
            f"central-configuration residual {residual:.3e} exceeds {tol:.1e}"
        )
    r = config.distances()
    kind = "collinear" if _is_collinear(config) else "noncollinear"
    return CentralConfigResult(kind, r, lam, v, inertia, residual)


def collinear_system_residual(u: float, scale: float, gamma: CouplingTriple, m: MassTriple, lam: float) -> float:
    """Residual of the three reduced force-balance equations in the gap
    variables (x, y, z) = (scale, u*scale, -(1+u)*scale), relative to the
    largest term; the system the quintic was eliminated from."""
    a1, a2, a3 = gamma.as_tuple()
    m1, m2, m3 = MassTriple(m.m1, m.m2, m.m3).as_tuple()
    x = scale
    y = float(u) * scale
    z = -(1 + float(u)) * scale
    eqs = [
        a1 * (m2 + m3) / x**2 - a2 * m2 / y**2 + a3 * m3 / z**2 - lam * m2 * m3 * x,
        a2 * (m1 + m3) / y**2 - a1 * m1 / x**2 + a3 * m3 / z**2 - lam * m1 * m3 * y,
        a3 * (m1 + m2) / z**2 + a1 * m1 / x**2 + a2 * m2 / y**2 + lam * m1 * m2 * z,
    ]
    terms = [
        abs(a1) * (m2 + m3) / x**2 + abs(a2) * m2 / y**2 + abs(a3) * m3 / z**2 + abs(lam) * m2 * m3 * abs(x),
        abs(a2) * (m1 + m3) / y**2 + abs(a1) * m1 / x**2 + abs(a3) * m3 / z**2 + abs(lam) * m1 * m3 * abs(y),
        abs(a3) * (m1 + m2) / z**2 + abs(a1) * m1 / x**2 + abs(a2) * m2 / y**2 + abs(lam) * m1 * m2 * abs(z),
    ]
    return max(abs(e) / max(1e-300, t) for e, t in zip(eqs, terms))


def _is_collinear(config: Configuration, rel: float = 1e-9) -> bool:
    q = config.positions - config.center_of_mass()
    s = np.linalg.svd(q, compute_uv=False)
    return s[1] <= rel * max(s[0], 1e-300)


def noncollinear_cc(gamma: CouplingTriple, m: MassTriple, lam: float):
    """The unique non-collinear central configuration candidate, or None.

    Distances r_ij = (gamma_ij m / (m_i m_j lambda))^(1/3); it exists only if
    every cube-root argument is positive (all couplings share the sign of
    lambda) and the distances satisfy the strict triangle inequalities.
    """
    if lam == 0:
        raise InputError("lambda must be nonzero")
    mv = MassTriple(m.m1, m.m2, m.m3).as_tuple()
    total = sum(mv)
    pairs = {}
    for (i, j), g in _pair_items(gamma):
        arg = g * total / (mv[i] * mv[j] * lam)
        if arg <= 0:
            return None
        pairs[(i, j)] = arg ** (1.0 / 3.0)
    r12, r13, r23 = pairs[(0, 1)], pairs[(0, 2)], pairs[(1, 2)]
    s = sorted((r12, r13, r23))
    if not s[2] < s[0] + s[1]:
        return None
    config = embed_triangle(r12, r13, r23, m)
    result = multiplier_of(config, gamma, tol=1e-6)
    if abs(result.multiplier - lam) > 1e-6 * max(1.0, abs(lam)):
        raise AssertionError("reconstructed multiplier mismatch")
    return result, config


def build_relative_equilibrium(
    config: Configuration, gamma: CouplingTriple, tol: float = 1e-8
) -> PhasePoint:
    """Rigid-rotation phase point over a planar central configuration.

    Picks the unit normal e0 of the configuration plane, scales it to
    |e|^2 = lambda (lambda > 0 required), and sets p_i = m_i e x q_i.
    """
    cc = multiplier_of(config, gamma, tol=tol)
    lam = cc.multiplier
    if not lam > 0:
        raise NonpositiveMultiplierError(f"multiplier {lam:.6g} is not positive")
    q = config.positions - config.center_of_mass()
    # plane normal: for collinear configurations the whole normal plane is
    # available, so pick the admissible direction closest to the z-axis
    _, s, vt = np.linalg.svd(q)
    if s[2] > 1e-9 * s[0]:
        raise InputError("configuration is not planar")
    null_rows = [vt[k] for k in range(3) if s[k] <= 1e-9 * s[0]]
    zhat = np.array([0.0, 0.0, 1.0])
    w = sum((row @ zhat) * row for row in null_rows)
    if np.linalg.norm(w) > 1e-9:
        e0 = w / np.linalg.norm(w)
    else:
        e0 = vt[2]
    for comp in (2, 1, 0):  # deterministic orientation
        if abs(e0[comp]) > 1e-12:
            e0 = e0 * np.sign(e0[comp])
            break
    e = math.sqrt(lam) * e0
    mv = np.array(config.masses.as_tuple())
    p = np.cross(np.broadcast_to(e, (3, 3)), q) * mv[:, None]
    # boost away the rounding drift so total momentum vanishes identically
    p -= (mv / mv.sum())[:, None] * p.sum(axis=0)
    return make_phase_point(Configuration(q, config.masses), p)


def integral_map(pp: PhasePoint, gamma: CouplingTriple) -> IntegralValue:
    """The ten conserved quantities (H, L, P, Q) of the phase point."""
    mv = np.array(pp.masses.as_tuple())
    for i in range(3):
        for j in range(i + 1, 3):
            if not np.linalg.norm(pp.q[i] - pp.q[j]) > 0:
                raise CollisionError("collision in integral evaluation")
    t = float((pp.p**2).sum(axis=1) @ (1.0 / (2 * mv)))
    h = t + potential(pp.config, gamma)
    l = np.cross(pp.q, pp.p).sum(axis=0)
    ptot = pp.p.sum(axis=0)
    qbar = (mv[:, None] * pp.q).sum(axis=0) / mv.sum()
    return IntegralValue(h=h, l=l, p=ptot, q=qbar)


def hamiltonian_vector_field(pp: PhasePoint, gamma: CouplingTriple):
    """(qdot, pdot) of the canonical equations at the phase point."""
    mv = np.array(pp.masses.as_tuple())
    grad, _ = gradient_and_alpha_matrix(pp.config, gamma)
    return pp.p / mv[:, None], -grad


def _cross_matrix(x: np.ndarray) -> np.ndarray:
    return np.array(
        [[0.0, -x[2], x[1]], [x[2], 0.0, -x[0]], [-x[1], x[0], 0.0]]
    )


def jacobian_transpose(pp: PhasePoint, gamma: CouplingTriple) -> np.ndarray:
    """Transposed derivative of the integral map: 18 x 10.

    Column blocks are (H | L | P | Q); row blocks are the q-derivatives of
    the three bodies followed by their p-derivatives.
    """
    mv = np.array(pp.masses.as_tuple())
    total = mv.sum()
    grad, _ = gradient_and_alpha_matrix(pp.config, gamma)
    out = np.zeros((18, 10))
    for i in range(3):
        rq = slice(3 * i, 3 * i + 3)
        rp = slice(9 + 3 * i, 12 + 3 * i)
        out[rq, 0] = grad[i]
        out[rq, 1:4] = -_cross_matrix(pp.p[i])
        out[rq, 7:10] = (mv[i] / total) * np.eye(3)
        out[rp, 0] = pp.p[i] / mv[i]
        out[rp, 1:4] = _cross_matrix(pp.q[i])
        out[rp, 4:7] = np.eye(3)
    return out


@dataclass(frozen=True, eq=False)
class RankReport:
    rank: int
    classification: CriticalPointClass
    singular_values: np.ndarray
    rotation_axis: np.ndarray | None  # lambda_1 of the critical equations

    @property
    def rank_gap(self) -> float:
        return float(self.singular_values[9] / self.singular_values[0])


def jacobian_rank(pp: PhasePoint, gamma: CouplingTriple, tol: float = 1e-9) -> RankReport:
    """Numerical rank of the integral map's Jacobian plus the critical-point
    class: a rank drop happens exactly at collinear phase points, equilibria,
    and relative equilibria, checked in that order."""
    jt = jacobian_transpose(pp, gamma)
    svals = np.linalg.svd(jt, compute_uv=False)
    rank = int(np.sum(svals > tol * svals[0]))
    if rank == 10:
        return RankReport(rank, CriticalPointClass.REGULAR, svals, None)
    stacked = np.vstack([pp.q, pp.p])
    s6 = np.linalg.svd(stacked, compute_uv=False)
    if s6[1] <= 1e-9 * max(s6[0], 1e-300):
        return RankReport(rank, CriticalPointClass.COLLINEAR_PHASE, svals, None)
    grad, _ = gradient_and_alpha_matrix(pp.config, gamma)
    # natural force and momentum scales of this configuration
    fscale = sum(
        abs(g) / pp.config.distance(i, j) ** 2 for (i, j), g in _pair_items(gamma)
    )
    mv = np.array(pp.masses.as_tuple())
    t = float((pp.p**2).sum(axis=1) @ (1.0 / (2 * mv)))
    pscale = math.sqrt(2 * max(abs(potential(pp.config, gamma)), t, 1e-300) * mv.max())
    if np.abs(grad).max() <= 1e-9 * fscale and np.abs(pp.p).max() <= 1e-9 * pscale:
        return RankReport(rank, CriticalPointClass.EQUILIBRIUM, svals, None)
    axis, resid = _solve_rotation_axis(pp, grad)
    if resid <= 1e-6 and np.linalg.norm(axis) > 0:
        return RankReport(rank, CriticalPointClass.RELATIVE_EQUILIBRIUM, svals, axis)
    # rank-deficient but no clean subcase: report the best fit
    return RankReport(rank, CriticalPointClass.RELATIVE_EQUILIBRIUM, svals, axis)


def _solve_rotation_axis(pp: PhasePoint, grad: np.ndarray):
    """Least-squares rotation vector of the critical-point equations
    grad_i V = p_i x w and p_i = m_i w x q_i; returns (w, relative residual)."""
    mv = np.array(pp.masses.as_tuple())
    rows = []
    rhs = []
    for i in range(3):
        rows.append(_cross_matrix(pp.p[i]))
        rhs.append(grad[i])
        rows.append(-mv[i] * _cross_matrix(pp.q[i]))
        rhs.append(pp.p[i])
    A = np.vstack(rows)
    b = np.concatenate(rhs)
    w, *_ = np.linalg.lstsq(A, b, rcond=None)
    resid = np.linalg.norm(A @ w - b) / max(1e-300, np.linalg.norm(b))
    return w, float(resid)
