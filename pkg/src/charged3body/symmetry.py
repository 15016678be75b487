"""Permutation-group actions on the reduced collinear problem.

Relabeling the three bodies induces compatible actions on the reduced
coordinate u (Moebius-type maps h), on the couplings (signed permutations
phi), on the beta chart (birational maps psi), and on the masses (plain
permutations pi).  The reduced polynomial f and the discriminant curve are
covariant under these actions; the residual checkers below measure how well
that holds for a given implementation and are exact on rational inputs.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from .errors import ChartUndefinedError, InputError
from .quintic import CouplingTriple, IntervalId, MassTriple, build_quintic

INFINITY = math.inf


class PermutationElement(enum.Enum):
    """The six elements of the permutation group on three bodies.

    ``word`` lists generator indices composed left to right, i.e. the last
    entry acts first: P3 = P1 o P2 sends x to P1(P2(x)).
    """

    P0 = ()
    P1 = (1,)
    P2 = (2,)
    P3 = (1, 2)
    P4 = (2, 1)
    P5 = (1, 2, 1)

    @property
    def word(self) -> tuple[int, ...]:
        return self.value

    @property
    def mapping(self) -> tuple[int, int, int]:
        """Images of bodies (1, 2, 3) under this permutation."""
        img = [1, 2, 3]
        for gen in reversed(self.word):
            swap = {1: (2, 1, 3), 2: (1, 3, 2)}[gen]
            img = [swap[x - 1] for x in img]
        return tuple(img)

    def is_involution(self) -> bool:
        return compose(self, self) is PermutationElement.P0


def compose(g: PermutationElement, h: PermutationElement) -> PermutationElement:
    """The element acting as first h, then g."""
    gm, hm = g.mapping, h.mapping
    target = tuple(gm[hm[i] - 1] for i in range(3))
    for e in PermutationElement:
        if e.mapping == target:
            return e
    raise AssertionError("group is closed")


def _h_gen(gen: int, u):
    """Generator action on u in the projective chart R u {inf}."""
    is_inf = isinstance(u, float) and math.isinf(u)
    if gen == 1:  # 1/u with 0 <-> inf
        if is_inf:
            return 0
        if u == 0:
            return INFINITY
        return Fraction(1, u) if isinstance(u, int) else 1 / u
    if gen == 2:  # -(1+u), fixing inf
        return INFINITY if is_inf else -(1 + u)
    raise AssertionError("unknown generator")


def act_u(g: PermutationElement, u):
    """Image of u under h_g; u may be int, float, Fraction, or +-inf."""
    if isinstance(u, float) and math.isinf(u):
        u = INFINITY
    for gen in reversed(g.word):
        u = _h_gen(gen, u)
    return u


def act_alpha(g: PermutationElement, alpha: CouplingTriple) -> CouplingTriple:
    a = list(alpha.rational())
    for gen in reversed(g.word):
        if gen == 1:
            a = [a[1], a[0], a[2]]
        else:
            a = [a[0], -a[2], -a[1]]
    return CouplingTriple(*a)


def act_mass(g: PermutationElement, m: MassTriple) -> MassTriple:
    v = list(m.rational())
    for gen in reversed(g.word):
        if gen == 1:
            v = [v[1], v[0], v[2]]
        else:
            v = [v[0], v[2], v[1]]
    return MassTriple(*v)


def act_beta(g: PermutationElement, beta: tuple):
    """Action on the beta chart; undefined when the transformed third
    coupling slot vanishes (ChartUndefined)."""
    b1, b2 = beta
    alpha = CouplingTriple(Fraction(b1), Fraction(b2), Fraction(1))
    out = act_alpha(g, alpha).rational()
    if out[2] == 0:
        raise ChartUndefinedError("transformed couplings have zero third component")
    return (out[0] / out[2], out[1] / out[2])


def interval_permutation(g: PermutationElement) -> dict[IntervalId, IntervalId]:
    """How h_g permutes the intervals: h1 swaps I1 and I2, h2 swaps I1 and I3."""
    order = [IntervalId.I1, IntervalId.I2, IntervalId.I3]
    idx = [0, 1, 2]
    for gen in reversed(g.word):
        swap = {1: (1, 0, 2), 2: (2, 1, 0)}[gen]
        idx = [swap[i] for i in idx]
    return {order[k]: order[idx[k]] for k in range(3)}


def covariance_factor(g: PermutationElement, u):
    """eps_g with f(u; alpha, m) = eps_g(u) * f(h_g(u); phi_g(alpha), pi_g(m)).

    Built recursively along the generator word; eps_1(u) = -u^5 and
    eps_2(u) = -1.
    """
    word = g.word
    if not word:
        return 1
    first, rest = word[0], word[1:]
    g_rest = _element_for_word(rest)
    eps_rest = covariance_factor(g_rest, u)
    u_rest = act_u(g_rest, u)
    if first == 1:
        if u_rest == 0 or (isinstance(u_rest, float) and math.isinf(u_rest)):
            raise InputError("covariance factor has a pole at this u")
        eps_first = -(u_rest**5)
    else:
        eps_first = -1
    return eps_rest * eps_first


def _element_for_word(word: tuple[int, ...]) -> PermutationElement:
    img = [1, 2, 3]
    for gen in reversed(word):
        swap = {1: (2, 1, 3), 2: (1, 3, 2)}[gen]
        img = [swap[x - 1] for x in img]
    target = tuple(img)
    for e in PermutationElement:
        if e.mapping == target:
            return e
    raise AssertionError("unreachable")


def check_f_covariance(g: PermutationElement, u, alpha: CouplingTriple, m: MassTriple) -> float:
    """Relative residual of the polynomial covariance identity at u.

    Exact inputs give exactly 0.0.  The residual is normalized by
    max(1, |f(u)|) so it is meaningful across parameter scales.
    """
    hu = act_u(g, u)
    if hu == 0 or hu == -1 or (isinstance(hu, float) and math.isinf(hu)):
        raise InputError("transformed u is a collision value")
    rhs = build_quintic(alpha, m)(u)
    lhs = covariance_factor(g, u) * build_quintic(act_alpha(g, alpha), act_mass(g, m))(hu)
    return float(abs(lhs - rhs)) / max(1.0, float(abs(rhs)))


def check_gamma_covariance(g: PermutationElement, u, m: MassTriple) -> float:
    """Relative residual of psi_g(c(h_g(u); pi_g(m))) = c(u; m).

    Requires both curve points finite; exact inputs give exactly 0.0.
    """
    from .atlas import gamma_point

    base = gamma_point(u, m)
    if base.at_infinity:
        raise InputError("base curve point is at infinity")
    hu = act_u(g, u)
    moved = gamma_point(hu, act_mass(g, m))
    if moved.at_infinity:
        raise InputError("transformed curve point is at infinity")
    back = act_beta(g, moved.point)
    db1 = abs(Fraction(back[0]) - Fraction(base.point[0]))
    db2 = abs(Fraction(back[1]) - Fraction(base.point[1]))
    scale = max(1.0, abs(float(base.point[0])), abs(float(base.point[1])))
    return float(max(db1, db2)) / scale
