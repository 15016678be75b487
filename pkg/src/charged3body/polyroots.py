"""Certified real-root isolation for polynomials with rational coefficients.

Polynomials are coefficient lists in ascending order (index = power).  All
root *counting* decisions (how many roots in an interval, whether a multiple
root exists) are made with exact integer arithmetic: Sturm chains built from
pseudo-remainders that are only ever scaled by positive constants, so sign
variations are exact.  Floating point enters only when converting a certified
rational enclosure to a ``float`` for the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

MINUS_INF = object()
PLUS_INF = object()


def rationalize(coeffs: Sequence) -> list[Fraction]:
    """Exact conversion; floats are binary rationals so nothing is lost."""
    out = []
    for c in coeffs:
        if isinstance(c, Fraction):
            out.append(c)
        elif isinstance(c, int):
            out.append(Fraction(c))
        elif isinstance(c, float):
            if not math.isfinite(c):
                raise ValueError("non-finite coefficient")
            out.append(Fraction(c))
        else:
            out.append(Fraction(c))
    return out


def clear_denominators(coeffs: Sequence[Fraction]) -> list[int]:
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in coeffs]


def trim(p: Sequence[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[int]) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    return len(trim(p)) - 1


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def derivative(p: Sequence[int]) -> list[int]:
    return [k * c for k, c in enumerate(p)][1:]


def content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, abs(c))
    return g or 1


def primitive(p: Sequence[int]) -> list[int]:
    p = trim(p)
    g = content(p)
    return [c // g for c in p]


def _neg_scaled_rem(f: list[int], g: list[int]) -> list[int]:
    """-rem(f, g) up to a positive constant factor, in integer arithmetic.

    Each elimination step multiplies the running remainder by lc(g)^2 > 0, so
    the sign of the result agrees with the sign of the true remainder.
    """
    f = list(f)
    g = trim(g)
    dg = len(g) - 1
    lg = g[-1]
    lg2 = lg * lg
    while True:
        f = trim(f)
        df = len(f) - 1
        if df < dg:
            break
        lf = f[-1]
        shift = df - dg
        f = [lg2 * c for c in f]
        for i, gc in enumerate(g):
            f[i + shift] -= lf * lg * gc
        f = trim(f)
        if len(f) - 1 == df:  # cancellation must remove the top term
            raise AssertionError("pseudo-remainder failed to reduce degree")
    return [-c for c in f]


def sturm_chain(p: Sequence[int]) -> list[list[int]]:
    """Sturm chain of p; ends early (last element nonconstant) iff p has a
    multiple real or complex root, in which case the last element is a
    greatest common divisor of p and p'."""
    p0 = primitive(p)
    if not p0:
        raise ValueError("zero polynomial")
    chain = [p0]
    d = primitive(derivative(p0))
    if d:
        chain.append(d)
    while len(chain[-1]) - 1 > 0:
        r = _neg_scaled_rem(chain[-2], chain[-1])
        r = trim(r)
        if not r:
            break
        chain.append(primitive(r))
    return chain


def chain_is_squarefree(chain: list[list[int]]) -> bool:
    return len(chain[-1]) - 1 == 0


def sign_of(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def eval_scaled_at_rational(p: Sequence[int], num: int, den: int) -> int:
    """p(num/den) * den^deg(p): integer-only, same sign as p(num/den) for den > 0."""
    acc = 0
    dpow = 1
    for c in reversed(list(p)):
        acc = acc * num + c * dpow
        dpow *= den
    return acc


def _sign_at(p: Sequence[int], x) -> int:
    if x is MINUS_INF:
        d = len(p) - 1
        s = sign_of(p[-1])
        return s if d % 2 == 0 else -s
    if x is PLUS_INF:
        return sign_of(p[-1])
    if isinstance(x, Fraction):
        return sign_of(eval_scaled_at_rational(p, x.numerator, x.denominator))
    return sign_of(evaluate(p, x))


def variations(chain: list[list[int]], x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def count_roots(chain: list[list[int]], a, b) -> int:
    """Number of distinct real roots in the open interval (a, b).

    Endpoints may be MINUS_INF / PLUS_INF; finite endpoints must not be roots
    of the polynomial (use exact evaluation to check beforehand).
    """
    return variations(chain, a) - variations(chain, b)


def root_bound(p: Sequence[int]) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    p = trim(p)
    lead = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=0)
    return 1 + Fraction(m, lead)


# -- exact polynomial gcd / square-free decomposition over the rationals ----


def _frac_rem(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg and any(c != 0 for c in f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) - 1 < dg:
            break
        q = f[-1] / lg
        shift = len(f) - 1 - dg
        for i, gc in enumerate(g):
            f[i + shift] -= q * gc
        f.pop()
        while f and f[-1] == 0:
            f.pop()
    return f


def poly_gcd(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """Primitive gcd with positive leading coefficient."""
    a = [Fraction(c) for c in trim(p)]
    b = [Fraction(c) for c in trim(q)]
    if not a:
        return primitive(q) if trim(q) else []
    if not b:
        return primitive(p)
    while b:
        a, b = b, _frac_rem(a, b)
        b = [c for c in b]
        while b and b[-1] == 0:
            b.pop()
    g = clear_denominators(a)
    g = primitive(g)
    if g[-1] < 0:
        g = [-c for c in g]
    return g


def _frac_div_exact(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    g = list(g)
    while g and g[-1] == 0:
        g.pop()
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return []
    if len(f) < len(g):
        raise AssertionError("division was not exact")
    out = [Fraction(0)] * (len(f) - len(g) + 1)
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg:
        while f and f[-1] == 0:
            f.pop()
        if len(f) - 1 < dg:
            break
        q = f[-1] / lg
        shift = len(f) - 1 - dg
        out[shift] = q
        for i, gc in enumerate(g):
            f[i + shift] -= q * gc
        f.pop()
    if any(c != 0 for c in f):
        raise AssertionError("division was not exact")
    return out


def square_free_decomposition(p: Sequence[int]) -> list[tuple[list[int], int]]:
    """Yun's algorithm: returns [(factor, multiplicity), ...] with square-free,
    pairwise-coprime integer factors whose powered product equals p up to a
    constant."""
    p = primitive(p)
    if len(p) - 1 <= 0:
        return []
    fp = [Fraction(c) for c in p]
    dp = [Fraction(c) for c in derivative(p)]
    g = [Fraction(c) for c in poly_gcd(p, derivative(p))]
    if len(g) - 1 == 0:
        return [(p, 1)]
    out: list[tuple[list[int], int]] = []
    b = _frac_div_exact(fp, g)
    c = _frac_div_exact(dp, g)
    i = 1
    while True:
        d = [x - y for x, y in zip_pad(c, frac_derivative(b))]
        while d and d[-1] == 0:
            d.pop()
        if len(b) - 1 <= 0:
            break
        if not d:
            if len(b) - 1 > 0:
                out.append((primitive(clear_denominators(b)), i))
            break
        a = [Fraction(x) for x in poly_gcd(clear_denominators(b), clear_denominators(d))]
        if len(a) - 1 > 0:
            out.append((primitive(clear_denominators(a)), i))
        b = _frac_div_exact(b, a)
        c = _frac_div_exact(d, a)
        i += 1
    return out


def frac_derivative(p: list[Fraction]) -> list[Fraction]:
    return [k * c for k, c in enumerate(p)][1:]


def zip_pad(a: list[Fraction], b: list[Fraction]):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return zip(a, b)


# -- isolation ---------------------------------------------------------------


@dataclass(frozen=True)
class Enclosure:
    """Certified enclosure of a single real root of a square-free factor.

    ``lo == hi`` marks an exactly-known rational root; otherwise the factor
    changes sign between the endpoints and contains exactly one root there.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> float:
        if self.exact:
            return float(self.lo)
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> float:
        return float(self.hi - self.lo)


def isolate_squarefree(p: list[int], chain: list[list[int]] | None = None) -> list[Enclosure]:
    """Disjoint enclosures of all real roots of a square-free integer poly."""
    p = primitive(p)
    if len(p) - 1 <= 0:
        return []
    if chain is None:
        chain = sturm_chain(p)
    if not chain_is_squarefree(chain):
        raise AssertionError("isolate_squarefree needs a square-free input")
    bound = root_bound(p)
    out: list[Enclosure] = []
    stack = [(-bound, bound, count_roots(chain, MINUS_INF, PLUS_INF))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            if not _sign_at(p, lo) * _sign_at(p, hi) < 0:
                raise AssertionError("single-root interval without sign change")
            out.append(Enclosure(lo, hi))
            continue
        mid = (lo + hi) / 2
        if _sign_at(p, mid) == 0:
            out.append(Enclosure(mid, mid))
            # carve out a punctured neighbourhood of the exact root so the
            # recursion never counts over an endpoint that is itself a root
            eps = (hi - lo) / 4
            while True:
                a2, b2 = mid - eps, mid + eps
                if (
                    a2 > lo
                    and b2 < hi
                    and _sign_at(p, a2) != 0
                    and _sign_at(p, b2) != 0
                    and count_roots(chain, a2, b2) == 1
                ):
                    break
                eps /= 2
            stack.append((lo, a2, count_roots(chain, lo, a2)))
            stack.append((b2, hi, count_roots(chain, b2, hi)))
            continue
        nl = count_roots(chain, lo, mid)
        stack.append((lo, mid, nl))
        stack.append((mid, hi, n - nl))
    out.sort(key=lambda e: e.lo)
    return out


def refine(p: list[int], enc: Enclosure, width: Fraction) -> Enclosure:
    """Shrink an enclosure by exact-sign bisection until hi - lo <= width."""
    if enc.exact:
        return enc
    lo, hi = enc.lo, enc.hi
    slo = _sign_at(p, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign_at(p, mid)
        if sm == 0:
            return Enclosure(mid, mid, enc.multiplicity)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return Enclosure(lo, hi, enc.multiplicity)


def refine_away_from(p: list[int], enc: Enclosure, points: Sequence[Fraction]) -> Enclosure:
    """Shrink the enclosure until every point in ``points`` lies strictly
    outside it (the caller guarantees none of them are roots)."""
    out = enc
    for pt in points:
        while not out.exact and out.lo <= pt <= out.hi:
            lo, hi = out.lo, out.hi
            if pt == lo:
                cand = (3 * lo + hi) / 4
            elif pt == hi:
                cand = (lo + 3 * hi) / 4
            else:
                cand = (lo + hi) / 2
            s = _sign_at(p, cand)
            if s == 0:
                out = Enclosure(cand, cand, out.multiplicity)
                break
            if s == _sign_at(p, lo):
                out = Enclosure(cand, hi, out.multiplicity)
            else:
                out = Enclosure(lo, cand, out.multiplicity)
    return out


def isolate_all(p: Sequence[int], target_width: Fraction | None = None) -> list[tuple[Enclosure, list[int]]]:
    """Isolate all real roots of an integer polynomial with multiplicities.

    Returns (enclosure, square-free factor) pairs sorted by root value; the
    factor is the one the enclosure certifies, needed for further refinement.
    Enclosures of distinct roots are pairwise disjoint.
    """
    p0 = primitive(list(p))
    if len(p0) - 1 <= 0:
        return []
    chain = sturm_chain(p0)
    if chain_is_squarefree(chain):
        # common case: skip the square-free decomposition entirely
        factors = [(p0, 1)]
        roots = [(e, p0) for e in isolate_squarefree(p0, chain)]
        if target_width is not None:
            roots = [(refine(fac, e, target_width), fac) for e, fac in roots]
        return sorted(roots, key=lambda ef: (ef[0].lo, ef[0].hi))
    factors = square_free_decomposition(p0)
    roots: list[tuple[Enclosure, list[int]]] = []
    for fac, mult in factors:
        for enc in isolate_squarefree(fac):
            e = Enclosure(enc.lo, enc.hi, mult)
            if target_width is not None:
                e = refine(fac, e, target_width)
            roots.append((e, fac))
    # roots of distinct square-free factors are distinct reals, but their
    # enclosures may overlap; quarter the offenders until disjoint
    while True:
        roots.sort(key=lambda ef: (ef[0].lo, ef[0].hi))
        overlap = False
        for k in range(len(roots) - 1):
            a, fa = roots[k]
            b, fb = roots[k + 1]
            if b.lo < a.hi or (a.exact and b.exact and a.lo == b.lo):
                overlap = True
                if not a.exact:
                    roots[k] = (refine(fa, a, (a.hi - a.lo) / 4), fa)
                if not b.exact:
                    roots[k + 1] = (refine(fb, b, (b.hi - b.lo) / 4), fb)
        if not overlap:
            break
    return roots
