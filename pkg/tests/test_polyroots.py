from fractions import Fraction

import pytest

from charged3body import polyroots as pr


def poly_from_roots(roots):
    """Integer polynomial with the given integer roots (ascending coeffs)."""
    p = [1]
    for r in roots:
        # multiply by (x - r)
        p = [0] + p
        for k in range(len(p) - 1):
            p[k] -= r * p[k + 1]
    return p


def test_evaluate_and_derivative():
    p = [1, -3, 2]  # 2x^2 - 3x + 1 = (2x-1)(x-1)
    assert pr.evaluate(p, 0) == 1
    assert pr.evaluate(p, 1) == 0
    assert pr.evaluate(p, Fraction(1, 2)) == 0
    assert pr.derivative(p) == [-3, 4]


def test_clear_denominators_exact_for_floats():
    cs = pr.rationalize([0.1, -2.5, 3])
    assert cs[0] == Fraction(0.1)  # exact binary value, not 1/10
    ints = pr.clear_denominators(cs)
    assert all(isinstance(c, int) for c in ints)


def test_sturm_counts_simple_cubic():
    # (x-1)(x-2)(x-3)
    p = poly_from_roots([1, 2, 3])
    chain = pr.sturm_chain(p)
    assert pr.chain_is_squarefree(chain)
    assert pr.count_roots(chain, pr.MINUS_INF, pr.PLUS_INF) == 3
    assert pr.count_roots(chain, Fraction(0), Fraction(5, 2)) == 2
    assert pr.count_roots(chain, Fraction(5, 2), pr.PLUS_INF) == 1


def test_sturm_detects_multiple_root():
    # (x-2)^2 (x+3)
    p = poly_from_roots([2, 2, -3])
    chain = pr.sturm_chain(p)
    assert not pr.chain_is_squarefree(chain)
    # the terminal element is a gcd containing the double root
    assert pr.degree(chain[-1]) == 1


def test_square_free_decomposition():
    # (x-2)^2 (x+3) (x^2+1)
    p = [1]
    for fac in ([-2, 1], [-2, 1], [3, 1], [1, 0, 1]):
        out = [0] * (len(p) + len(fac) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(fac):
                out[i + j] += a * b
        p = out
    dec = pr.square_free_decomposition(p)
    mults = sorted(m for _, m in dec)
    assert mults == [1, 2]
    for fac, m in dec:
        if m == 2:
            assert pr.degree(fac) == 1
            assert pr.evaluate(fac, 2) == 0
        else:
            assert pr.degree(fac) == 3
            assert pr.evaluate(fac, -3) == 0


def test_isolate_all_with_multiplicities():
    # (x-2)^2 (x+3) (x^2+1): roots -3 (mult 1), 2 (mult 2)
    p = [1]
    for fac in ([-2, 1], [-2, 1], [3, 1], [1, 0, 1]):
        out = [0] * (len(p) + len(fac) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(fac):
                out[i + j] += a * b
        p = out
    roots = pr.isolate_all(p, target_width=Fraction(1, 10**6))
    vals = [(round(e.value, 6), e.multiplicity) for e, _ in roots]
    assert vals == [(-3.0, 1), (2.0, 2)]


def test_isolation_separates_close_roots():
    # roots at 0 and 1/1024 via (1024x - 1) * x * (x - 3)
    p = [0, 1]  # x
    for fac in ([-1, 1024], [-3, 1]):
        out = [0] * (len(p) + len(fac) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(fac):
                out[i + j] += a * b
        p = out
    roots = pr.isolate_all(p)
    assert len(roots) == 3
    lows = [e.lo for e, _ in roots]
    his = [e.hi for e, _ in roots]
    assert all(h <= l for h, l in zip(his, lows[1:]))  # pairwise disjoint


def test_exact_rational_root_detection():
    # a root exactly at a bisection midpoint is reported as an exact point
    p = poly_from_roots([0, 5])  # x(x-5); 0 is the midpoint of (-B, B)
    roots = pr.isolate_all(p)
    exacts = [e for e, _ in roots if e.exact]
    assert any(e.lo == 0 for e in exacts)
    # and an awkward rational root still refines to full accuracy
    p2 = [-1, 2]  # 2x - 1
    (enc, _), = pr.isolate_all(p2, target_width=Fraction(1, 10**14))
    assert enc.value == pytest.approx(0.5, abs=1e-13)


def test_refine_reaches_width():
    p = poly_from_roots([1, 4, 9])
    roots = pr.isolate_all(p, target_width=Fraction(1, 10**13))
    for enc, _ in roots:
        assert enc.exact or (enc.hi - enc.lo) <= Fraction(1, 10**13)
    vals = sorted(e.value for e, _ in roots)
    assert vals == pytest.approx([1.0, 4.0, 9.0], abs=1e-12)


def test_root_certification_sign_change():
    p = poly_from_roots([-7, 2, 5])
    for enc, fac in pr.isolate_all(p, target_width=Fraction(1, 10**10)):
        if not enc.exact:
            assert pr.evaluate(fac, enc.lo) * pr.evaluate(fac, enc.hi) < 0


def test_wilkinson_style_stress():
    p = poly_from_roots(list(range(1, 11)))
    roots = pr.isolate_all(p, target_width=Fraction(1, 10**9))
    assert [round(e.value) for e, _ in roots] == list(range(1, 11))


def test_tight_cluster_resolved_exactly():
    # (x-1)(x-(1+2^-40))(x+5): the pair 2^-40 apart must come back as two
    # disjoint certified enclosures
    a = Fraction(1, 2**40)

    def mul(p, q):
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            for j, y in enumerate(q):
                out[i + j] += x * y
        return out

    poly = mul(mul([Fraction(-1), Fraction(1)], [-(1 + a), Fraction(1)]), [Fraction(5), Fraction(1)])
    ints = pr.clear_denominators(poly)
    roots = pr.isolate_all(ints, target_width=Fraction(1, 2**60))
    assert len(roots) == 3
    encs = sorted((e.lo, e.hi) for e, _ in roots)
    assert all(x[1] <= y[0] for x, y in zip(encs, encs[1:]))
    mids = [(lo + hi) / 2 for lo, hi in encs]
    assert mids[0] == pytest.approx(-5, abs=1e-12)
    assert float(mids[2] - mids[1]) == pytest.approx(float(a), rel=1e-6)
