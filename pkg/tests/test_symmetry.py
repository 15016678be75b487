import math
import random
from fractions import Fraction

import pytest

from charged3body.errors import ChartUndefinedError
from charged3body.quintic import CouplingTriple, IntervalId, MassTriple, count_roots_by_interval
from charged3body.errors import OnDiscriminantError
from charged3body.symmetry import (
    INFINITY,
    PermutationElement as P,
    act_alpha,
    act_beta,
    act_mass,
    act_u,
    check_f_covariance,
    check_gamma_covariance,
    compose,
    covariance_factor,
    interval_permutation,
)

EQUAL = MassTriple(1, 1, 1)


class TestGroupStructure:
    def test_generators_are_involutions(self):
        assert P.P1.is_involution()
        assert P.P2.is_involution()

    def test_closure_table(self):
        table = {(g, h): compose(g, h) for g in P for h in P}
        assert set(table.values()) <= set(P)
        # each row/column is a permutation of the group
        for g in P:
            assert len({table[(g, h)] for h in P}) == 6
            assert len({table[(h, g)] for h in P}) == 6

    def test_words_compose_consistently(self):
        assert compose(P.P1, P.P2) is P.P3
        assert compose(P.P2, P.P1) is P.P4
        assert compose(P.P1, compose(P.P2, P.P1)) is P.P5

    def test_u_action_realizes_group(self):
        # composing generator actions agrees with the composite element
        for g in P:
            for h in P:
                u = Fraction(3, 7)
                via_elements = act_u(g, act_u(h, u))
                direct = act_u(compose(g, h), u)
                assert via_elements == direct

    def test_all_actions_compose(self):
        a = CouplingTriple(2, 3, 5)
        m = MassTriple(1, 2, 3)
        for g in P:
            for h in P:
                gh = compose(g, h)
                assert act_alpha(g, act_alpha(h, a)).rational() == act_alpha(gh, a).rational()
                assert act_mass(g, act_mass(h, m)).rational() == act_mass(gh, m).rational()


class TestUAction:
    def test_h2_involution_samples(self):
        for u in (-3, 0.5, 7):
            assert act_u(P.P2, act_u(P.P2, u)) == u

    def test_h1_maps_i2_to_i1(self):
        img = act_u(P.P1, Fraction(-1, 2))
        assert img == -2
        assert IntervalId.of(img) is IntervalId.I1

    def test_collision_points_preserved(self):
        collision = {Fraction(-1), Fraction(0), INFINITY}
        for g in P:
            image = set()
            for c in collision:
                v = act_u(g, c)
                image.add(INFINITY if isinstance(v, float) and math.isinf(v) else Fraction(v))
            assert image == {Fraction(-1), Fraction(0), INFINITY}

    def test_h2_fixes_minus_half(self):
        assert act_u(P.P2, Fraction(-1, 2)) == Fraction(-1, 2)

    def test_boundary_mapping(self):
        assert act_u(P.P2, 0) == -1
        assert act_u(P.P1, 0) == INFINITY


class TestParameterActions:
    def test_phi1_swaps_first_two(self):
        out = act_alpha(P.P1, CouplingTriple(1, 2, 3))
        assert out.rational() == (2, 1, 3)

    def test_phi2_signed_swap(self):
        out = act_alpha(P.P2, CouplingTriple(1, 2, 3))
        assert out.rational() == (1, -3, -2)

    def test_psi2_form(self):
        b = act_beta(P.P2, (Fraction(3), Fraction(-2)))
        assert b == (Fraction(3, 2), Fraction(-1, 2))
        back = act_beta(P.P2, b)
        assert back == (3, -2)

    def test_psi_chart_compatibility_random(self):
        rng = random.Random(9)
        for _ in range(40):
            a = CouplingTriple(*(Fraction(rng.randint(-9, 9)) or 1 for _ in range(3)))
            for g in P:
                out = act_alpha(g, a).rational()
                if out[2] == 0 or a.rational()[2] == 0:
                    continue
                b = (a.rational()[0] / a.rational()[2], a.rational()[1] / a.rational()[2])
                assert act_beta(g, b) == (out[0] / out[2], out[1] / out[2])

    def test_chart_undefined(self):
        with pytest.raises(ChartUndefinedError):
            act_beta(P.P2, (Fraction(2), Fraction(0)))


class TestFCovariance:
    def test_identity_element(self):
        assert check_f_covariance(P.P0, Fraction(2), CouplingTriple(1, 2, 3), MassTriple(1, 2, 3)) == 0

    def test_generator_one_exact(self):
        r = check_f_covariance(P.P1, Fraction(2), CouplingTriple(1, 2, 3), MassTriple(1, 2, 3))
        assert r == 0

    def test_generator_two_example(self):
        r = check_f_covariance(
            P.P2, Fraction(3, 10), CouplingTriple(1, 2, 3), MassTriple(1, 2, 3)
        )
        assert r == 0

    def test_all_elements_random_exact(self):
        from charged3body.errors import InputError

        rng = random.Random(13)
        for _ in range(30):
            u = Fraction(rng.randint(-30, 30), rng.randint(1, 11))
            if u in (0, -1):
                continue
            a = CouplingTriple(*(Fraction(rng.randint(-8, 8)) or 1 for _ in range(3)))
            m = MassTriple(*(Fraction(rng.randint(1, 8)) for _ in range(3)))
            for g in P:
                try:
                    r = check_f_covariance(g, u, a, m)
                except InputError:
                    continue  # u maps to a pole or collision point under g
                assert r == 0

    def test_float_inputs_small_residual(self):
        rng = random.Random(14)
        for _ in range(200):
            u = rng.uniform(-4, 4)
            if abs(u) < 1e-2 or abs(u + 1) < 1e-2:
                continue
            a = CouplingTriple(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))
            m = MassTriple(rng.uniform(0.2, 3), rng.uniform(0.2, 3), rng.uniform(0.2, 3))
            for g in (P.P1, P.P2):
                assert check_f_covariance(g, u, a, m) <= 1e-10


class TestGammaCovariance:
    def test_mirror_symmetry_equal_masses(self):
        # swapping the first two bodies reflects the curve across the diagonal
        from charged3body.atlas import gamma_point

        c2 = gamma_point(Fraction(2), EQUAL)
        c_half = gamma_point(Fraction(1, 2), EQUAL)
        assert (c_half.point[1], c_half.point[0]) == c2.point
        assert check_gamma_covariance(P.P1, Fraction(2), EQUAL) == 0

    def test_generator_two_random(self):
        rng = random.Random(15)
        n = 0
        while n < 25:
            u = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
            m = MassTriple(*(Fraction(rng.randint(1, 6)) for _ in range(3)))
            from charged3body.errors import InputError

            try:
                assert check_gamma_covariance(P.P2, u, m) == 0
                n += 1
            except InputError:
                continue

    def test_cusp_maps_to_cusp(self):
        # the symmetric cusp at u=1 is fixed by the mirror action
        from charged3body.atlas import cusp_parameters

        cusps = cusp_parameters(EQUAL)
        assert any(abs(act_u(P.P1, c) - c) < 1e-9 for c in cusps)


class TestCountEquivariance:
    def test_interval_permutation_table(self):
        t1 = interval_permutation(P.P1)
        assert t1[IntervalId.I1] is IntervalId.I2
        assert t1[IntervalId.I2] is IntervalId.I1
        assert t1[IntervalId.I3] is IntervalId.I3
        t2 = interval_permutation(P.P2)
        assert t2[IntervalId.I1] is IntervalId.I3
        assert t2[IntervalId.I3] is IntervalId.I1
        assert t2[IntervalId.I2] is IntervalId.I2

    def test_counts_equivariant_random(self):
        rng = random.Random(21)
        done = 0
        while done < 60:
            a = CouplingTriple(*(Fraction(rng.randint(-9, 9)) or 1 for _ in range(3)))
            m = MassTriple(*(Fraction(rng.randint(1, 9)) for _ in range(3)))
            try:
                base = count_roots_by_interval(a, m)
            except OnDiscriminantError:
                continue
            if base.zero_multiplicity or base.infinity_multiplicity or base.minus_one_multiplicity:
                continue
            by_interval = {
                IntervalId.I1: base.n1,
                IntervalId.I2: base.n2,
                IntervalId.I3: base.n3,
            }
            for g in P:
                moved = count_roots_by_interval(act_alpha(g, a), act_mass(g, m))
                perm = interval_permutation(g)
                assert moved.n1 == by_interval[_preimage(perm, IntervalId.I1)]
                assert moved.n2 == by_interval[_preimage(perm, IntervalId.I2)]
                assert moved.n3 == by_interval[_preimage(perm, IntervalId.I3)]
            done += 1


def _preimage(perm: dict, target: IntervalId) -> IntervalId:
    for src, dst in perm.items():
        if dst is target:
            return src
    raise AssertionError


class TestCovarianceFactor:
    def test_generator_factors(self):
        assert covariance_factor(P.P1, Fraction(2)) == -32
        assert covariance_factor(P.P2, Fraction(2)) == -1

    def test_composite_factor(self):
        # for the element acting first by generator 2: eps(u) = (-(1+u))^5
        u = Fraction(3, 7)
        assert covariance_factor(P.P3, u) == (-(1 + u)) ** 5
