import math

import numpy as np
import pytest

from cylembed.core import Polynomial, poly_eval
from cylembed.errors import G1Invalid, InputError, SeparationViolated
from cylembed.inner import BlaschkeProduct, blaschke_eval, distinct_points, \
    fiber
from cylembed.sigma import (SeparatingData, SigmaVariety,
                            assemble_embedding, build_g2, choose_alpha,
                            exceptional_base_points, make_variety,
                            refined_margin, separated_component, sigma_fiber)

F_SQUARE = BlaschkeProduct([0, 0])             # z^2
G1_CUBIC = Polynomial([0, 1, 0, -1])           # x - x^3
X = Polynomial([0, 1])


@pytest.fixture(scope="module")
def worked_variety():
    g2 = build_g2(F_SQUARE, G1_CUBIC)
    return make_variety(F_SQUARE, G1_CUBIC, g2)


class TestBuildG2:
    def test_worked_example_needs_cubic(self):
        # over z = 1 the fiber is {1, -1} and g1 = x - x^3 vanishes at both,
        # so the quadratic base factor alone cannot separate; x * x^2 does
        g2 = build_g2(F_SQUARE, G1_CUBIC)
        assert g2.coeffs == pytest.approx([0, 0, 0, 1])

    def test_already_separating_g1(self):
        g2 = build_g2(F_SQUARE, X)
        assert g2.coeffs == pytest.approx([0, 0, 1])

    def test_symmetric_fibers(self):
        g2 = build_g2(BlaschkeProduct([0.5, -0.5]), X)
        assert g2.coeffs == pytest.approx([0, 0, 1])

    def test_invalid_g1_rejected(self):
        # g1 = x^2 has vanishing derivative at the critical-fiber point 0
        with pytest.raises(G1Invalid):
            build_g2(F_SQUARE, Polynomial([0, 0, 1]))

    def test_fiber_constant_g1_rejected(self):
        # g1 = 1 + x^2 equals 1 + z on every fiber of z^2: no fiber is
        # separated anywhere, which the resultant detects as identically zero
        with pytest.raises(G1Invalid):
            exceptional_base_points(F_SQUARE, Polynomial([1, 0, 1]))

    def test_exceptional_points_of_worked_example(self):
        pts = exceptional_base_points(F_SQUARE, G1_CUBIC)
        assert len(pts) == 1
        assert pts[0] == pytest.approx(1, abs=1e-8)

    def test_vanishing_conditions(self):
        g2 = build_g2(F_SQUARE, G1_CUBIC)
        assert abs(poly_eval(g2, 0)) < 1e-12
        assert abs(poly_eval(g2.derivative(), 0)) < 1e-12


class TestSigmaFiber:
    def test_closed_form(self, worked_variety):
        # odd fiber symmetry gives Sigma_z = {1 - 1/z}
        vals = sigma_fiber(worked_variety, 0.5)
        assert vals == pytest.approx([-1])

    def test_empty_when_g1_separates(self):
        v = make_variety(F_SQUARE, X, build_g2(F_SQUARE, X))
        assert sigma_fiber(v, 0.37 + 0.11j) == []

    def test_boundary_point(self, worked_variety):
        assert sigma_fiber(worked_variety, 1) == pytest.approx([0])

    def test_separation_violated(self):
        # bypass validation: g2 = x^2 collides exactly where g1 does
        data = SeparatingData(F_SQUARE, G1_CUBIC, Polynomial([0, 0, 1]), (0,))
        with pytest.raises(SeparationViolated):
            sigma_fiber(SigmaVariety(data), 1)

    def test_fiber_size_bound_on_polar_grid(self, worked_variety):
        d = worked_variety.data.f.degree
        bound = d * (d - 1) // 2
        for r in np.linspace(0, 1, 64):
            for t in np.linspace(0, 2 * np.pi, 64, endpoint=False):
                z = r * np.exp(1j * t)
                assert len(sigma_fiber(worked_variety, complex(z))) <= bound

    def test_make_variety_validates_g2(self):
        with pytest.raises(InputError):
            make_variety(F_SQUARE, G1_CUBIC, Polynomial([0, 1]))


class TestChooseAlpha:
    def test_worked_example_margin(self, worked_variety):
        choice = choose_alpha(worked_variety)
        assert choice.margin >= 0.9
        assert not choice.sigma_empty
        assert choice.disc.radius >= choice.arc.half_length

    def test_empty_sigma_returns_zero(self):
        v = make_variety(F_SQUARE, X, build_g2(F_SQUARE, X))
        choice = choose_alpha(v)
        assert choice.alpha.is_zero()
        assert choice.sigma_empty
        assert math.isinf(choice.margin)
        assert choice.disc.radius == 1.0

    def test_symmetric_case_empty(self):
        f = BlaschkeProduct([0.5, -0.5])
        v = make_variety(f, X, build_g2(f, X))
        choice = choose_alpha(v)
        assert choice.alpha.is_zero()
        assert choice.sigma_empty

    def test_degree_one_inner(self):
        f = BlaschkeProduct([0.3])
        v = make_variety(f, X, Polynomial([0, 0, 1]))
        choice = choose_alpha(v)
        assert choice.alpha.is_zero()
        assert math.isinf(choice.margin)

    def test_refinement_stability(self, worked_variety):
        choice = choose_alpha(worked_variety)
        assert refined_margin(worked_variety, choice) > choice.margin / 2


class TestAssemble:
    def test_worked_example(self, worked_variety):
        choice = choose_alpha(worked_variety)
        rep = assemble_embedding(worked_variety, choice.alpha, choice.disc,
                                 rng=np.random.default_rng(0))
        assert rep.passed
        assert rep.min_pair_distance > 0
        assert rep.boundary_deviation < 1e-9
        assert rep.n_pairs >= 9000

    def test_alpha_one_simplifies_to_identity(self, worked_variety):
        # g1 + 1 * g2 = x - x^3 + x^3 = x
        g = separated_component(worked_variety, Polynomial([1]))
        for x in (0.3, -0.2 + 0.4j, 0.9j):
            assert g(x) == pytest.approx(x)

    def test_empty_sigma_embedding(self):
        v = make_variety(F_SQUARE, X, build_g2(F_SQUARE, X))
        choice = choose_alpha(v)
        rep = assemble_embedding(v, choice.alpha, choice.disc,
                                 rng=np.random.default_rng(1))
        assert rep.passed


class TestEquationEquivalence:
    """g separates the fiber over z exactly when alpha(z) avoids Sigma_z."""

    def test_two_sided_brute_force(self, worked_variety):
        v = worked_variety
        choice = choose_alpha(v)
        rng = np.random.default_rng(11)
        g = separated_component(v, choice.alpha)
        for _ in range(50):
            z = 0.95 * math.sqrt(rng.uniform()) * \
                np.exp(2j * np.pi * rng.uniform())
            z = complex(z)
            if abs(z) < 0.05:
                continue
            sig = sigma_fiber(v, z)
            pts = distinct_points(fiber(v.data.f, z))
            dists = [abs(g(p) - g(q)) for i, p in enumerate(pts)
                     for q in pts[i + 1:]]
            if not dists:
                continue
            gap = min(abs(poly_eval(choice.alpha, z) - a) for a in sig) \
                if sig else math.inf
            assert min(dists) > 0
            if not math.isinf(gap):
                # separation is controlled by the distance to Sigma_z
                dg2 = [abs(poly_eval(v.data.g2, p) - poly_eval(v.data.g2, q))
                       for i, p in enumerate(pts) for q in pts[i + 1:]]
                assert min(dists) >= gap * min(dg2) * (1 - 1e-6)

    def test_collision_when_alpha_hits_sigma(self, worked_variety):
        v = worked_variety
        rng = np.random.default_rng(12)
        g1, g2, f = v.data.g1, v.data.g2, v.data.f
        for _ in range(50):
            z = complex(0.9 * math.sqrt(rng.uniform()) *
                        np.exp(2j * np.pi * rng.uniform()))
            if abs(z) < 0.05:
                continue
            for a in sigma_fiber(v, z):
                pts = distinct_points(fiber(f, z))
                vals = [poly_eval(g1, p) + a * poly_eval(g2, p) for p in pts]
                collide = min(abs(u - w) for i, u in enumerate(vals)
                              for w in vals[i + 1:])
                assert collide < 1e-7 * max(1.0, abs(a))


class TestNearCriticalBehavior:
    def test_g_matches_g1_at_critical_points(self, worked_variety):
        # g2 vanishes doubly at the critical-fiber points, so both the
        # value and derivative of g collapse onto g1 there
        v = worked_variety
        choice = choose_alpha(v)
        alpha = choice.alpha
        g1, g2, f = v.data.g1, v.data.g2, v.data.f
        g = separated_component(v, alpha)
        N, D = f.numerator(), f.denominator()
        for z in v.data.critical_vals:
            for c in distinct_points(fiber(f, z)):
                assert abs(g(c) - poly_eval(g1, c)) < 1e-10
                fp = poly_eval((N.derivative() * D - N * D.derivative()), c) \
                    / poly_eval(D, c) ** 2
                dg = poly_eval(g1.derivative(), c) + \
                    poly_eval(alpha.derivative(), blaschke_eval(f, c)) * fp * \
                    poly_eval(g2, c) + \
                    poly_eval(alpha, blaschke_eval(f, c)) * \
                    poly_eval(g2.derivative(), c)
                assert abs(dg - poly_eval(g1.derivative(), c)) < 1e-10
