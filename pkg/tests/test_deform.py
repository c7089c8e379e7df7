import math

import numpy as np
import pytest

from cylembed.core import PlanarDomain, Polynomial
from cylembed.errors import (InputError, NoConvergence, VanishingCoefficient)
from cylembed.deform import (DefectFunctional, initial_state,
                             linearized_coefficient, newton_continue,
                             perturbation_family, series_from_boundary,
                             verify_on_hypersurface)
from cylembed.inner import BlaschkeProduct, blaschke_eval
from cylembed.rh import kernel_dimension, rh_problem

G0 = Polynomial([0, 0.5])
F3 = BlaschkeProduct([0, 0, 0])


class TestFamilies:
    def test_reduce_to_cylinder_at_zero(self):
        z = np.exp(2j * np.pi * np.linspace(0, 1, 64, endpoint=False))
        w = 0.3 * z
        for name in ("radial", "re_w", "mixed"):
            rho = perturbation_family(name, 0.0)
            assert np.max(np.abs(rho.rho(z, w))) < 1e-14

    def test_rho_is_real(self):
        rng = np.random.default_rng(0)
        z = rng.normal(size=32) + 1j * rng.normal(size=32)
        w = rng.normal(size=32) + 1j * rng.normal(size=32)
        for name in ("radial", "re_w", "mixed"):
            vals = perturbation_family(name, 0.03).rho(z, w)
            assert np.max(np.abs(np.imag(vals))) == 0

    def test_unknown_family(self):
        with pytest.raises(InputError):
            perturbation_family("cubic", 0.1)


class TestLinearizedCoefficient:
    def test_unperturbed_gives_twice_f(self):
        state = initial_state(F3, G0)
        a = linearized_coefficient(perturbation_family("radial", 0.0), state)
        assert np.allclose(a, 2 * state.samples, atol=1e-12)
        # index of the coefficient equals the degree of the inner function
        dom = PlanarDomain.disc(samples=state.boundary_z.size)
        p = rh_problem(dom, (a,), (np.zeros(state.boundary_z.size),))
        from cylembed.rh import rh_index
        assert rh_index(p) == F3.degree

    def test_radial_perturbation_leaves_a_unchanged(self):
        state = initial_state(F3, G0)
        a0 = linearized_coefficient(perturbation_family("radial", 0.0), state)
        a1 = linearized_coefficient(perturbation_family("radial", 0.04), state)
        assert np.array_equal(a0, a1)

    def test_mixed_adds_g0_term(self):
        eps = 0.02
        state = initial_state(F3, G0)
        a = linearized_coefficient(perturbation_family("mixed", eps), state)
        assert np.allclose(a, 2 * state.samples + eps * state.g0_samples,
                           atol=1e-12)

    def test_vanishing_coefficient_detected(self):
        state = initial_state(F3, G0)
        degenerate = DefectFunctional(
            "flat", 0.0,
            lambda z, w: np.zeros(np.shape(z)),
            lambda z, w: 1e-9 * np.ones(np.shape(z), dtype=complex))
        with pytest.raises(VanishingCoefficient):
            linearized_coefficient(degenerate, state)


class TestNewtonContinue:
    def test_zero_perturbation_is_fixed_point(self):
        res = newton_continue(perturbation_family("radial", 0.0), F3, G0)
        assert res.converged
        assert res.iterations == 0
        recon = res.state.evaluate(res.state.boundary_z)
        exact = blaschke_eval(F3, res.state.boundary_z)
        assert np.max(np.abs(recon - exact)) < 1e-12

    def test_radial_matches_explicit_solution(self):
        eps = 0.01
        res = newton_continue(perturbation_family("radial", eps), F3, G0)
        assert res.converged
        assert res.residuals[-1] < 1e-8
        # feasibility witness: any solution satisfies |f| = sqrt(1 - eps)
        # on the boundary, exactly the equation scaled f0 solves
        assert np.max(np.abs(np.abs(res.state.samples)
                             - math.sqrt(1 - eps))) < 1e-8

    def test_w_coupled_stays_close(self):
        eps = 0.02
        res = newton_continue(perturbation_family("re_w", eps), F3, G0)
        f0_vals = blaschke_eval(F3, res.state.boundary_z)
        assert np.max(np.abs(res.state.samples - f0_vals)) <= 10 * eps

    def test_superlinear_trace(self):
        res = newton_continue(perturbation_family("mixed", 0.05),
                              BlaschkeProduct([0, 0]), G0)
        r = [v for v in res.residuals if v > 0]
        for a, b in zip(r, r[1:]):
            if a < 0.1 and b > 1e-14:
                assert b <= 20 * a * a

    def test_no_convergence_carries_trace(self):
        with pytest.raises(NoConvergence) as info:
            newton_continue(perturbation_family("radial", 0.02), F3, G0,
                            max_iter=1)
        assert len(info.value.trace) >= 1

    def test_general_blaschke_needs_more_modes(self):
        f0 = BlaschkeProduct([0.3, -0.2 + 0.1j])
        with pytest.raises(InputError):
            newton_continue(perturbation_family("radial", 0.01), f0, G0)
        res = newton_continue(perturbation_family("radial", 0.01), f0, G0,
                              modes=48)
        assert res.converged

    def test_g0_sup_norm_validated(self):
        with pytest.raises(InputError):
            newton_continue(perturbation_family("radial", 0.01), F3,
                            Polynomial([0, 1.2]))

    def test_continuity_in_epsilon(self):
        r1 = newton_continue(perturbation_family("radial", 0.02), F3, G0)
        r2 = newton_continue(perturbation_family("radial", 0.01), F3, G0)
        gap = np.max(np.abs(r1.state.samples - r2.state.samples))
        assert gap <= 1.0 * 0.02

    def test_linearization_kernel_dimension(self):
        # the linearized operator at the unperturbed pair has kernel
        # dimension 2 deg(f0) + 1 on the disc
        for d in (2, 3):
            f0 = BlaschkeProduct([0] * d)
            state = initial_state(f0, G0, samples=4 * (4 * d + 12))
            a = linearized_coefficient(perturbation_family("radial", 0.0),
                                       state)
            dom = PlanarDomain.disc(samples=state.boundary_z.size)
            p = rh_problem(dom, (a,), (np.zeros(a.size),))
            assert kernel_dimension(p, 4 * d + 8) == 2 * d + 1


class TestVerify:
    def test_zero_perturbation_passes(self):
        res = newton_continue(perturbation_family("radial", 0.0), F3, G0)
        rep = verify_on_hypersurface(res.state,
                                     perturbation_family("radial", 0.0),
                                     rng=np.random.default_rng(8))
        assert rep.passed
        assert rep.interior_max < 0

    def test_radial_interior_sign(self):
        eps = 0.01
        res = newton_continue(perturbation_family("radial", eps), F3, G0)
        rep = verify_on_hypersurface(res.state,
                                     perturbation_family("radial", eps),
                                     rng=np.random.default_rng(9),
                                     interior_points=500)
        assert rep.interior_max < 0
        assert rep.interior_points >= 500
        assert rep.out_of_sample_residual < 1e-7

    def test_injectivity_through_second_coordinate(self):
        res = newton_continue(perturbation_family("re_w", 0.01),
                              BlaschkeProduct([0, 0]), G0)
        rep = verify_on_hypersurface(res.state,
                                     perturbation_family("re_w", 0.01),
                                     rng=np.random.default_rng(10))
        assert rep.injectivity_min_distance > 0


class TestSeriesFromBoundary:
    def test_polynomial_roundtrip(self):
        z = np.exp(2j * np.pi * np.arange(64) / 64)
        vals = 1 + 2 * z ** 3 - 0.5j * z ** 5
        coeffs = series_from_boundary(vals, 8)
        expected = np.zeros(8, dtype=complex)
        expected[0], expected[3], expected[5] = 1, 2, -0.5j
        assert np.allclose(coeffs, expected, atol=1e-12)

    def test_slow_decay_rejected(self):
        z = np.exp(2j * np.pi * np.arange(64) / 64)
        vals = 1 / (1 - 0.9 * z)
        with pytest.raises(InputError):
            series_from_boundary(vals, 8)
