import math

import numpy as np
import pytest

from cylembed.core import (PlanarDomain, Polynomial, boundary_index,
                           poly_eval, poly_roots, winding_number)
from cylembed.errors import Undersampled, ZeroOnCurve, ZeroPolynomial


def circle(n=256, r=1.0):
    return r * np.exp(2j * np.pi * np.arange(n) / n)


class TestPolyEval:
    def test_root_by_construction(self):
        assert poly_eval(Polynomial([1, 0, 1]), 1j) == 0

    def test_zero_polynomial(self):
        assert poly_eval(Polynomial([]), 5) == 0

    def test_hand_arithmetic(self):
        # (0.3)^2 - 0.25 = -0.16 by hand
        assert poly_eval(Polynomial([-0.25, 0, 1]), 0.3) == pytest.approx(-0.16)

    def test_vectorized_matches_scalar(self):
        p = Polynomial([1, 2 - 1j, 0, 3])
        zs = circle(17, 0.7)
        vals = poly_eval(p, zs)
        for z, v in zip(zs, vals):
            assert v == pytest.approx(poly_eval(p, complex(z)))


class TestPolyRoots:
    def test_factored_form(self):
        assert poly_roots(Polynomial([-0.25, 0, 1])) == \
            pytest.approx([-0.5, 0.5])

    def test_triple_zero(self):
        assert poly_roots(Polynomial([0, 0, 0, 1])) == pytest.approx([0, 0, 0])

    def test_quadratic_formula(self):
        # oracle: roots of z^2 + 5z - 1 from the quadratic formula
        lo = (-5 - math.sqrt(29)) / 2
        hi = (-5 + math.sqrt(29)) / 2
        assert poly_roots(Polynomial([-1, 5, 1])) == pytest.approx([lo, hi])

    def test_zero_polynomial_raises(self):
        with pytest.raises(ZeroPolynomial):
            poly_roots(Polynomial([]))

    def test_constant_has_no_roots(self):
        assert poly_roots(Polynomial([3])) == []

    def test_deterministic_order(self):
        p = Polynomial.from_roots([1j, -1j, 0.5, -0.5])
        assert poly_roots(p) == poly_roots(p)
        rts = poly_roots(p)
        assert rts == sorted(rts, key=lambda r: (r.real, r.imag))

    def test_residual_contract(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            deg = int(rng.integers(1, 9))
            coeffs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
            p = Polynomial(coeffs)
            top = max(abs(c) for c in p.coeffs)
            for r in poly_roots(p):
                bound = 1e-10 * top * (1 + abs(r)) ** p.degree
                assert abs(poly_eval(p, r)) <= bound

    def test_roundtrip_from_roots(self):
        # expand a known root multiset, refactor, compare within 1e-8
        rng = np.random.default_rng(5)
        for _ in range(20):
            deg = int(rng.integers(1, 9))
            roots = (2 * rng.uniform(-1, 1, deg)
                     + 2j * rng.uniform(-1, 1, deg))
            roots = sorted(map(complex, roots), key=lambda r: (r.real, r.imag))
            found = poly_roots(Polynomial.from_roots(roots))
            assert np.allclose(found, roots, atol=1e-8)


class TestWindingNumber:
    def test_third_power(self):
        theta = 2 * np.pi * np.arange(256) / 256
        assert winding_number(np.exp(3j * theta)) == 3

    def test_constant(self):
        assert winding_number(np.full(64, 1 + 1j)) == 0

    def test_mobius_automorphism(self):
        # degree-1 disc automorphism; cross-check: one zero inside the disc
        z = circle()
        vals = (z - 0.5) / (1 - 0.5 * z)
        assert winding_number(vals) == 1
        inside = [r for r in poly_roots(Polynomial([-0.5, 1])) if abs(r) < 1]
        assert len(inside) == 1

    def test_zero_on_curve(self):
        vals = np.ones(32, dtype=complex)
        vals[7] = 1e-13
        with pytest.raises(ZeroOnCurve):
            winding_number(vals)

    def test_undersampled(self):
        theta = 2 * np.pi * np.arange(8) / 8
        with pytest.raises(Undersampled):
            winding_number(np.exp(3j * theta))

    def test_scaling_invariance(self):
        z = circle(128)
        vals = (z - 0.3) * (z + 0.1 - 0.2j)
        for lam in (2.0, -1j, 0.5 + 0.5j):
            assert winding_number(lam * vals) == winding_number(vals)

    def test_product_rule(self):
        z = circle(512)
        u = z - 0.4
        v = z ** 2 - 0.1j
        assert winding_number(u * v) == \
            winding_number(u) + winding_number(v)

    def test_argument_principle_random_polys(self):
        rng = np.random.default_rng(23)
        z = circle(1024)
        for _ in range(25):
            deg = int(rng.integers(1, 7))
            p = Polynomial(rng.normal(size=deg + 1)
                           + 1j * rng.normal(size=deg + 1))
            roots = poly_roots(p)
            if any(abs(abs(r) - 1) < 1e-3 for r in roots):
                continue
            inside = sum(1 for r in roots if abs(r) < 1)
            assert winding_number(poly_eval(p, z)) == inside


class TestBoundaryIndex:
    def test_disc_power(self):
        assert boundary_index(lambda z: z ** 2, PlanarDomain.disc()) == 2

    def test_annulus_identity_cancels(self):
        # outer winds +1, inner (clockwise) winds -1
        dom = PlanarDomain.annulus(0.5)
        assert boundary_index(lambda z: z, dom) == 0

    def test_annulus_argument_principle(self):
        # 0.6 is outside the inner circle of radius 0.3: only the outer
        # loop encircles it
        dom = PlanarDomain.annulus(0.3)
        assert boundary_index(lambda z: z - 0.6, dom) == 1

    def test_per_loop_arrays(self):
        dom = PlanarDomain.annulus(0.5)
        arrays = [lp.points() ** 3 for lp in dom.loops]
        assert boundary_index(arrays, dom) == 0


class TestDomains:
    def test_loop_sample_formula(self):
        from cylembed.core import BoundaryLoop
        lp = BoundaryLoop(0.5j, 2.0, -1, 16)
        pts = lp.points()
        j = np.arange(16)
        expected = 0.5j + 2.0 * np.exp(-2j * np.pi * j / 16)
        assert np.allclose(pts, expected, atol=1e-15)

    def test_topological_data(self):
        assert (PlanarDomain.disc().genus,
                PlanarDomain.disc().boundary_components) == (0, 1)
        ann = PlanarDomain.annulus(0.4)
        assert (ann.genus, ann.boundary_components) == (0, 2)

    def test_annulus_radius_validation(self):
        with pytest.raises(ValueError):
            PlanarDomain.annulus(1.2)
