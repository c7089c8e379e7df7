"""Finite Blaschke products: the model inner functions on the unit disc.

A product of automorphism factors (z - a)/(1 - conj(a) z) with |a| < 1 has
unit modulus on the circle, and its boundary winding equals its zero count.
Fibers and critical values reduce to polynomial root finding on the
numerator/denominator pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (DEFAULT_LOOP_SAMPLES, Polynomial, poly_eval, poly_roots,
                   winding_number)
from .errors import CriticalPointNearBoundary, DegreeMismatch

CRITICAL_DEDUP_TOL = 1e-8
BOUNDARY_GUARD = 1e-6
FIBER_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product: zeros inside the open disc, unimodular phase."""

    zeros: tuple
    phase: complex = 1.0 + 0j

    def __init__(self, zeros, phase=1.0 + 0j):
        zs = tuple(complex(a) for a in zeros)
        if not zs:
            raise ValueError("a Blaschke product needs at least one zero")
        if any(abs(a) >= 1 for a in zs):
            raise ValueError("all zeros must have modulus < 1")
        ph = complex(phase)
        if abs(abs(ph) - 1) > 1e-12:
            raise ValueError("phase must be unimodular")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "phase", ph / abs(ph))

    @property
    def degree(self):
        return len(self.zeros)

    def numerator(self):
        """phase * prod (x - a_i) as a Polynomial."""
        return Polynomial.from_roots(self.zeros, leading=self.phase)

    def denominator(self):
        """prod (1 - conj(a_i) x) as a Polynomial."""
        p = Polynomial.one()
        for a in self.zeros:
            p = p * Polynomial((1.0, -np.conj(a)))
        return p

    def __call__(self, z):
        return blaschke_eval(self, z)


def blaschke_eval(B, z):
    """Evaluate ``B`` at ``z`` (scalar or ndarray) on the closed disc.

    Poles sit at the reflected points 1/conj(a_i) outside the closed disc,
    so the quotient is well defined for |z| <= 1.
    """
    scalar = not isinstance(z, np.ndarray)
    zz = np.asarray(z, dtype=complex)
    num = np.ones_like(zz) * B.phase
    den = np.ones_like(zz)
    for a in B.zeros:
        num = num * (zz - a)
        den = den * (1 - np.conj(a) * zz)
    out = num / den
    return complex(out) if scalar else out


def boundary_values(B, samples=DEFAULT_LOOP_SAMPLES):
    theta = np.arange(samples) * 2 * np.pi / samples
    return blaschke_eval(B, np.exp(1j * theta))


def blaschke_degree(B, samples=DEFAULT_LOOP_SAMPLES):
    """Zero count of ``B``, cross-checked against the boundary winding.

    The two must agree exactly; a mismatch signals a numerics bug and
    raises ``DegreeMismatch``.
    """
    d = B.degree
    w = winding_number(boundary_values(B, samples))
    if w != d:
        raise DegreeMismatch(f"zero count {d} but boundary winding {w}")
    return d


def critical_values(B):
    """Critical values Z of ``B``: images of the interior zeros of B'.

    The derivative's zeros are roots of the explicit numerator polynomial
    N'D - ND' (degree <= 2d - 2).  Critical points with modulus in
    [1 - 1e-6, 1] trip the boundary guard (inner functions have
    nonvanishing differential on the circle, so such inputs are too
    degenerate to certify).  Values are deduplicated within 1e-8 and
    returned sorted by (real, imag).  Degree-1 products have no critical
    points, giving the empty list.
    """
    if B.degree < 2:
        return []
    N = B.numerator()
    D = B.denominator()
    dnum = (N.derivative() * D - N * D.derivative()).trimmed(1e-13)
    if dnum.is_zero():
        raise CriticalPointNearBoundary("derivative numerator vanished")
    pts = poly_roots(dnum)
    inside = []
    for c in pts:
        m = abs(c)
        if 1 - BOUNDARY_GUARD <= m <= 1:
            raise CriticalPointNearBoundary(
                f"critical point at modulus {m:.8f}")
        if m < 1 - BOUNDARY_GUARD:
            inside.append(c)
    vals = [blaschke_eval(B, c) for c in inside]
    dedup = []
    for v in vals:
        if all(abs(v - u) > CRITICAL_DEDUP_TOL for u in dedup):
            dedup.append(v)
    dedup.sort(key=lambda w: (w.real, w.imag))
    return dedup


def fiber(B, z, polish=True):
    """All solutions of B(x) = z in the closed disc, with multiplicity.

    Solves numerator(B) - z * denominator(B) = 0; the leading coefficient
    cannot vanish for |z| <= 1, so there are always exactly deg(B) roots.
    Roots are polished by one guarded Newton step and satisfy
    |B(x) - z| < 1e-8.  Multiplicities are kept (critical fibers return
    repeated points); callers wanting distinct points deduplicate.
    """
    z = complex(z)
    p = B.numerator() - Polynomial((z,)) * B.denominator()
    roots = poly_roots(p)
    if polish:
        dp = p.derivative()
        polished = []
        for r in roots:
            d = poly_eval(dp, r)
            if abs(d) > 1e-6:
                r = r - poly_eval(p, r) / d
            polished.append(r)
        roots = sorted(polished, key=lambda w: (w.real, w.imag))
    return roots


def distinct_points(points, tol=1e-7):
    """Collapse a multiset of complex points to representatives within tol."""
    out = []
    for p in points:
        if all(abs(p - q) > tol for q in out):
            out.append(p)
    return out
