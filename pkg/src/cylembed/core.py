"""Foundational numerics: complex polynomials, boundary sampling, winding counts.

Everything downstream reduces to three primitives that live here: dense
polynomial arithmetic with a deterministic root finder, equispaced sampling
of circular boundary loops, and argument-principle winding numbers computed
by stepwise principal-branch increments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Undersampled, ZeroOnCurve, ZeroPolynomial

TOL_ROOT = 1e-10      # relative residual allowed for poly_roots output
TOL_ZERO = 1e-12      # |value| below this counts as "on the zero set"
DEFAULT_LOOP_SAMPLES = 512


@dataclass(frozen=True)
class Polynomial:
    """Dense complex polynomial, coefficients lowest degree first.

    Trailing zero coefficients are stripped at construction, so
    ``degree == len(coeffs) - 1`` for nonzero polynomials.  The zero
    polynomial is the empty tuple.
    """

    coeffs: tuple

    def __init__(self, coeffs=()):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1.0,))

    @classmethod
    def identity(cls):
        """The polynomial x."""
        return cls((0.0, 1.0))

    @classmethod
    def monomial(cls, degree, coefficient=1.0):
        return cls((0.0,) * degree + (coefficient,))

    @classmethod
    def from_roots(cls, roots, leading=1.0):
        p = cls((leading,))
        for r in roots:
            p = p * cls((-r, 1.0))
        return p

    @property
    def degree(self):
        """Degree of a nonzero polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, z):
        return poly_eval(self, z)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0.0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0.0] * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def derivative(self):
        if len(self.coeffs) <= 1:
            return Polynomial.zero()
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def trimmed(self, tol):
        """Drop leading coefficients of magnitude <= tol (absolute)."""
        cs = list(self.coeffs)
        while cs and abs(cs[-1]) <= tol:
            cs.pop()
        return Polynomial(cs)


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    return Polynomial((x,))


def poly_eval(p, z):
    """Horner evaluation of ``p`` at ``z`` (scalar or ndarray)."""
    if isinstance(z, np.ndarray):
        acc = np.zeros(z.shape, dtype=complex)
        for c in reversed(p.coeffs):
            acc = acc * z + c
        return acc
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return complex(acc)


def poly_roots(p):
    """All complex roots of ``p`` with multiplicity, deterministically ordered.

    Roots come from the companion-matrix eigenvalues (``numpy.roots``) and
    are sorted by real part, then imaginary part.  Each root r satisfies
    ``|p(r)| <= TOL_ROOT * max|coeff| * (1 + |r|)**degree`` on the degree
    range this toolkit ships (<= ~64).

    Raises ``ZeroPolynomial`` for the identically-zero input; a nonzero
    constant has no roots and returns the empty list.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot take roots of the zero polynomial")
    if p.degree == 0:
        return []
    rts = np.roots(list(reversed(p.coeffs)))
    order = np.lexsort((rts.imag, rts.real))
    return [complex(r) for r in rts[order]]


def winding_number(values):
    """Total argument increment / 2*pi along a closed loop of samples.

    ``values`` is treated cyclically (the step from the last sample back to
    the first is included).  Raises ``ZeroOnCurve`` if any value has modulus
    below ``TOL_ZERO`` and ``Undersampled`` if any consecutive argument step
    reaches pi/2, which would make the increment ambiguous.
    """
    v = np.asarray(values, dtype=complex).ravel()
    if v.size == 0:
        raise ZeroOnCurve("empty sample list")
    mags = np.abs(v)
    if mags.min() < TOL_ZERO:
        raise ZeroOnCurve(f"sample of modulus {mags.min():.3e} on the curve")
    steps = np.angle(np.roll(v, -1) / v)
    worst = np.abs(steps).max()
    if worst >= math.pi / 2:
        raise Undersampled(
            f"argument step {worst:.3f} >= pi/2; refine the sampling")
    return int(round(steps.sum() / (2 * math.pi)))


@dataclass(frozen=True)
class BoundaryLoop:
    """Equispaced samples of a circle, traversed in a fixed orientation."""

    center: complex
    radius: float
    orientation: int = 1
    samples: int = DEFAULT_LOOP_SAMPLES

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if self.samples < 16:
            raise ValueError("need at least 16 samples per loop")

    def points(self):
        j = np.arange(self.samples)
        return self.center + self.radius * np.exp(
            self.orientation * 2j * math.pi * j / self.samples)


@dataclass(frozen=True)
class PlanarDomain:
    """Disc or annulus with coherently oriented boundary loops.

    The outer loop is the unit circle traversed counterclockwise; an
    annulus adds the inner circle traversed clockwise.  Genus is 0 for
    both; the boundary-component count distinguishes them.
    """

    kind: str
    loops: tuple
    inner_radius: float | None = None

    @classmethod
    def disc(cls, samples=DEFAULT_LOOP_SAMPLES):
        return cls("disc", (BoundaryLoop(0j, 1.0, 1, samples),))

    @classmethod
    def annulus(cls, inner_radius, samples=DEFAULT_LOOP_SAMPLES):
        if not 0 < inner_radius < 1:
            raise ValueError("inner radius must lie in (0, 1)")
        return cls(
            "annulus",
            (BoundaryLoop(0j, 1.0, 1, samples),
             BoundaryLoop(0j, inner_radius, -1, samples)),
            inner_radius,
        )

    @property
    def genus(self):
        return 0

    @property
    def boundary_components(self):
        return len(self.loops)


def loop_samples_of(a, loops):
    """Normalize a boundary function to one sample array per loop.

    Accepts a callable (applied to each loop's points), a single array
    (disc only), or a sequence with one array/callable/scalar per loop.
    """
    if callable(a):
        return tuple(np.asarray(a(lp.points()), dtype=complex) for lp in loops)
    if len(loops) == 1 and not callable(a):
        arr = np.asarray(a)
        if arr.ndim == 1 and arr.size == loops[0].samples:
            return (arr.astype(complex),)
    out = []
    if len(a) != len(loops):
        raise ValueError(f"expected {len(loops)} per-loop entries, got {len(a)}")
    for entry, lp in zip(a, loops):
        if callable(entry):
            out.append(np.asarray(entry(lp.points()), dtype=complex))
        elif np.isscalar(entry):
            out.append(np.full(lp.samples, complex(entry)))
        else:
            arr = np.asarray(entry, dtype=complex)
            if arr.size != lp.samples:
                raise ValueError(
                    f"loop expects {lp.samples} samples, got {arr.size}")
            out.append(arr)
    return tuple(out)


def boundary_index(a, domain):
    """Sum of winding numbers of ``a`` over all coherently oriented loops.

    ``a`` may be a callable or per-loop sample arrays (see
    ``loop_samples_of``).  Loop samples already follow each loop's
    orientation, so the per-loop windings simply add up.
    """
    per_loop = loop_samples_of(a, domain.loops)
    return sum(winding_number(vals) for vals in per_loop)
