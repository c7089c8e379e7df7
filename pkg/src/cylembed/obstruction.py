"""The winding obstruction: curve families no holomorphic graph can avoid.

The family with parameter k is the union of the hyperbola zw = 1, the line
w = 1, and the lines w = jz for 0 <= j <= k, inside the cylinder over the
unit disc.  For any polynomial graph w = alpha(z), once k r exceeds the
maximum of |alpha| on |z| = r, the function k z - alpha(z) winds once
around the circle |z| = r, so it has a zero inside and the graph meets the
line w = kz.  Zero counts here are computed by winding numbers, never by
root finding, so the counting is exactly the argument-principle mechanism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Polynomial, poly_eval, winding_number
from .errors import Undersampled, ZeroOnCircle, ZeroOnCurve

DEFAULT_RADIUS = 0.9
IDENTICAL_TOL = 1e-12


@dataclass(frozen=True)
class ObstructionFamily:
    """The curve family indexed by the largest line slope k."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be a nonnegative integer")

    def test_functions(self, alpha):
        """Polynomials whose zeros in rU count the per-component hits.

        Returns (label, polynomial) pairs: z*alpha(z) - 1 for the
        hyperbola, alpha(z) - 1 for the horizontal line, and j*z -
        alpha(z) for each line through the origin.
        """
        x = Polynomial.identity()
        items = [("hyperbola", x * alpha - Polynomial.one()),
                 ("w=1", alpha - Polynomial.one())]
        for j in range(self.k + 1):
            items.append((f"w={j}z", j * x - alpha))
        return items


@dataclass(frozen=True)
class ComponentCount:
    label: str
    count: int | None
    identically_zero: bool


@dataclass(frozen=True)
class IntersectionReport:
    k: int
    radius: float
    components: tuple
    total: int

    def count_of(self, label):
        for c in self.components:
            if c.label == label:
                return c
        raise KeyError(label)


def _zero_count_in_disc(p, r, samples):
    theta = np.arange(samples) * 2 * math.pi / samples
    return winding_number(poly_eval(p, r * np.exp(1j * theta)))


def graph_intersections(alpha, k, r=DEFAULT_RADIUS, samples=2048, retries=5):
    """Per-component counts of graph intersections inside the radius-r disc.

    Each count is the winding number of the component's test function on
    |z| = r.  If a test function vanishes on (or hugs) the circle the
    radius is perturbed by 1e-3 and the whole count retried, up to
    ``retries`` times before ``ZeroOnCircle``.  Test functions that vanish
    identically (the graph lies on the component) are flagged instead of
    counted.
    """
    family = ObstructionFamily(k)
    items = family.test_functions(alpha)
    for attempt in range(retries + 1):
        radius = r + 1e-3 * attempt
        results = []
        try:
            for label, p in items:
                if p.trimmed(IDENTICAL_TOL).is_zero():
                    results.append(ComponentCount(label, None, True))
                    continue
                n = _zero_count_in_disc(p, radius, samples)
                results.append(ComponentCount(label, n, False))
        except (ZeroOnCurve, Undersampled):
            continue
        total = sum(c.count for c in results if c.count is not None)
        return IntersectionReport(k, radius, tuple(results), total)
    raise ZeroOnCircle(
        f"a test function vanishes on |z| = r for all {retries + 1} radii")


@dataclass(frozen=True)
class BlockingCertificate:
    k0: int
    radius: float
    max_modulus: float
    winding: int


def minimal_blocking_k(alpha, r=DEFAULT_RADIUS, samples=2048):
    """Smallest slope k0 guaranteed to force an intersection, with evidence.

    Takes k0 = ceil(max_{|z|=r} |alpha| / r) + 1, so k0 * r strictly
    exceeds the maximum modulus; the winding of k0 z - alpha(z) on |z| = r
    is then computed and must equal 1 (the winding of k0 z), certifying a
    zero of the difference inside the disc.  A different winding would
    signal a bug in the winding computation, not a property of alpha.
    """
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    theta = np.arange(samples) * 2 * math.pi / samples
    boundary = poly_eval(alpha, r * np.exp(1j * theta))
    max_mod = float(np.max(np.abs(boundary)))
    k0 = math.ceil(max_mod / r) + 1
    h = k0 * Polynomial.identity() - alpha
    w = winding_number(poly_eval(h, r * np.exp(1j * theta)))
    if w != 1:
        raise ArithmeticError(
            f"winding of k0 z - alpha is {w}, expected 1; winding bug")
    return BlockingCertificate(k0, r, max_mod, w)
