"""Hyperelliptic double covers of the disc and their inner pairs.

The curve y^2 = prod_j (x - b_j)(1 - conj(b_j) x), with branch points b_j
in the open disc, carries the bordered surface {|x| <= 1}.  The pair
f = y / prod_j (1 - conj(b_j) x), g = x maps it into the closed bidisc
with |f| = 1 on the boundary.  Boundary lifts are tracked by nearest-root
continuation of y along |x| = 1, which turns the topology (number of
boundary curves, degree of f) into executable winding checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_LOOP_SAMPLES, winding_number
from .errors import DegenerateCurve, Undersampled, WindingMismatch

BRANCH_DISTINCT_TOL = 1e-8
POINT_REL_TOL = 1e-9


@dataclass(frozen=True)
class HyperellipticCurve:
    """Branch points of the double cover, all distinct and inside the disc."""

    branch_points: tuple

    def __init__(self, branch_points):
        bs = tuple(complex(b) for b in branch_points)
        if not bs:
            raise DegenerateCurve("need at least one branch point")
        if any(abs(b) >= 1 for b in bs):
            raise DegenerateCurve("branch points must have modulus < 1")
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                if abs(bs[i] - bs[j]) < BRANCH_DISTINCT_TOL:
                    raise DegenerateCurve(
                        f"branch points {i} and {j} coincide within "
                        f"{BRANCH_DISTINCT_TOL}")
        object.__setattr__(self, "branch_points", bs)

    @property
    def double_genus(self):
        """Genus of the compact double cover: one less than the point count."""
        return len(self.branch_points) - 1

    @property
    def boundary_components(self):
        return 1 if self.double_genus % 2 == 0 else 2

    @property
    def genus(self):
        return (self.double_genus - self.boundary_components + 1) // 2


@dataclass(frozen=True)
class SurfacePoint:
    x: complex
    y: complex


def curve_rhs(curve, x):
    """The defining product prod (x - b_j)(1 - conj(b_j) x)."""
    scalar = not isinstance(x, np.ndarray)
    xx = np.asarray(x, dtype=complex)
    out = np.ones_like(xx)
    for b in curve.branch_points:
        out = out * (xx - b) * (1 - np.conj(b) * xx)
    return complex(out) if scalar else out


def _denominator(curve, x):
    scalar = not isinstance(x, np.ndarray)
    xx = np.asarray(x, dtype=complex)
    out = np.ones_like(xx)
    for b in curve.branch_points:
        out = out * (1 - np.conj(b) * xx)
    return complex(out) if scalar else out


def validate_surface_point(curve, p, tol=POINT_REL_TOL):
    q = curve_rhs(curve, p.x)
    err = abs(p.y * p.y - q) / max(1.0, abs(q))
    if err > tol:
        raise ValueError(
            f"point does not satisfy the curve equation (residual {err:.2e})")
    if abs(p.x) > 1 + 1e-9:
        raise ValueError("surface points require |x| <= 1")


def surface_point(curve, x, sheet=1):
    """Construct the surface point over x on the given sheet (+1/-1).

    Sheet +1 takes the principal square root of the defining product.
    """
    x = complex(x)
    y = cmath.sqrt(curve_rhs(curve, x))
    return SurfacePoint(x, sheet * y)


def topology(curve, samples=DEFAULT_LOOP_SAMPLES):
    """(genus, boundary components) with the winding computed, not assumed.

    The winding of the defining product around |x| = 1 counts the branch
    points and must equal their number; y is single-valued on the circle
    exactly when that winding is even, which fixes the boundary count.
    """
    ghat = curve.double_genus
    theta = np.arange(samples) * 2 * np.pi / samples
    w = winding_number(curve_rhs(curve, np.exp(1j * theta)))
    if w != ghat + 1:
        raise WindingMismatch(
            f"boundary winding {w} != branch point count {ghat + 1}")
    m = 2 if w % 2 == 0 else 1
    g = (ghat - m + 1) // 2
    return g, m


def inner_pair(curve, p):
    """The values (f, g) = (y / prod (1 - conj(b_j) x), x) at a surface point."""
    validate_surface_point(curve, p)
    return p.y / _denominator(curve, p.x), p.x


def boundary_lifts(curve, samples=DEFAULT_LOOP_SAMPLES):
    """Closed lifts of |x| = 1 to the surface, as (x array, y array) pairs.

    Starts at x = 1 with the principal square root and continues y by
    nearest-root choice.  If y returns to itself after one circuit there
    are two lifts (the second is the sign-flipped copy); otherwise the lift
    closes after two circuits and the boundary is a single curve.  The lift
    count is itself a check of the boundary-component count.
    """
    theta = np.arange(samples) * 2 * np.pi / samples
    x = np.exp(1j * theta)
    q = curve_rhs(curve, x)
    y = np.empty(samples, dtype=complex)
    y[0] = cmath.sqrt(q[0])
    for k in range(1, samples):
        cand = cmath.sqrt(q[k])
        d_plus = abs(cand - y[k - 1])
        d_minus = abs(-cand - y[k - 1])
        if min(d_plus, d_minus) > 0.5 * max(d_plus, d_minus):
            raise Undersampled("sheet continuation ambiguous; refine sampling")
        y[k] = cand if d_plus < d_minus else -cand
    closing = cmath.sqrt(q[0])
    cont = closing if abs(closing - y[-1]) < abs(-closing - y[-1]) else -closing
    if abs(cont - y[0]) < abs(cont + y[0]):
        return [(x, y), (x, -y)]
    xx = np.concatenate([x, x])
    yy = np.concatenate([y, -y])
    return [(xx, yy)]


def _boundary_f_values(curve, lifts):
    return [y / _denominator(curve, x) for x, y in lifts]


def inner_degree(curve, samples=DEFAULT_LOOP_SAMPLES):
    """Degree of f computed as total boundary winding over all lifts."""
    lifts = boundary_lifts(curve, samples)
    return sum(winding_number(fv) for fv in _boundary_f_values(curve, lifts))


@dataclass(frozen=True)
class ClassFReport:
    degree_f: int
    degree_bound: int
    lift_count: int
    boundary_components: int
    genus: int
    max_modulus_deviation: float
    max_square_identity_residual: float
    injectivity_min_distance: float
    immersion_min_norm: float
    is_class_f: bool


def _square_identity_residual(curve, x, f):
    """Residual of f^2 against the product of Mobius factors in g = x."""
    xx = np.asarray(x, dtype=complex)
    prod = np.ones_like(xx)
    for b in curve.branch_points:
        prod = prod * (xx - b) / (1 - np.conj(b) * xx)
    return np.max(np.abs(f * f - prod))


def _parametric_differential(curve, pts):
    """Norm of (df/dx, dg/dx) at surface points with y != 0.

    g = x gives dg/dx = 1.  Away from branch points, y'/y = q'/(2q) by the
    logarithmic derivative of the defining product, so
    df/dx = f * (q'/(2q) - D'/D) with D the denominator product.
    """
    norms = []
    for p in pts:
        if abs(p.y) < 1e-9:
            continue
        qlog = sum(1 / (p.x - b) - np.conj(b) / (1 - np.conj(b) * p.x)
                   for b in curve.branch_points)
        dlog = sum(-np.conj(b) / (1 - np.conj(b) * p.x)
                   for b in curve.branch_points)
        f_val = p.y / _denominator(curve, p.x)
        df = f_val * (0.5 * qlog - dlog)
        norms.append(math.hypot(abs(df), 1.0))
    return min(norms) if norms else math.inf


def verify_class_F(curve, n_samples=400, rng=None,
                   boundary_samples=DEFAULT_LOOP_SAMPLES):
    """Quantitative class-membership report for the inner pair (f, g).

    Checks (a) deg(f) from boundary winding against the required lower
    bound 2 * genus + components - 1, (b) |f| = 1 on the boundary lifts,
    (c) injectivity of (f, g) over random surface-point pairs, including
    opposite-sheet pairs that only f separates, and (d) the immersion
    property via parametric differentials.  Requires n_samples >= 100.
    """
    if n_samples < 100:
        raise ValueError("need at least 100 samples")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    g, m = topology(curve, boundary_samples)
    lifts = boundary_lifts(curve, boundary_samples)
    fvals = _boundary_f_values(curve, lifts)
    deg_f = sum(winding_number(fv) for fv in fvals)
    bound = 2 * g + m - 1
    dev = max(float(np.max(np.abs(np.abs(fv) - 1))) for fv in fvals)
    sq_res = max(_square_identity_residual(curve, x, f)
                 for (x, _), f in zip(lifts, fvals))

    def random_point():
        r = math.sqrt(rng.uniform(0, 1))
        t = rng.uniform(0, 2 * math.pi)
        sheet = 1 if rng.uniform() < 0.5 else -1
        return surface_point(curve, r * cmath.exp(1j * t), sheet)

    min_dist = math.inf
    pts = []
    for _ in range(n_samples // 2):
        p, q = random_point(), random_point()
        pts.extend([p, q])
        if abs(p.x - q.x) < 1e-9 and abs(p.y - q.y) < 1e-9:
            continue
        fp, gp = inner_pair(curve, p)
        fq, gq = inner_pair(curve, q)
        min_dist = min(min_dist, math.hypot(abs(fp - fq), abs(gp - gq)))
    for _ in range(n_samples // 2):
        p = random_point()
        if abs(p.y) < 1e-9:
            continue
        q = SurfacePoint(p.x, -p.y)
        fp, gp = inner_pair(curve, p)
        fq, gq = inner_pair(curve, q)
        min_dist = min(min_dist, math.hypot(abs(fp - fq), abs(gp - gq)))

    imm = _parametric_differential(curve, pts[:n_samples])
    ok = (deg_f == curve.double_genus + 1 and deg_f >= bound
          and len(lifts) == m and min_dist > 0)
    return ClassFReport(
        degree_f=deg_f,
        degree_bound=bound,
        lift_count=len(lifts),
        boundary_components=m,
        genus=g,
        max_modulus_deviation=dev,
        max_square_identity_residual=float(sq_res),
        injectivity_min_distance=float(min_dist),
        immersion_min_norm=float(imm),
        is_class_f=bool(ok),
    )
