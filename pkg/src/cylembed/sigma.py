"""Fiber-collision varieties and graph avoidance for separating pairs.

Given an inner function f (a Blaschke product) and a candidate first
component g1, the map x -> (f(x), g1(x)) fails to be injective exactly
where g1 collides on a fiber of f.  This module builds the standard
repair: a second component g2 vanishing to second order on the critical
fibers, the fiberwise collision sets Sigma_z of parameters a for which
g1 + a * g2 still collides, and a polynomial alpha whose graph avoids the
collision set over a disc D0, so that g = g1 + alpha(f) * g2 separates all
fibers over D0 and (f, g) embeds the preimage of D0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import Polynomial, poly_eval, poly_roots
from .errors import (G1Invalid, InjectivityFailure, InputError,
                     NoAvoidingGraph, NoRoundDisc, SeparationImpossible,
                     SeparationViolated)
from .inner import BlaschkeProduct, blaschke_eval, critical_values, \
    distinct_points, fiber

PAIR_DISTINCT_TOL = 1e-7     # fiber points closer than this are one point
VALUE_EQUAL_TOL = 1e-10      # g-value differences below this count as equal
SEP_CHECK_TOL = 1e-8


# ---------------------------------------------------------------------------
# separating data and the fiberwise collision sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparatingData:
    """An inner function with candidate components and its critical values."""

    f: BlaschkeProduct
    g1: Polynomial
    g2: Polynomial
    critical_vals: tuple


@dataclass(frozen=True)
class SigmaVariety:
    """Query interface for the fiberwise collision sets."""

    data: SeparatingData

    def fiber(self, z):
        return sigma_fiber(self, z)

    @property
    def max_fiber_size(self):
        d = self.data.f.degree
        return d * (d - 1) // 2


def _coeff_scale(p):
    return max(1.0, max((abs(c) for c in p.coeffs), default=0.0))


def check_g1(f, g1):
    """Validate the two critical-fiber conditions on g1.

    (a) g1 separates the distinct points of every critical fiber, and
    (b) dg1 does not vanish at any critical-fiber point.  Raises
    ``G1Invalid`` with a description of the first violation.
    """
    Z = critical_values(f)
    scale = _coeff_scale(g1)
    g1p = g1.derivative()
    for z in Z:
        pts = distinct_points(fiber(f, z), PAIR_DISTINCT_TOL)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if abs(poly_eval(g1, pts[i]) - poly_eval(g1, pts[j])) \
                        <= SEP_CHECK_TOL * scale:
                    raise G1Invalid(
                        f"g1 does not separate the critical fiber over {z}")
        for c in pts:
            if abs(poly_eval(g1p, c)) <= SEP_CHECK_TOL * scale:
                raise G1Invalid(
                    f"dg1 vanishes at the critical-fiber point {c}")
    return Z


def critical_fiber_points(f, Z=None):
    if Z is None:
        Z = critical_values(f)
    return distinct_points(
        [x for z in Z for x in fiber(f, z)], PAIR_DISTINCT_TOL)


def make_variety(f, g1, g2):
    """Assemble a validated SigmaVariety from its parts."""
    Z = check_g1(f, g1)
    scale2 = _coeff_scale(g2)
    g2p = g2.derivative()
    for c in critical_fiber_points(f, Z):
        if abs(poly_eval(g2, c)) > SEP_CHECK_TOL * scale2 or \
                abs(poly_eval(g2p, c)) > SEP_CHECK_TOL * scale2:
            raise InputError(
                f"g2 must vanish to second order at critical-fiber point {c}")
    return SigmaVariety(SeparatingData(f, g1, g2, tuple(Z)))


def sigma_fiber(v, z):
    """The collision set Sigma_z: parameters a that merge some fiber pair.

    For each unordered pair of distinct fiber points, the collision
    parameter solves a * (g2(x_j) - g2(x_i)) = g1(x_i) - g1(x_j).  Pairs
    with both differences below 1e-10 violate the separation invariant and
    raise ``SeparationViolated``; pairs with only the g2 difference that
    small contribute no solution.  The deduplicated set is returned sorted
    by (real, imag); it never exceeds d(d-1)/2 elements.
    """
    g1, g2 = v.data.g1, v.data.g2
    pts = distinct_points(fiber(v.data.f, z), PAIR_DISTINCT_TOL)
    out = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dg1 = poly_eval(g1, pts[i]) - poly_eval(g1, pts[j])
            dg2 = poly_eval(g2, pts[j]) - poly_eval(g2, pts[i])
            if abs(dg2) < VALUE_EQUAL_TOL:
                if abs(dg1) < VALUE_EQUAL_TOL:
                    raise SeparationViolated(
                        f"fiber over {z}: points {pts[i]} and {pts[j]} "
                        "unseparated by both components")
                continue
            a = dg1 / dg2
            if all(abs(a - b) > 1e-8 * max(1.0, abs(a), abs(b)) for b in out):
                out.append(a)
    out.sort(key=lambda w: (w.real, w.imag))
    return out


# ---------------------------------------------------------------------------
# exceptional fibers of g1 alone, via a numeric resultant
# ---------------------------------------------------------------------------

def _divide_diagonal(A):
    """Exact division of a bivariate coefficient array by (x - x').

    ``A[i, j]`` is the coefficient of x**i x'**j and A must vanish on the
    diagonal.  Returns the quotient in the same layout.
    """
    nx, ny = A.shape
    width = ny + nx - 1
    Q = np.zeros((nx - 1, width), dtype=complex)
    qi = np.zeros(width, dtype=complex)
    for i in range(nx - 1, 0, -1):
        ai = np.zeros(width, dtype=complex)
        ai[:ny] = A[i]
        shifted = np.concatenate(([0], qi[:-1]))
        qi = ai + shifted
        Q[i - 1] = qi
    rem = np.zeros(width, dtype=complex)
    rem[:ny] = A[0]
    rem = rem + np.concatenate(([0], qi[:-1]))
    top = np.abs(A).max()
    if top > 0 and np.abs(rem).max() > 1e-10 * top:
        raise ArithmeticError("bivariate division by (x - x') is not exact")
    return _trim_bivariate(Q)


def _trim_bivariate(A, tol=1e-13):
    top = np.abs(A).max()
    if top == 0:
        return A[:1, :1]
    mask = np.abs(A) > tol * top
    rows = np.where(mask.any(axis=1))[0]
    cols = np.where(mask.any(axis=0))[0]
    return A[: rows.max() + 1, : cols.max() + 1]


def _difference_quotient(g1):
    """(g1(x) - g1(x')) / (x - x') as a bivariate coefficient array."""
    e = g1.degree
    if e < 1:
        return np.zeros((1, 1), dtype=complex)
    G = np.zeros((e, e), dtype=complex)
    for k, c in enumerate(g1.coeffs):
        for i in range(k):
            G[i, k - 1 - i] += c
    return _trim_bivariate(G)


def _sylvester_resultant(p, q):
    """Resultant of two univariate coefficient vectors (lowest first)."""
    m, n = len(p) - 1, len(q) - 1
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    size = m + n
    S = np.zeros((size, size), dtype=complex)
    pr, qr = p[::-1], q[::-1]
    for i in range(n):
        S[i, i:i + m + 1] = pr
    for i in range(m):
        S[n + i, i:i + n + 1] = qr
    return np.linalg.det(S)


def exceptional_base_points(f, g1, nodes=256, radius=1.07):
    """Base points z over which g1 alone fails to separate the fiber of f.

    Pairs (x, x') with f(x) = f(x') and g1(x) = g1(x') are common zeros of
    two divided-difference polynomials; eliminating x' with a resultant
    (evaluated numerically on a circle of interpolation nodes and recovered
    by FFT) yields a univariate polynomial whose disc roots project to the
    candidate base points.  Every candidate is then re-verified by explicit
    fiber enumeration; only genuine collisions are returned.  Raises
    ``G1Invalid`` when the resultant vanishes identically (g1 collides over
    every base point).
    """
    d = f.degree
    N, D = f.numerator(), f.denominator()
    nv = np.zeros(d + 1, dtype=complex)
    nv[: len(N.coeffs)] = N.coeffs
    dv = np.zeros(d + 1, dtype=complex)
    dv[: len(D.coeffs)] = D.coeffs
    A = np.outer(nv, dv) - np.outer(dv, nv)
    if np.abs(A).max() == 0:
        raise G1Invalid("inner function has a constant fiber map")
    T = _divide_diagonal(A)
    G = _difference_quotient(g1)
    if np.abs(G).max() == 0:
        raise G1Invalid("g1 is constant and separates nothing")
    T = T / np.abs(T).max()
    G = G / np.abs(G).max()

    omega = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    xs = radius * omega
    dets = np.empty(nodes, dtype=complex)
    for s, x0 in enumerate(xs):
        xpow = x0 ** np.arange(T.shape[0])
        p = xpow @ T
        xpow = x0 ** np.arange(G.shape[0])
        q = xpow @ G
        dets[s] = _sylvester_resultant(p, q)
    if np.abs(dets).max() < 1e-9:
        raise G1Invalid("g1 collides over every base point of the disc")
    degree_bound = (T.shape[1] - 1 + G.shape[1] - 1) * \
        max(T.shape[0] - 1, G.shape[0] - 1, 1) + 2
    degree_bound = min(degree_bound, nodes - 1)
    fc = np.fft.fft(dets) / nodes
    coeffs = fc[: degree_bound + 1] / radius ** np.arange(degree_bound + 1)
    R = Polynomial(coeffs).trimmed(1e-9 * np.abs(coeffs).max())
    if R.degree < 1:
        return []

    candidates = []
    for x_star in poly_roots(R):
        if abs(x_star) > 1 + 1e-6:
            continue
        z_star = blaschke_eval(f, x_star / max(1.0, abs(x_star)))
        if abs(z_star) > 1 + 1e-6:
            continue
        if abs(z_star) > 1:
            z_star = z_star / abs(z_star)
        if all(abs(z_star - w) > PAIR_DISTINCT_TOL for w in candidates):
            candidates.append(z_star)

    scale = _coeff_scale(g1)
    confirmed = []
    for z in candidates:
        pts = distinct_points(fiber(f, z), PAIR_DISTINCT_TOL)
        collides = any(
            abs(poly_eval(g1, pts[i]) - poly_eval(g1, pts[j])) < 1e-7 * scale
            for i in range(len(pts)) for j in range(i + 1, len(pts)))
        if collides:
            confirmed.append(z)
    confirmed.sort(key=lambda w: (w.real, w.imag))
    return confirmed


def build_g2(f, g1, max_extra_degree=None):
    """Construct the correcting component for a validated g1.

    Returns q(x) * prod (x - c)^2 over the critical-fiber points c, with q
    the lowest-degree monomial or binomial making the pair (g1, g2)
    separate the exceptional fibers where g1 alone fails.  The candidate
    search is verified by explicit fiber enumeration over those base
    points and gives up (``SeparationImpossible``) past degree d + 2.
    """
    Z = check_g1(f, g1)
    d = f.degree
    if max_extra_degree is None:
        max_extra_degree = d + 2
    crit_pts = critical_fiber_points(f, Z)
    base = Polynomial.from_roots([c for c in crit_pts for _ in (0, 1)])
    exceptional = exceptional_base_points(f, g1)

    fibers = [distinct_points(fiber(f, z), PAIR_DISTINCT_TOL)
              for z in exceptional]
    scale1 = _coeff_scale(g1)

    def separates(g2):
        scale2 = _coeff_scale(g2)
        for pts in fibers:
            for i in range(len(pts)):
                for j in range(i + 1, len(pts)):
                    d1 = abs(poly_eval(g1, pts[i]) - poly_eval(g1, pts[j]))
                    d2 = abs(poly_eval(g2, pts[i]) - poly_eval(g2, pts[j]))
                    if d1 <= SEP_CHECK_TOL * scale1 and \
                            d2 <= SEP_CHECK_TOL * scale2:
                        return False
        return True

    for k in range(max_extra_degree + 1):
        candidates = [Polynomial.monomial(k)]
        candidates += [Polynomial.monomial(k) + Polynomial.monomial(j)
                       for j in range(k)]
        for q in candidates:
            g2 = q * base
            if separates(g2):
                return g2
    raise SeparationImpossible(
        f"no monomial or binomial correction of degree <= {max_extra_degree} "
        "separates the exceptional fibers")


# ---------------------------------------------------------------------------
# avoiding graphs: arc, greedy section, polynomial fit, verified region
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Arc:
    """Straight segment through the critical values, slightly extended."""

    start: complex
    end: complex

    def points(self, n):
        t = np.linspace(0.0, 1.0, n)
        return self.start + t * (self.end - self.start)

    @property
    def midpoint(self):
        return 0.5 * (self.start + self.end)

    @property
    def half_length(self):
        return 0.5 * abs(self.end - self.start)

    def distance(self, z):
        d = self.end - self.start
        L2 = abs(d) ** 2
        if L2 == 0:
            return np.abs(z - self.start)
        t = np.clip(((z - self.start) * np.conj(d)).real / L2, 0.0, 1.0)
        return np.abs(z - (self.start + t * d))


@dataclass(frozen=True)
class RoundDisc:
    center: complex
    radius: float

    def map_to_unit(self, z):
        """Affine map of this disc onto the closed unit disc."""
        return (z - self.center) / self.radius


@dataclass
class AvoidanceRegion:
    """Tube grid around the arc with per-point avoidance margins."""

    delta: float
    spacing: float
    points: np.ndarray
    margins: np.ndarray
    passed: np.ndarray
    threshold: float

    @property
    def fully_verified(self):
        return bool(self.passed.all())


@dataclass
class AlphaChoice:
    alpha: Polynomial
    arc: Arc | None
    region: AvoidanceRegion | None
    disc: RoundDisc
    margin: float
    margin_on_arc: float
    sigma_empty: bool


def _set_distance(value, points):
    if not points:
        return math.inf
    return min(abs(value - p) for p in points)


def _clip_segment_to_disc(start, end, radius):
    """Largest parameter subinterval of [start, end] inside |z| <= radius."""
    d = end - start
    a = abs(d) ** 2
    if a == 0:
        return start, end
    b = 2 * (start * np.conj(d)).real
    c = abs(start) ** 2 - radius ** 2
    disc = b * b - 4 * a * c
    if disc <= 0:
        return start, end
    t_lo = (-b - math.sqrt(disc)) / (2 * a)
    t_hi = (-b + math.sqrt(disc)) / (2 * a)
    lo = max(0.0, t_lo)
    hi = min(1.0, t_hi)
    if hi <= lo:
        return start, end
    return start + lo * d, start + hi * d


def _fit_polynomial(zs, vals, degree):
    V = np.vander(zs, degree + 1, increasing=True)
    coeffs, *_ = np.linalg.lstsq(V, vals, rcond=None)
    return Polynomial(coeffs)


def choose_alpha(v, arc_samples=256, grid_step=0.05, fit_degree=8,
                 delta=0.1, scan_grid=50):
    """Select a polynomial graph avoiding the collision variety near the arc.

    The arc is the straight segment through the critical values (ordered by
    real part), extended by 0.05 at both ends and clipped to the disc of
    radius 0.95.  A greedy section over the candidate square [-2, 2]^2 is
    smoothed, fitted by a polynomial of degree <= 8, and the margin is then
    re-verified on the arc and on a tube grid of radius ``delta`` (halved up
    to four times until the whole tube verifies).  Returns the polynomial,
    arc, verified region, the round disc for the conformal rescaling, and
    the avoidance margin.

    If every collision fiber is empty (checked by enumeration over a
    ``scan_grid`` x ``scan_grid`` polar grid) the zero polynomial works over
    the whole disc and the margin is reported as the infinity sentinel.
    """
    Z = list(v.data.critical_vals)
    if not Z:
        return AlphaChoice(Polynomial.zero(), None, None,
                           RoundDisc(0j, 1.0), math.inf, math.inf, True)

    radii = np.linspace(0.0, 1.0, scan_grid)
    angles = np.linspace(0.0, 2 * np.pi, scan_grid, endpoint=False)
    sigma_seen = False
    for r in radii:
        for t in angles:
            if sigma_fiber(v, r * cmath.exp(1j * t)):
                sigma_seen = True
                break
        if sigma_seen:
            break
    if not sigma_seen:
        return AlphaChoice(Polynomial.zero(), _make_arc(Z), None,
                           RoundDisc(0j, 1.0), math.inf, math.inf, True)

    arc = _make_arc(Z)
    zs = arc.points(arc_samples)
    sigma_on_arc = [sigma_fiber(v, complex(z)) for z in zs]

    side = np.arange(-2.0, 2.0 + grid_step / 2, grid_step)
    cand = (side[None, :] + 1j * side[:, None]).ravel()
    alpha0 = np.empty(arc_samples, dtype=complex)
    for k, sig in enumerate(sigma_on_arc):
        if not sig:
            alpha0[k] = 0j
            continue
        dist = np.full(cand.shape, math.inf)
        for a in sig:
            dist = np.minimum(dist, np.abs(cand - a))
        alpha0[k] = cand[int(np.argmax(dist))]

    window = 9
    for _ in range(2):
        padded = np.concatenate([alpha0[:window][::-1], alpha0,
                                 alpha0[-window:][::-1]])
        kernel = np.ones(window) / window
        alpha0 = np.convolve(padded, kernel, mode="same")[window:-window]

    # Fit degrees 0..fit_degree and keep the lowest one whose re-verified
    # arc margin is within a factor two of the best; low degree keeps the
    # polynomial tame off the arc, where the tube must still verify.
    def arc_margin_of(poly):
        m = math.inf
        for z, sig in zip(zs, sigma_on_arc):
            m = min(m, _set_distance(poly_eval(poly, complex(z)), sig))
        return m

    fits = []
    for deg in range(min(fit_degree, arc_samples - 1) + 1):
        poly = _fit_polynomial(zs, alpha0, deg)
        fits.append((deg, poly, arc_margin_of(poly)))
    best = max(m for _, _, m in fits)
    if best <= 0:
        raise NoAvoidingGraph("fitted graph touches the collision set on the arc")
    alpha, margin_on_arc = next(
        (poly, m) for _, poly, m in fits if m >= 0.5 * best)

    threshold = min(margin_on_arc, 10.0) / 2
    region = None
    for attempt in range(5):
        cur_delta = delta / 2 ** attempt
        region = _tube_region(v, alpha, arc, cur_delta, threshold)
        if region.fully_verified:
            break
    if not region.passed.any():
        raise NoAvoidingGraph(
            "no tube point keeps the required avoidance margin")

    margin = min(margin_on_arc, float(region.margins[region.passed].min()))
    if margin <= 0:
        raise NoAvoidingGraph("avoidance margin is not positive")

    disc = _largest_round_disc(arc, region)
    choice = AlphaChoice(alpha, arc, region, disc, margin, margin_on_arc,
                         False)
    if disc is None:
        err = NoRoundDisc(
            "the arc does not fit in any round disc inside the verified "
            "region (general conformal rescaling not implemented)")
        err.partial = choice
        raise err
    return choice


def _make_arc(Z):
    pts = sorted(Z, key=lambda w: (w.real, w.imag))
    start, end = pts[0], pts[-1]
    d = end - start
    if abs(d) > 0:
        u = d / abs(d)
        for p in pts[1:-1]:
            t = ((p - start) * np.conj(u)).real
            if abs(p - (start + t * u)) > 1e-8:
                raise InputError(
                    "critical values are not collinear; the straight-arc "
                    "construction only covers collinear critical values")
    else:
        u = 1.0 + 0j
    start, end = start - 0.05 * u, end + 0.05 * u
    start, end = _clip_segment_to_disc(start, end, 0.95)
    return Arc(complex(start), complex(end))


def _tube_region(v, alpha, arc, delta, threshold):
    h = delta / 6
    re_lo = min(arc.start.real, arc.end.real) - delta
    re_hi = max(arc.start.real, arc.end.real) + delta
    im_lo = min(arc.start.imag, arc.end.imag) - delta
    im_hi = max(arc.start.imag, arc.end.imag) + delta
    res = np.arange(re_lo, re_hi + h / 2, h)
    ims = np.arange(im_lo, im_hi + h / 2, h)
    grid = (res[None, :] + 1j * ims[:, None]).ravel()
    keep = (arc.distance(grid) <= delta) & (np.abs(grid) <= 0.97)
    pts = grid[keep]
    margins = np.empty(pts.shape, dtype=float)
    for k, z in enumerate(pts):
        margins[k] = _set_distance(poly_eval(alpha, complex(z)),
                                   sigma_fiber(v, complex(z)))
    passed = margins > threshold
    return AvoidanceRegion(delta, h, pts, margins, passed, threshold)


def refined_margin(v, choice, factor=4):
    """Re-verify the avoidance margin on a ``factor`` times finer tube grid.

    Returns the minimum distance from the graph to the collision sets over
    the refined grid, restricted to points near the verified part of the
    region.  Grid-refinement stability means this stays above half the
    reported margin.
    """
    region = choice.region
    if region is None:
        return math.inf
    arc, delta = choice.arc, region.delta
    h = region.spacing / factor
    re_lo = min(arc.start.real, arc.end.real) - delta
    re_hi = max(arc.start.real, arc.end.real) + delta
    im_lo = min(arc.start.imag, arc.end.imag) - delta
    im_hi = max(arc.start.imag, arc.end.imag) + delta
    res = np.arange(re_lo, re_hi + h / 2, h)
    ims = np.arange(im_lo, im_hi + h / 2, h)
    grid = (res[None, :] + 1j * ims[:, None]).ravel()
    keep = (arc.distance(grid) <= delta) & (np.abs(grid) <= 0.97)
    pts = grid[keep]
    if not region.fully_verified:
        good = region.points[region.passed]
        near = np.min(np.abs(pts[:, None] - good[None, :]), axis=1)
        pts = pts[near <= region.spacing]
    worst = math.inf
    for z in pts:
        worst = min(worst, _set_distance(poly_eval(choice.alpha, complex(z)),
                                         sigma_fiber(v, complex(z))))
    return worst


def _largest_round_disc(arc, region):
    mid = arc.midpoint
    r = min(region.delta, 0.95 - abs(mid))
    failing = region.points[~region.passed]
    if failing.size:
        r = min(r, float(np.abs(failing - mid).min()) - region.spacing)
    if r < arc.half_length:
        return None
    return RoundDisc(complex(mid), float(r))


# ---------------------------------------------------------------------------
# assembling and verifying the embedding over the round disc
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingReport:
    min_pair_distance: float
    min_differential: float
    boundary_deviation: float
    n_points: int
    n_pairs: int
    passed: bool


def separated_component(v, alpha):
    """The function g = g1 + alpha(f) * g2 as a callable on the surface."""
    f, g1, g2 = v.data.f, v.data.g1, v.data.g2

    def g(x):
        return poly_eval(g1, x) + \
            poly_eval(alpha, blaschke_eval(f, x)) * poly_eval(g2, x)

    return g


def assemble_embedding(v, alpha, disc, rng=None, n_points=142,
                       boundary_samples=256, interior_grid=(10, 24)):
    """Verification report for F' = (sigma o f, g) over the preimage of D0.

    Samples fibers over the round disc, checks injectivity on all pairs of
    ``n_points`` random surface samples (about n_points^2 / 2 pairs),
    positivity of the differential on an interior grid, and |sigma o f| = 1
    on the boundary fibers.  Raises ``InjectivityFailure`` with the
    offending pair when two distinct samples share an image.
    """
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    f = v.data.f
    g = separated_component(v, alpha)
    N, D = f.numerator(), f.denominator()
    fprime_num = (N.derivative() * D - N * D.derivative()).trimmed(1e-13)
    g1p, g2p = v.data.g1.derivative(), v.data.g2.derivative()
    alphap = alpha.derivative()

    def fprime(x):
        return poly_eval(fprime_num, x) / poly_eval(D, x) ** 2

    def dmap_norm(x):
        fz = blaschke_eval(f, x)
        dg = poly_eval(g1p, x) + \
            poly_eval(alphap, fz) * fprime(x) * poly_eval(v.data.g2, x) + \
            poly_eval(alpha, fz) * poly_eval(g2p, x)
        return math.hypot(abs(fprime(x)) / disc.radius, abs(dg))

    # injectivity over random fiber samples
    xs = []
    while len(xs) < n_points:
        r = math.sqrt(rng.uniform(0, 1))
        t = rng.uniform(0, 2 * math.pi)
        z = disc.center + disc.radius * r * cmath.exp(1j * t)
        pts = fiber(f, z)
        xs.append(pts[int(rng.integers(len(pts)))])
    xs = np.asarray(xs, dtype=complex)
    F1 = blaschke_eval(f, xs)
    F1 = (F1 - disc.center) / disc.radius
    F2 = np.asarray([g(x) for x in xs], dtype=complex)

    min_dist = math.inf
    n_pairs = 0
    worst = None
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if abs(xs[i] - xs[j]) < 1e-6:
                continue
            n_pairs += 1
            dist = math.hypot(abs(F1[i] - F1[j]), abs(F2[i] - F2[j]))
            if dist < min_dist:
                min_dist, worst = dist, (complex(xs[i]), complex(xs[j]))
    if min_dist < 1e-9:
        raise InjectivityFailure(
            f"sample points {worst[0]} and {worst[1]} share an image",
            pair=worst)

    # immersion on an interior polar grid of D0
    nr, nt = interior_grid
    min_diff = math.inf
    for r in np.linspace(0.1, 0.95, nr):
        for t in np.linspace(0, 2 * math.pi, nt, endpoint=False):
            z = disc.center + disc.radius * r * cmath.exp(1j * t)
            for x in fiber(f, z):
                min_diff = min(min_diff, dmap_norm(x))

    # boundary fibers map onto the unit circle
    dev = 0.0
    for t in np.linspace(0, 2 * math.pi, boundary_samples, endpoint=False):
        z = disc.center + disc.radius * cmath.exp(1j * t)
        for x in fiber(f, z):
            dev = max(dev, abs(abs(disc.map_to_unit(blaschke_eval(f, x))) - 1))

    passed = min_dist > 0 and min_diff > 1e-10 and dev < 1e-9
    return EmbeddingReport(float(min_dist), float(min_diff), float(dev),
                           int(len(xs)), int(n_pairs), bool(passed))
