"""Newton continuation of boundary maps onto perturbed cylinders.

Given a real defining function rho close to |z|^2 - 1 and a starting inner
function f0, find f near f0 with rho(f(x), g0(x)) = 0 on the boundary
circle, keeping the second component g0 fixed.  Each Newton step solves
the linear Riemann-Hilbert problem Re(conj(a) k) = -rho(f, g0) with the
linearized coefficient a = 2 d/d(conj z) rho evaluated along the current
map, taking the minimal-norm solution so the continuation selects a
deterministic branch of the solution family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PlanarDomain, Polynomial, poly_eval
from .errors import (InjectivityFailure, InputError, InteriorEscape,
                     NoConvergence, OutOfSampleFailure, VanishingCoefficient)
from .inner import BlaschkeProduct, blaschke_eval
from .rh import eval_series, rh_problem, rh_solve

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 12
SUP_NORM_GUARD = 2.0
SERIES_CONSISTENCY_TOL = 1e-10


@dataclass(frozen=True)
class DefectFunctional:
    """Real defining function with its analytic conj-z Wirtinger derivative.

    At perturbation scale zero every registered family reduces to
    |z|^2 - 1, whose zero set in the cylinder is the boundary torus wall.
    """

    name: str
    epsilon: float
    rho: callable
    d_zbar: callable


def perturbation_family(name, epsilon):
    """Registry of shipped perturbation families with analytic derivatives.

    radial:  |z|^2 - (1 - eps)            d_zbar = z
    re_w:    |z|^2 - 1 + eps * Re(w)      d_zbar = z
    mixed:   |z|^2 - 1 + eps * Re(z w~)   d_zbar = z + eps * w / 2
    """
    eps = float(epsilon)
    if name == "radial":
        return DefectFunctional(
            name, eps,
            lambda z, w: (np.abs(z) ** 2 - (1 - eps)),
            lambda z, w: np.asarray(z, dtype=complex))
    if name == "re_w":
        return DefectFunctional(
            name, eps,
            lambda z, w: (np.abs(z) ** 2 - 1 + eps * np.real(w)),
            lambda z, w: np.asarray(z, dtype=complex))
    if name == "mixed":
        return DefectFunctional(
            name, eps,
            lambda z, w: (np.abs(z) ** 2 - 1 + eps * np.real(z * np.conj(w))),
            lambda z, w: np.asarray(z, dtype=complex) + eps * np.asarray(w, dtype=complex) / 2)
    raise InputError(f"unknown perturbation family {name!r}")


def as_callable(component):
    """Normalize a second component to a plain callable on complex arrays."""
    if isinstance(component, Polynomial):
        return lambda z: poly_eval(component, z)
    if isinstance(component, BlaschkeProduct):
        return lambda z: blaschke_eval(component, z)
    if callable(component):
        return component
    raise InputError("second component must be Polynomial, BlaschkeProduct, "
                     "or callable")


@dataclass
class BoundaryMapState:
    """First component as a power series consistent with its boundary samples."""

    coeffs: np.ndarray
    boundary_z: np.ndarray
    samples: np.ndarray
    g0: object
    g0_samples: np.ndarray

    def evaluate(self, z):
        return eval_series(self.coeffs, 0, z)


def series_from_boundary(values, n_coeffs):
    """Power-series coefficients of an analytic function from circle samples.

    The FFT of equispaced boundary values yields the Taylor coefficients;
    the truncation must reproduce the samples to 1e-10, otherwise the
    function decays too slowly for this mode count.
    """
    vals = np.asarray(values, dtype=complex)
    m = vals.size
    if n_coeffs > m:
        raise InputError("more coefficients requested than samples")
    coeffs = np.fft.fft(vals) / m
    coeffs = coeffs[:n_coeffs]
    z = np.exp(2j * np.pi * np.arange(m) / m)
    recon = eval_series(coeffs, 0, z)
    err = float(np.max(np.abs(recon - vals)))
    if err > SERIES_CONSISTENCY_TOL:
        raise InputError(
            f"series truncation error {err:.2e} exceeds "
            f"{SERIES_CONSISTENCY_TOL}; increase the mode count")
    return coeffs


def linearized_coefficient(rho, state):
    """Boundary coefficient a = 2 d/d(conj z) rho along the current map.

    For real rho this conjugates to twice the z-derivative, which is the
    coefficient appearing in the linearized boundary condition.  Raises
    ``VanishingCoefficient`` when |a| dips below 1e-8 anywhere.
    """
    a = 2 * rho.d_zbar(state.samples, state.g0_samples)
    small = float(np.min(np.abs(a)))
    if small < 1e-8:
        raise VanishingCoefficient(
            f"linearized coefficient reaches modulus {small:.2e}")
    return a


@dataclass(frozen=True)
class ContinuationResult:
    state: BoundaryMapState
    residuals: tuple
    iterations: int
    converged: bool


def initial_state(f0, g0, samples=512, modes=None):
    if modes is None:
        modes = 4 * f0.degree + 8
    theta = np.arange(samples) * 2 * np.pi / samples
    z = np.exp(1j * theta)
    f_vals = blaschke_eval(f0, z)
    coeffs = series_from_boundary(f_vals, modes + 1)
    g0_fn = as_callable(g0)
    g0_vals = np.asarray(g0_fn(z), dtype=complex)
    if np.max(np.abs(g0_vals)) >= 1:
        raise InputError("second component must have sup norm < 1")
    return BoundaryMapState(coeffs, z, eval_series(coeffs, 0, z),
                            g0_fn, g0_vals)


def newton_continue(rho, f0, g0, max_iter=DEFAULT_MAX_ITER, tol=DEFAULT_TOL,
                    samples=512, modes=None):
    """Deform f0 until the boundary lands on the zero set of rho.

    Full Newton steps through the minimal-norm Riemann-Hilbert solution;
    on a residual increase the step is halved up to four times and the
    last candidate accepted.  Stops when the max boundary defect drops
    below ``tol``; at scale zero the defect already vanishes and f0 is
    returned unchanged with zero iterations.  Raises ``NoConvergence``
    (carrying the residual trace) after ``max_iter`` iterations and guards
    the running sup norm against leaving |f| < 2.
    """
    if modes is None:
        modes = 4 * f0.degree + 8
    state = initial_state(f0, g0, samples, modes)
    domain = PlanarDomain.disc(samples=samples)
    trace = []

    def defect(sample_vals):
        return float(np.max(np.abs(rho.rho(sample_vals, state.g0_samples))))

    res = defect(state.samples)
    trace.append(res)
    for it in range(max_iter):
        if res < tol:
            return ContinuationResult(state, tuple(trace), it, True)
        a = linearized_coefficient(rho, state)
        rhs = -rho.rho(state.samples, state.g0_samples)
        problem = rh_problem(domain, (a,), (rhs,))
        sol = rh_solve(problem, modes)
        step = np.zeros_like(state.coeffs)
        step[: len(sol.particular)] = sol.particular
        scale = 1.0
        for _ in range(5):
            cand = state.coeffs + scale * step
            cand_samples = eval_series(cand, 0, state.boundary_z)
            cand_res = defect(cand_samples)
            if cand_res < res or scale <= 1 / 16:
                break
            scale /= 2
        state = BoundaryMapState(cand, state.boundary_z, cand_samples,
                                 state.g0, state.g0_samples)
        if float(np.max(np.abs(state.samples))) >= SUP_NORM_GUARD:
            raise NoConvergence(
                "iterate left the admissible ball |f| < 2", trace)
        res = cand_res
        trace.append(res)
    if res < tol:
        return ContinuationResult(state, tuple(trace), max_iter, True)
    raise NoConvergence(
        f"residual {res:.3e} after {max_iter} iterations", trace)


@dataclass(frozen=True)
class HypersurfaceReport:
    out_of_sample_residual: float
    interior_max: float
    interior_points: int
    injectivity_min_distance: float
    passed: bool


def verify_on_hypersurface(state, rho, finer_factor=4, tol=DEFAULT_TOL,
                           rng=None, n_pairs=2000, interior_points=500):
    """Out-of-sample and interior checks for a converged continuation.

    Re-evaluates the boundary defect on a grid ``finer_factor`` times
    denser (must stay below 10 * tol), checks rho < 0 strictly on an
    interior grid pulled back through the series, and samples random point
    pairs for injectivity of (f, g0).
    """
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    m = state.boundary_z.size * finer_factor
    z_fine = np.exp(2j * np.pi * np.arange(m) / m)
    f_fine = state.evaluate(z_fine)
    g_fine = np.asarray(state.g0(z_fine), dtype=complex)
    oos = float(np.max(np.abs(rho.rho(f_fine, g_fine))))
    if oos > 10 * tol:
        raise OutOfSampleFailure(
            f"defect {oos:.2e} on the {finer_factor}x grid exceeds "
            f"{10 * tol:.2e}")

    n_r = max(4, int(math.sqrt(interior_points / 2)))
    n_t = max(8, -(-interior_points // n_r))
    radii = np.linspace(0.05, 0.95, n_r)
    angles = np.linspace(0, 2 * np.pi, n_t, endpoint=False)
    pts = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    vals = rho.rho(state.evaluate(pts), np.asarray(state.g0(pts), dtype=complex))
    interior_max = float(np.max(vals))
    if interior_max >= 0:
        raise InteriorEscape(
            f"rho reaches {interior_max:.2e} >= 0 at an interior point")

    r = np.sqrt(rng.uniform(0, 1, size=2 * n_pairs))
    t = rng.uniform(0, 2 * np.pi, size=2 * n_pairs)
    xs = (r * np.exp(1j * t)).reshape(2, n_pairs)
    f_pairs = state.evaluate(xs)
    g_pairs = np.asarray(state.g0(xs), dtype=complex)
    sep = np.hypot(np.abs(f_pairs[0] - f_pairs[1]),
                   np.abs(g_pairs[0] - g_pairs[1]))
    base = np.abs(xs[0] - xs[1])
    genuine = base > 1e-6
    min_dist = float(sep[genuine].min()) if genuine.any() else math.inf
    if genuine.any() and min_dist < 1e-9:
        k = int(np.argmin(np.where(genuine, sep, np.inf)))
        raise InjectivityFailure(
            f"points {xs[0][k]} and {xs[1][k]} share an image",
            pair=(complex(xs[0][k]), complex(xs[1][k])))

    return HypersurfaceReport(oos, interior_max, int(pts.size),
                              min_dist, True)
