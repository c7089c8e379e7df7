"""Linear Riemann-Hilbert problems on disc and annulus by collocation.

Solve Re(conj(a) * k) = c on the boundary for k holomorphic inside: k is a
truncated power series (disc) or Laurent series (annulus), the boundary
condition is one real equation per collocation point, and the resulting
real least-squares system is solved through its SVD.  Singular values
below a relative threshold span the solution space of the homogeneous
problem, whose dimension realizes the index count
2 * index - (2 * genus + components - 2) whenever the index is at least
2 * genus + components - 1.
"""

from __future__ import annotations

import numpy as np

from dataclasses import dataclass

from .core import PlanarDomain, boundary_index, loop_samples_of
from .errors import IllPosedSampling, InputError, UnstableDimension

DEFAULT_SVD_TOL = 1e-8
RESIDUAL_TOL = 1e-7
NOISE_COLUMN_TOL = 1e-12


@dataclass(frozen=True)
class RHProblem:
    """Boundary data: nonvanishing a and real c sampled on every loop."""

    domain: PlanarDomain
    a: tuple
    c: tuple


def rh_problem(domain, a, c):
    """Build a validated problem from callables, arrays, or scalars."""
    a_loops = loop_samples_of(a, domain.loops)
    c_loops = loop_samples_of(c, domain.loops)
    for loop, av, cv in zip(domain.loops, a_loops, c_loops):
        if av.size != loop.samples or cv.size != loop.samples:
            raise InputError("sample counts must match the domain loops")
        if np.min(np.abs(av)) <= 1e-10:
            raise InputError("a must be nonzero at every boundary sample")
        if np.max(np.abs(cv.imag)) > 1e-12:
            raise InputError("c must be real-valued")
    c_loops = tuple(cv.real.astype(float) for cv in c_loops)
    return RHProblem(domain, a_loops, c_loops)


@dataclass(frozen=True)
class RHSolution:
    """Least-squares solution: series coefficients plus kernel data.

    ``particular`` holds complex coefficients for powers
    ``min_mode .. min_mode + len - 1``; ``kernel_basis`` spans the
    homogeneous solutions (orthonormal as real coefficient vectors);
    ``residual`` is the max boundary defect of the particular solution.
    """

    particular: np.ndarray
    kernel_basis: tuple
    index: int
    residual: float
    modes: int
    min_mode: int
    singular_values: np.ndarray
    svd_tol: float

    @property
    def kernel_dimension(self):
        return len(self.kernel_basis)


def eval_series(coeffs, min_mode, z):
    """Evaluate a power/Laurent series with the given lowest mode at z."""
    zz = np.asarray(z, dtype=complex)
    ns = min_mode + np.arange(len(coeffs))
    out = (zz[..., None] ** ns) @ np.asarray(coeffs, dtype=complex)
    return out if isinstance(z, np.ndarray) else complex(out)


def rh_index(problem):
    """Index of a: summed boundary windings with coherent orientation."""
    return boundary_index(problem.a, problem.domain)


def _modes_for(domain, modes):
    if domain.kind == "disc":
        return np.arange(0, modes + 1), 0
    return np.arange(-modes, modes + 1), -modes


def _assemble(problem, modes):
    ns, min_mode = _modes_for(problem.domain, modes)
    blocks, mags, rhs = [], [], []
    for loop, av, cv in zip(problem.domain.loops, problem.a, problem.c):
        z = loop.points()
        Phi = z[:, None] ** ns[None, :]
        Mc = np.conj(av)[:, None] * Phi
        blocks.append(np.hstack([Mc.real, -Mc.imag]))
        mags.append(np.abs(Mc) ** 2)
        rhs.append(cv)
    A = np.vstack(blocks)
    b = np.concatenate(rhs)
    colmag = np.sqrt(np.sum(np.vstack(mags), axis=0))
    colmag = np.concatenate([colmag, colmag])
    return A, b, colmag, min_mode


def rh_solve(problem, modes, svd_tol=DEFAULT_SVD_TOL):
    """Solve the boundary problem by scaled least squares over the SVD.

    Requires ``modes >= 4 |index| + 8`` and at least ``4 * modes`` samples
    per loop.  Columns whose real projection is pure rounding noise
    relative to the complex column magnitude correspond to unknowns absent
    from the equations; they are zeroed exactly so the SVD reports them as
    kernel directions instead of amplifying noise.  The particular
    solution is the minimal-norm one in scaled coefficients; kernel
    vectors are the right singular vectors below ``svd_tol`` relative to
    the top singular value, re-orthonormalized after unscaling.
    """
    index = rh_index(problem)
    if modes < 4 * abs(index) + 8:
        raise InputError(
            f"modes {modes} too small for index {index}; need >= "
            f"{4 * abs(index) + 8}")
    min_samples = min(lp.samples for lp in problem.domain.loops)
    if min_samples < 4 * modes:
        raise InputError(
            f"need >= {4 * modes} samples per loop, got {min_samples}")

    A, b, colmag, min_mode = _assemble(problem, modes)
    if A.shape[0] < A.shape[1]:
        raise IllPosedSampling(
            f"{A.shape[0]} equations for {A.shape[1]} unknowns")

    colnorm = np.linalg.norm(A, axis=0)
    noise = colnorm <= NOISE_COLUMN_TOL * np.maximum(colmag, 1e-300)
    A = A.copy()
    A[:, noise] = 0.0
    scale = np.where(noise, 1.0, np.maximum(colnorm, 1e-300))
    As = A / scale

    U, s, Vt = np.linalg.svd(As, full_matrices=False)
    kernel_mask = s < svd_tol * s[0]
    inv = np.where(kernel_mask, 0.0, 1.0 / np.where(kernel_mask, 1.0, s))
    x_scaled = Vt.T @ (inv * (U.T @ b))
    x = x_scaled / scale
    residual = float(np.max(np.abs(A @ x - b)))

    n = len(x) // 2
    kernel = []
    if kernel_mask.any():
        raw = (Vt[kernel_mask] / scale).T     # columns are kernel vectors
        q, _ = np.linalg.qr(raw)
        for col in q.T:
            kernel.append(col[:n] + 1j * col[n:])

    return RHSolution(
        particular=x[:n] + 1j * x[n:],
        kernel_basis=tuple(kernel),
        index=index,
        residual=residual,
        modes=modes,
        min_mode=min_mode,
        singular_values=s,
        svd_tol=svd_tol,
    )


def kernel_dimension(problem, modes, svd_tol=DEFAULT_SVD_TOL):
    """Kernel dimension, certified stable under a mode refinement.

    Runs the solver at ``modes`` and ``modes + 4`` (the problem must carry
    at least ``4 * (modes + 4)`` samples per loop) and raises
    ``UnstableDimension`` when the two counts disagree.
    """
    d1 = rh_solve(problem, modes, svd_tol).kernel_dimension
    d2 = rh_solve(problem, modes + 4, svd_tol).kernel_dimension
    if d1 != d2:
        raise UnstableDimension(
            f"kernel count {d1} at {modes} modes but {d2} at {modes + 4}")
    return d1


def boundary_defect(solution, problem, coeffs=None):
    """Max of |Re(conj(a) k) - c| over all boundary samples."""
    k = solution.particular if coeffs is None else coeffs
    worst = 0.0
    for loop, av, cv in zip(problem.domain.loops, problem.a, problem.c):
        z = loop.points()
        vals = eval_series(k, solution.min_mode, z)
        worst = max(worst, float(np.max(np.abs(
            (np.conj(av) * vals).real - cv))))
    return worst


def solvability_threshold(domain):
    """Smallest index for which solvability and the kernel count are certified."""
    return 2 * domain.genus + domain.boundary_components - 1


def expected_kernel_dimension(domain, index):
    """The certified kernel dimension for indices above the threshold."""
    return 2 * index - (2 * domain.genus + domain.boundary_components - 2)
