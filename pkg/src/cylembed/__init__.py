"""Numerical toolkit for embedding machinery on disc-like domains.

Subpackages cover: complex polynomial and winding primitives (``core``),
finite Blaschke products (``inner``), hyperelliptic double covers and their
inner pairs (``hyperelliptic``), fiber-collision varieties and avoiding
graphs (``sigma``), the winding obstruction family (``obstruction``), a
spectral-collocation Riemann-Hilbert solver (``rh``), and Newton
continuation of boundary maps onto perturbed cylinders (``deform``).
"""

from .core import (BoundaryLoop, PlanarDomain, Polynomial, boundary_index,
                   poly_eval, poly_roots, winding_number)
from .inner import (BlaschkeProduct, blaschke_degree, blaschke_eval,
                    critical_values, fiber)
from .hyperelliptic import (HyperellipticCurve, SurfacePoint, curve_rhs,
                            inner_pair, topology, verify_class_F)
from .sigma import (SigmaVariety, assemble_embedding, build_g2, choose_alpha,
                    make_variety, sigma_fiber)
from .obstruction import graph_intersections, minimal_blocking_k
from .rh import RHProblem, RHSolution, kernel_dimension, rh_index, \
    rh_problem, rh_solve
from .deform import (newton_continue, perturbation_family,
                     verify_on_hypersurface)

__version__ = "0.1.0"

__all__ = [
    "BoundaryLoop", "PlanarDomain", "Polynomial", "boundary_index",
    "poly_eval", "poly_roots", "winding_number",
    "BlaschkeProduct", "blaschke_degree", "blaschke_eval",
    "critical_values", "fiber",
    "HyperellipticCurve", "SurfacePoint", "curve_rhs", "inner_pair",
    "topology", "verify_class_F",
    "SigmaVariety", "assemble_embedding", "build_g2", "choose_alpha",
    "make_variety", "sigma_fiber",
    "graph_intersections", "minimal_blocking_k",
    "RHProblem", "RHSolution", "kernel_dimension", "rh_index",
    "rh_problem", "rh_solve",
    "newton_continue", "perturbation_family", "verify_on_hypersurface",
]
