"""Command-line front end: JSON run specifications in, JSON/CSV/PNG out.

A run spec selects one of the five commands (hyperelliptic, sigma,
obstruction, rh, deform) with command-specific parameters, a seed that
fully determines all randomized sampling, and an output prefix.  Each run
writes ``<prefix>.result.json`` (the full machine-readable report),
``<prefix>.curves.csv`` with plot-ready sampled curves (columns
series,t,re,im), and ``<prefix>.png`` rendering those curves.  Exit codes:
0 all checks passed, 1 input/schema error, 2 a verification check failed.

Spec schema (complex numbers are [re, im] pairs; unknown keys rejected)::

    {"command": "rh", "seed": 0, "output": "out/run",
     "params": {...command-specific...}}

    hyperelliptic: branchPoints [[re,im],..] required; nSamples int (400);
                   boundarySamples int (512)
    sigma:         fZeros [[re,im],..] required; fPhase [re,im] ([1,0]);
                   g1Coeffs [[re,im],..] required; g2Coeffs (optional:
                   built when absent); assemble bool (true)
    obstruction:   alphaCoeffs [[re,im],..] required; r float (0.9);
                   k int (optional: defaults to the minimal blocking slope)
    rh:            domain "disc"|"annulus"; innerRadius float (0.5);
                   aDegree int required (a = z^deg per loop orientation,
                   annulus pairs z^deg outside with 1 inside); cValue
                   float (0.0); modes int (4|deg|+8); samplesPerLoop int
                   (4*(modes+4)); svdTol float (1e-8)
    deform:        family "radial"|"re_w"|"mixed"; epsilon float; f0Degree
                   int or f0Zeros [[re,im],..]; g0Coeffs ([[0,0],[0.5,0]]);
                   tol float (1e-8); maxIter int (12); samples int (512);
                   modes int (optional); finerFactor int (4)
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys

import numpy as np

from . import __version__
from .core import PlanarDomain, Polynomial, poly_eval
from .deform import newton_continue, perturbation_family, verify_on_hypersurface
from .errors import CheckFailure, InputError
from .hyperelliptic import (HyperellipticCurve, boundary_lifts, curve_rhs,
                            verify_class_F)
from .inner import BlaschkeProduct, blaschke_eval
from .obstruction import graph_intersections, minimal_blocking_k
from .rh import (eval_series, expected_kernel_dimension,
                 kernel_dimension, rh_problem, rh_solve,
                 solvability_threshold)
from .sigma import (assemble_embedding, build_g2, choose_alpha, make_variety,
                    sigma_fiber)


class SchemaError(InputError):
    pass


# ---------------------------------------------------------------------------
# spec parsing
# ---------------------------------------------------------------------------

COMMANDS = ("hyperelliptic", "sigma", "obstruction", "rh", "deform")

_PARAM_FIELDS = {
    "hyperelliptic": {"branchPoints", "nSamples", "boundarySamples"},
    "sigma": {"fZeros", "fPhase", "g1Coeffs", "g2Coeffs", "assemble"},
    "obstruction": {"alphaCoeffs", "r", "k"},
    "rh": {"domain", "innerRadius", "aDegree", "cValue", "modes",
           "samplesPerLoop", "svdTol"},
    "deform": {"family", "epsilon", "f0Degree", "f0Zeros", "g0Coeffs",
               "tol", "maxIter", "samples", "modes", "finerFactor"},
}


def _line_of(key, raw):
    for n, line in enumerate(raw.splitlines(), start=1):
        if f'"{key}"' in line:
            return n
    return None


def _schema_fail(key, raw, message):
    line = _line_of(key, raw)
    where = f"line {line}: " if line else ""
    raise SchemaError(f"{where}{message}")


def _as_complex(pair, key, raw):
    if not (isinstance(pair, list) and len(pair) == 2
            and all(isinstance(v, (int, float)) for v in pair)):
        _schema_fail(key, raw, f"{key!r} entries must be [re, im] pairs")
    return complex(pair[0], pair[1])


def _complex_list(value, key, raw):
    if not isinstance(value, list) or not value:
        _schema_fail(key, raw, f"{key!r} must be a nonempty list of [re, im]")
    return [_as_complex(p, key, raw) for p in value]


def parse_spec(raw):
    """Parse and strictly validate a JSON run spec (raw text)."""
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SchemaError("line 1: spec must be a JSON object")
    allowed_top = {"command", "params", "seed", "output"}
    for key in data:
        if key not in allowed_top:
            _schema_fail(key, raw, f"unknown field {key!r}")
    command = data.get("command")
    if command not in COMMANDS:
        _schema_fail("command", raw,
                     f"command must be one of {', '.join(COMMANDS)}")
    params = data.get("params", {})
    if not isinstance(params, dict):
        _schema_fail("params", raw, "params must be an object")
    for key in params:
        if key not in _PARAM_FIELDS[command]:
            _schema_fail(key, raw,
                         f"unknown parameter {key!r} for command {command!r}")
    seed = data.get("seed", 0)
    if not isinstance(seed, int) or seed < 0:
        _schema_fail("seed", raw, "seed must be a nonnegative integer")
    output = data.get("output")
    if output is not None and not isinstance(output, str):
        _schema_fail("output", raw, "output must be a string prefix")
    return {"command": command, "params": params, "seed": seed,
            "output": output}


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def rh_problem_to_json(problem):
    """Serialize a boundary problem.

    Schema: ``{"domain": {"kind", "innerRadius", "samplesPerLoop"},
    "a": [[re, im] per sample] per loop, "c": [float per sample] per loop}``.
    """
    return {
        "domain": {
            "kind": problem.domain.kind,
            "innerRadius": problem.domain.inner_radius,
            "samplesPerLoop": problem.domain.loops[0].samples,
        },
        "a": [[[v.real, v.imag] for v in loop] for loop in problem.a],
        "c": [[float(v) for v in loop] for loop in problem.c],
    }


def rh_problem_from_json(data):
    dom = data["domain"]
    if dom["kind"] == "disc":
        domain = PlanarDomain.disc(samples=dom["samplesPerLoop"])
    else:
        domain = PlanarDomain.annulus(dom["innerRadius"],
                                      samples=dom["samplesPerLoop"])
    a = [np.array([complex(re, im) for re, im in loop]) for loop in data["a"]]
    c = [np.array(loop, dtype=float) for loop in data["c"]]
    return rh_problem(domain, a, c)


def rh_solution_to_json(solution):
    """Serialize a solution: coefficients are [re, im] pairs from minMode up."""
    return {
        "minMode": solution.min_mode,
        "modes": solution.modes,
        "index": solution.index,
        "residual": solution.residual,
        "svdTol": solution.svd_tol,
        "particular": [[v.real, v.imag] for v in solution.particular],
        "kernelBasis": [[[v.real, v.imag] for v in k]
                        for k in solution.kernel_basis],
    }


def jsonable(obj):
    """Convert reports to JSON-serializable data: complex -> [re, im]."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.complexfloating,)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    return obj


def _write_outputs(prefix, result, curves, verbose=False):
    json_path = f"{prefix}.result.json"
    with open(json_path, "w") as fh:
        json.dump(jsonable(result), fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths = [json_path]
    if curves:
        csv_path = f"{prefix}.curves.csv"
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["series", "t", "re", "im"])
            writer.writerows(curves)
        paths.append(csv_path)
        from .plots import render_figure
        png = render_figure(curves, f"{prefix}.png",
                            title=result.get("command"))
        if png:
            paths.append(png)
    if verbose:
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    return paths


def _curve_rows(name, ts, values):
    return [(name, float(t), float(np.real(v)), float(np.imag(v)))
            for t, v in zip(ts, values)]


# ---------------------------------------------------------------------------
# command runners: each returns (report dict, curve rows, checks_passed)
# ---------------------------------------------------------------------------

def _run_hyperelliptic(params, rng):
    branch = _complex_list(params["branchPoints"], "branchPoints", "")
    n_samples = params.get("nSamples", 400)
    b_samples = params.get("boundarySamples", 512)
    curve = HyperellipticCurve(branch)
    report = verify_class_F(curve, n_samples, rng=rng,
                            boundary_samples=b_samples)
    curves = []
    theta = np.linspace(0, 1, 256)
    circle = np.exp(2j * np.pi * theta)
    curves += _curve_rows("curve_rhs_boundary", theta, curve_rhs(curve, circle))
    for i, (x, y) in enumerate(boundary_lifts(curve, b_samples)):
        den = np.ones_like(x)
        for b in curve.branch_points:
            den = den * (1 - np.conj(b) * x)
        ts = np.linspace(0, 1, len(x), endpoint=False)
        curves += _curve_rows(f"f_boundary_lift{i}", ts, y / den)
    out = {"classF": report.is_class_f, "genus": report.genus,
           "boundaryComponents": report.boundary_components,
           "degF": report.degree_f, "report": report}
    return out, curves, report.is_class_f


def _run_sigma(params, rng):
    f = BlaschkeProduct(_complex_list(params["fZeros"], "fZeros", ""),
                        _as_complex(params.get("fPhase", [1, 0]), "fPhase", ""))
    g1 = Polynomial(_complex_list(params["g1Coeffs"], "g1Coeffs", ""))
    if "g2Coeffs" in params:
        g2 = Polynomial(_complex_list(params["g2Coeffs"], "g2Coeffs", ""))
    else:
        g2 = build_g2(f, g1)
    variety = make_variety(f, g1, g2)
    choice = choose_alpha(variety)
    report = {
        "g2Coeffs": list(g2.coeffs),
        "alphaCoeffs": list(choice.alpha.coeffs),
        "margin": choice.margin,
        "marginOnArc": choice.margin_on_arc,
        "sigmaEmpty": choice.sigma_empty,
        "maxFiberSize": variety.max_fiber_size,
        "disc": {"center": complex(choice.disc.center),
                 "radius": choice.disc.radius},
        "arc": None if choice.arc is None else
               {"start": complex(choice.arc.start),
                "end": complex(choice.arc.end)},
    }
    passed = choice.margin > 0
    if params.get("assemble", True):
        emb = assemble_embedding(variety, choice.alpha, choice.disc, rng=rng)
        report["embedding"] = emb
        passed = passed and emb.passed

    curves = []
    for j in range(8):
        ang = 2 * np.pi * j / 8
        rows = []
        for r in np.linspace(0.05, 1.0, 64):
            z = r * complex(math.cos(ang), math.sin(ang))
            for a in sigma_fiber(variety, z):
                rows.append((r, a))
        curves += _curve_rows(f"sigma_ray_{j}", [t for t, _ in rows],
                              [v for _, v in rows])
    if choice.arc is not None:
        ts = np.linspace(0, 1, 64)
        arc_pts = choice.arc.points(64)
        curves += _curve_rows("arc", ts, arc_pts)
        curves += _curve_rows("alpha_on_arc", ts,
                              poly_eval(choice.alpha, arc_pts))
    return report, curves, passed


def _run_obstruction(params, rng):
    alpha = Polynomial(_complex_list(params["alphaCoeffs"], "alphaCoeffs", ""))
    r = params.get("r", 0.9)
    cert = minimal_blocking_k(alpha, r)
    k = params.get("k", cert.k0)
    intersections = graph_intersections(alpha, k, r)
    total = intersections.total
    report = {"k0": cert.k0, "maxModulus": cert.max_modulus,
              "blockingWinding": cert.winding, "k": k,
              "radius": intersections.radius,
              "components": intersections.components,
              "totalIntersections": total}
    theta = np.linspace(0, 1, 512, endpoint=False)
    circle = r * np.exp(2j * np.pi * theta)
    h = cert.k0 * circle - poly_eval(alpha, circle)
    curves = _curve_rows("blocking_winding_curve", theta, h)
    # intersections are only guaranteed from the blocking slope upward
    passed = cert.winding == 1 and (k < cert.k0 or total >= 1)
    return report, curves, passed


def _run_rh(params, rng):
    kind = params.get("domain", "disc")
    if kind not in ("disc", "annulus"):
        raise SchemaError("domain must be 'disc' or 'annulus'")
    degree = params["aDegree"]
    if not isinstance(degree, int):
        raise SchemaError("aDegree must be an integer")
    modes = params.get("modes", 4 * abs(degree) + 8)
    samples = params.get("samplesPerLoop", 4 * (modes + 4))
    svd_tol = params.get("svdTol", 1e-8)
    c_value = params.get("cValue", 0.0)

    if kind == "disc":
        domain = PlanarDomain.disc(samples=samples)
        a = [lambda z: z ** degree if degree >= 0
             else np.conj(z) ** (-degree)]
    else:
        domain = PlanarDomain.annulus(params.get("innerRadius", 0.5),
                                      samples=samples)
        a = [lambda z: z ** degree if degree >= 0
             else np.conj(z) ** (-degree),
             lambda z: np.ones(len(z))]
    problem = rh_problem(domain, a,
                         lambda z: np.full(len(z), float(c_value)))
    solution = rh_solve(problem, modes, svd_tol)
    index = solution.index
    threshold = solvability_threshold(domain)
    stable_dim = kernel_dimension(problem, modes, svd_tol)
    report = {
        "domain": kind,
        "index": index,
        "kernelDimension": stable_dim,
        "residual": solution.residual,
        "modes": modes,
        "samplesPerLoop": samples,
        "solvabilityGuaranteed": index >= threshold,
        "expectedKernelDimension":
            expected_kernel_dimension(domain, index)
            if index >= threshold else None,
        "particular": list(solution.particular),
        "minMode": solution.min_mode,
        "kernelBasis": [list(k) for k in solution.kernel_basis],
    }
    passed = True
    if index >= threshold:
        passed = (stable_dim == expected_kernel_dimension(domain, index)
                  and solution.residual < 1e-7)
    curves = []
    for i, loop in enumerate(domain.loops):
        z = loop.points()
        ts = np.linspace(0, 1, len(z), endpoint=False)
        vals = eval_series(solution.particular, solution.min_mode, z)
        curves += _curve_rows(f"particular_boundary_loop{i}", ts, vals)
        for j, kvec in enumerate(solution.kernel_basis[:4]):
            curves += _curve_rows(
                f"kernel{j}_loop{i}", ts,
                eval_series(kvec, solution.min_mode, z))
    return report, curves, passed


def _run_deform(params, rng):
    family = params.get("family")
    if family not in ("radial", "re_w", "mixed"):
        raise SchemaError("family must be radial, re_w, or mixed")
    if "epsilon" not in params:
        raise SchemaError("epsilon is required")
    rho = perturbation_family(family, params["epsilon"])
    if "f0Zeros" in params:
        f0 = BlaschkeProduct(_complex_list(params["f0Zeros"], "f0Zeros", ""))
    else:
        f0 = BlaschkeProduct([0] * params.get("f0Degree", 2))
    g0 = Polynomial(_complex_list(params.get("g0Coeffs", [[0, 0], [0.5, 0]]),
                                  "g0Coeffs", ""))
    tol = params.get("tol", 1e-8)
    result = newton_continue(rho, f0, g0,
                             max_iter=params.get("maxIter", 12), tol=tol,
                             samples=params.get("samples", 512),
                             modes=params.get("modes"))
    verify = verify_on_hypersurface(result.state, rho,
                                    finer_factor=params.get("finerFactor", 4),
                                    tol=tol, rng=rng)
    report = {
        "family": family, "epsilon": rho.epsilon,
        "converged": result.converged,
        "iterations": result.iterations,
        "residuals": list(result.residuals),
        "finalResidual": result.residuals[-1],
        "verification": verify,
        "fCoeffs": list(result.state.coeffs),
    }
    curves = [("newton_residuals", float(i), float(r), 0.0)
              for i, r in enumerate(result.residuals)]
    ts = np.linspace(0, 1, result.state.boundary_z.size, endpoint=False)
    curves += _curve_rows("f_boundary", ts, result.state.samples)
    curves += _curve_rows("f0_boundary", ts,
                          blaschke_eval(f0, result.state.boundary_z))
    return report, curves, result.converged and verify.passed


_RUNNERS = {
    "hyperelliptic": _run_hyperelliptic,
    "sigma": _run_sigma,
    "obstruction": _run_obstruction,
    "rh": _run_rh,
    "deform": _run_deform,
}


def run(spec, out_prefix=None, verbose=False):
    """Execute a parsed run spec; returns the process exit code."""
    prefix = out_prefix or spec["output"] or f"{spec['command']}_run"
    rng = np.random.default_rng(spec["seed"])
    result = {"command": spec["command"], "seed": spec["seed"],
              "version": __version__}
    try:
        report, curves, passed = _RUNNERS[spec["command"]](spec["params"], rng)
    except KeyError as exc:
        raise SchemaError(f"missing required parameter {exc.args[0]!r}") from exc
    except CheckFailure as exc:
        result["error"] = {"type": type(exc).__name__, "message": str(exc)}
        result["checksPassed"] = False
        _write_outputs(prefix, result, [], verbose)
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    result["report"] = report
    result["checksPassed"] = bool(passed)
    _write_outputs(prefix, result, curves, verbose)
    return 0 if passed else 2


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="cylembed",
        description="Run toolkit verifications from a JSON spec file.")
    parser.add_argument("--spec", required=True, help="path to the JSON run spec")
    parser.add_argument("--out", help="output path prefix (overrides spec)")
    parser.add_argument("--seed", type=int, help="seed override")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker cap; computations are vectorized and "
                        "integer outputs never depend on it")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args(argv)

    try:
        with open(args.spec) as fh:
            raw = fh.read()
        spec = parse_spec(raw)
        if args.seed is not None:
            spec["seed"] = args.seed
        return run(spec, out_prefix=args.out, verbose=args.verbose)
    except (OSError, InputError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
