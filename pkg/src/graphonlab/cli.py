"""Command-line surface: spectrum, cutnorm, decompose, density, distance,
make, experiment, plot.

Reports are canonical JSON: keys sorted, floats rounded to 12 significant
digits, no wall-clock data unless --timing is passed. Identical flags and
seeds therefore produce byte-identical reports regardless of --threads.

Exit codes: 0 pass, 1 check failed (a bound was violated), 2 usage error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time

import numpy as np

from . import fileio, svgplot
from .core import (
    DiscreteSpace,
    Kernel,
    SimpleGraph,
    apply_permutation,
    complete_graph,
    cycle_graph,
    edge_graph,
    expand_step,
    path_graph,
    quotient_average,
    step_function,
    triangle_graph,
    weighted_mean,
    weighted_norm,
)
from .cutnorm import CutNormConfig, cutnorm_bracket, cutnorm_exact, cutnorm_heuristic
from .distance import DeltaConfig, delta_bracket
from .ensembles import (
    ProfileFunction,
    cayley_kernel,
    circle_halfplane_kernel,
    dilation_perm,
    sphere_kernel,
    w_random_graph,
    w_random_sample,
)
from .errors import GraphonError, GridOverflowError
from .homdensity import cycle_density_spectral, hom_density_mc, hom_density_step
from .regularity import cluster_eigenvectors, regularity_decompose
from .spectral import decompose, spectral_radius, tail_truncate

SCHEMA_VERSION = "graphonlab.report/1"

# Published schema for every report this tool emits; the `pass` flag of a
# check is always recomputable from value, bound and op.
REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "command", "inputs", "results", "checks",
                 "runtime_seconds"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "results": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "value", "bound", "op", "pass"],
                "properties": {
                    "name": {"type": "string"},
                    "value": {"type": "number"},
                    "bound": {"type": "number"},
                    "op": {"enum": ["le", "ge"]},
                    "pass": {"type": "boolean"},
                },
            },
        },
        "runtime_seconds": {"type": ["number", "null"]},
    },
}

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# canonical JSON


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return repr(obj)
        return float(f"{obj:.12g}")
    if isinstance(obj, (np.floating,)):
        return _round_floats(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _round_floats(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def canonical_json(report: dict) -> str:
    return json.dumps(_round_floats(report), sort_keys=True, indent=2) + "\n"


def _check(name: str, value: float, bound: float, op: str) -> dict:
    # evaluate on the serialized (rounded) numbers so the pass flag is
    # always recomputable from the report itself
    value = _round_floats(float(value))
    bound = _round_floats(float(bound))
    ok = value <= bound if op == "le" else value >= bound
    return {"name": name, "value": value, "bound": bound, "op": op, "pass": bool(ok)}


def _report(command: str, inputs: dict, results: dict, checks: list) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "checks": checks,
        "runtime_seconds": None,
    }


# ---------------------------------------------------------------------------
# flag parsing helpers

_F_TERM = re.compile(r"^(lambda|eps|epsilon)(?:\^([-+]?\d+(?:\.\d+)?))?$")


def parse_F(spec: str):
    """Parse the two-parameter family 'c*lambda^p*eps^q' into a callable.

    Any subset of the factors may appear; bare 'lambda' or 'eps' means
    exponent 1. Examples: '0.25*lambda*eps', '0.1*lambda^2', '0.05'.
    """
    c = 1.0
    p = 0.0
    q = 0.0
    saw_const = False
    for raw in spec.split("*"):
        term = raw.strip()
        if not term:
            raise UsageError(f"empty factor in F spec {spec!r}")
        m = _F_TERM.match(term)
        if m:
            expo = float(m.group(2)) if m.group(2) else 1.0
            if m.group(1) == "lambda":
                p += expo
            else:
                q += expo
            continue
        try:
            value = float(term)
        except ValueError as exc:
            raise UsageError(f"unreadable factor {term!r} in F spec") from exc
        if saw_const:
            c *= value
        else:
            c = value
            saw_const = True

    def F(lam: float, eps: float) -> float:
        return c * lam**p * eps**q

    return F, {"c": c, "lambda_power": p, "eps_power": q}


def parse_profile(spec: str) -> ProfileFunction:
    """'threshold:c', 'linear', 'cos:c0,c1,...' or 'table:v0,v1,...'."""
    if spec == "linear":
        return ProfileFunction.linear()
    if ":" in spec:
        kind, arg = spec.split(":", 1)
        if kind == "threshold":
            return ProfileFunction.threshold(float(arg))
        if kind == "cos":
            return ProfileFunction.cosine_series([float(x) for x in arg.split(",")])
        if kind == "table":
            return ProfileFunction.from_table([float(x) for x in arg.split(",")])
    raise UsageError(f"unreadable profile spec {spec!r}")


_BUILTIN_GRAPHS = {"edge": edge_graph, "triangle": triangle_graph,
                   "K4": lambda: complete_graph(4)}


def parse_graph_arg(spec: str) -> SimpleGraph:
    if spec in _BUILTIN_GRAPHS:
        return _BUILTIN_GRAPHS[spec]()
    m = re.match(r"^(path|cycle)_(\d+)$", spec)
    if m:
        k = int(m.group(2))
        return path_graph(k) if m.group(1) == "path" else cycle_graph(k)
    try:
        return fileio.load_graph(spec)
    except OSError as exc:
        raise UsageError(f"graph {spec!r} is neither a builtin nor a readable file") from exc


def _int_list(spec: str) -> list[int]:
    return [int(x) for x in spec.split(",") if x.strip()]


def _require_seed(args) -> int:
    if args.seed is None:
        raise UsageError("this subcommand is stochastic; --seed is required")
    return args.seed


# ---------------------------------------------------------------------------
# subcommand handlers; each returns a report dict


def _cmd_spectrum(args) -> dict:
    kernel = fileio.load_kernel(_require_input(args))
    dec = decompose(kernel)
    sup_norms = np.max(np.abs(dec.eigenvectors), axis=0)
    results = {
        "n": dec.n,
        "eigenvalues": dec.eigenvalues,
        "clusters": [list(c) for c in dec.clusters],
        "cluster_dimensions": dec.cluster_dimensions(),
        "eigenvector_sup_norms": sup_norms,
        "spectral_radius": spectral_radius(dec),
        "l2_norm": weighted_norm(kernel, "L2"),
    }
    return _report("spectrum", _echo(args, ["input"]), results, [])


def _cmd_cutnorm(args) -> dict:
    seed = _require_seed(args)
    kernel = fileio.load_kernel(_require_input(args))
    config = CutNormConfig(exact_limit=args.exact_limit, restarts=args.restarts, seed=seed)
    est = cutnorm_bracket(kernel, config)
    results = {
        "lower": est.lower,
        "upper": est.upper,
        "method": est.method,
        "witness_f": [int(x) for x in est.witness_f],
        "witness_g": [int(x) for x in est.witness_g],
    }
    return _report(
        "cutnorm",
        _echo(args, ["input", "exact_limit", "restarts", "seed"]),
        results,
        [],
    )


def _cmd_decompose(args) -> dict:
    kernel = fileio.load_kernel(_require_input(args))
    F, f_desc = parse_F(args.F)
    eps = args.epsilon
    reg = regularity_decompose(kernel, F, eps)
    dec = decompose(kernel)
    try:
        clustering = cluster_eigenvectors(dec, reg.lam, eps, max_parts=args.max_parts)
        sf = clustering.step
    except GridOverflowError:
        clustering = None  # high-rank S: partition available via --max-parts
        sf = None
    certs = reg.certificates
    f_at_run = F(reg.lam, eps)
    checks = [
        _check("additivity_sup_error",
               float(np.max(np.abs(reg.S.values + reg.E.values + reg.R.values
                                   - kernel.values))), 1e-9, "le"),
        _check("E_l2_within_eps", certs.E_l2, eps, "le"),
        _check("R_cut_upper_within_F", certs.R_cut.upper, f_at_run, "le"),
        _check("SE_sup_norm", certs.SE_linf, 1.0 + 1e-9, "le"),
    ]
    if clustering is not None:
        checks.append(_check("step_count_within_bound", float(sf.parts),
                             clustering.step_count_bound, "le"))
    results = {
        "lambda": reg.lam,
        "lambda_next": reg.lam_next,
        "delta_floor": reg.delta_floor,
        "epsilon": eps,
        "F": f_desc,
        "F_at_run": f_at_run,
        "certificates": {
            "E_l2": certs.E_l2,
            "R_cut_lower": certs.R_cut.lower,
            "R_cut_upper": certs.R_cut.upper,
            "R_cut_method": certs.R_cut.method,
            "SE_linf": certs.SE_linf,
            "clamped": certs.clamped,
            "epsilon_violated": certs.epsilon_violated,
        },
        "eigenvalues": dec.eigenvalues,
        "clusters": [list(c) for c in dec.clusters],
        "partition": None if sf is None else {
            "labels": sf.part_of,
            "block": sf.block,
            "part_weights": sf.part_weights,
        },
    }
    return _report(
        "decompose", _echo(args, ["input", "epsilon", "F", "max_parts"]), results, checks
    )


def _cmd_density(args) -> dict:
    path = _require_input(args)
    graph = parse_graph_arg(args.graph)
    kind = fileio.sniff_kind(path)
    results: dict = {"graph": args.graph, "vertices": graph.k, "edges": graph.edge_count}
    if kind == "step":
        sf = fileio.load_step(path)
        est = hom_density_step(graph, sf)
    else:
        kernel = fileio.load_kernel(path)
        seed = _require_seed(args)
        if args.samples is None:
            raise UsageError("matrix input needs --samples for the Monte Carlo estimate")
        est = hom_density_mc(graph, kernel, args.samples, seed)
        cyc = re.match(r"^cycle_(\d+)$", args.graph)
        if cyc:
            spectral = cycle_density_spectral(decompose(kernel), int(cyc.group(1)))
            results["spectral_value"] = spectral.value
    results.update(
        {"value": est.value, "stderr": est.stderr, "samples": est.samples,
         "method": est.method}
    )
    return _report(
        "density", _echo(args, ["input", "graph", "samples", "seed"]), results, []
    )


def _cmd_distance(args) -> dict:
    sf1 = fileio.load_step(args.first)
    sf2 = fileio.load_step(args.second)
    seed = _require_seed(args)
    norm = {"l1": "L1", "l2": "L2", "cut": "cut"}[args.norm]
    config = DeltaConfig(
        max_atoms=args.max_atoms,
        seed=seed,
        cut=CutNormConfig(exact_limit=args.exact_limit, seed=seed),
    )
    bracket = delta_bracket(sf1, sf2, norm, config)
    results = {
        "lower": bracket.lower,
        "upper": bracket.upper,
        "norm": bracket.norm,
        "alignment": bracket.alignment,
        "refinement_size": bracket.refinement_size,
        "regime": bracket.regime,
        "lower_certificate": bracket.lower_certificate,
    }
    return _report(
        "distance",
        _echo(args, ["first", "second", "norm", "max_atoms", "seed"]),
        results,
        [],
    )


def _cmd_make(args) -> dict:
    if args.output is None:
        raise UsageError("make needs --output for the kernel file")
    ens = args.ensemble
    if ens == "cayley":
        if args.f is None or args.n is None:
            raise UsageError("cayley needs --n and --f v0,v1,...")
        vals = [float(x) for x in args.f.split(",")]
        kernel = cayley_kernel(args.n, vals)
        params = {"n": args.n, "f": vals}
    elif ens == "circle":
        if args.n is None:
            raise UsageError("circle needs --n (divisible by 4)")
        kernel = circle_halfplane_kernel(args.n)
        params = {"n": args.n}
    elif ens == "sphere":
        if args.dim is None or args.count is None:
            raise UsageError("sphere needs --dim and --N")
        seed = _require_seed(args)
        profile = parse_profile(args.f or "threshold:0")
        kernel = sphere_kernel(args.dim, profile, args.count, seed)
        params = {"dim": args.dim, "count": args.count, "f": args.f or "threshold:0"}
    elif ens == "wrandom":
        if args.count is None:
            raise UsageError("wrandom needs --N and --input (source kernel)")
        seed = _require_seed(args)
        source_path = _require_input(args)
        if fileio.sniff_kind(source_path) == "step":
            source = expand_step(fileio.load_step(source_path))
        else:
            source = fileio.load_kernel(source_path)
        kernel = w_random_graph(source, args.count, seed)
        params = {"count": args.count, "source": source_path}
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown ensemble {ens!r}")
    fileio.write_text_atomic(args.output, fileio.format_matrix(kernel))
    results = {
        "ensemble": ens,
        "params": params,
        "n": kernel.n,
        "edge_density": weighted_mean(kernel),
        "written": args.output,
    }
    return _report("make", _echo(args, ["ensemble", "n", "dim", "count", "f", "seed"]),
                   results, [])


# ---------------------------------------------------------------------------
# experiments


def _experiment_circle(args) -> tuple[dict, list]:
    n = args.n or 64
    ks = _int_list(args.ks or "3,5")
    seed = _require_seed(args)
    kernel = circle_halfplane_kernel(n)
    dec = decompose(kernel)
    densities = {j: cycle_density_spectral(dec, j).value for j in range(3, 9)}
    runs = []
    checks = []
    coarse_labels = (np.arange(n) * 16) // n
    for k in ks:
        perm = dilation_perm(n, k)
        permuted = apply_permutation(kernel, perm)
        dec_p = decompose(permuted)
        delta_density = max(
            abs(cycle_density_spectral(dec_p, j).value - densities[j])
            for j in range(3, 9)
        )
        diff = Kernel(kernel.space, permuted.values - kernel.values)
        bracket = cutnorm_heuristic(diff, restarts=32, seed=seed)
        quot = quotient_average(diff, coarse_labels)
        small = Kernel(DiscreteSpace(quot.part_weights), quot.block)
        exact16 = cutnorm_exact(small)
        lower = max(bracket.lower, exact16.lower)
        runs.append({
            "k": k,
            "max_density_delta": delta_density,
            "cut_lower": lower,
            "cut_lower_heuristic": bracket.lower,
            "cut_lower_coarse_exact": exact16.lower,
            "cut_upper": bracket.upper,
        })
        checks.append(_check(f"density_agreement_k{k}", delta_density, 1e-9, "le"))
        checks.append(_check(f"cut_separation_k{k}", lower, 0.05, "ge"))
    results = {"n": n, "cycle_densities": densities, "runs": runs}
    return results, checks


def _experiment_sphere(args) -> tuple[dict, list]:
    dims = _int_list(args.dims or "2,3,4")
    count = args.count or 1500
    base_seed = _require_seed(args)
    seeds = _int_list(args.seeds) if args.seeds else [base_seed + i for i in range(3)]
    profile = parse_profile(args.f or "threshold:0")
    runs = []
    checks = []
    for dim in dims:
        bound = 1.0 / math.sqrt(dim + 1) + 0.05
        for seed in seeds:
            kernel = sphere_kernel(dim, profile, count, seed)
            p = weighted_mean(kernel)
            centered = Kernel(kernel.space, kernel.values - p)
            bracket = cutnorm_heuristic(centered, restarts=32, seed=seed)
            runs.append({
                "dim": dim, "seed": seed, "edge_density": p,
                "cut_lower": bracket.lower, "cut_upper": bracket.upper,
                "bound": bound,
            })
            checks.append(
                _check(f"quasirandom_dim{dim}_seed{seed}", bracket.lower, bound, "le")
            )
    results = {"dims": dims, "count": count, "seeds": seeds,
               "f": args.f or "threshold:0", "runs": runs}
    return results, checks


def builtin_rank3_step():
    """Default W-random source: a rank-3 step kernel with a clear spectral
    gap (weighted eigenvalues well above the sampling noise floor)."""
    space = DiscreteSpace.uniform(4)
    labels = np.array([0, 1, 2, 2])
    block = np.array([
        [0.90, 0.40, 0.10],
        [0.40, 0.70, 0.30],
        [0.10, 0.30, 0.80],
    ])
    return step_function(space, labels, block)


def _experiment_wrandom(args) -> tuple[dict, list]:
    counts = _int_list(args.counts or "100,400,1600")
    base_seed = _require_seed(args)
    runs_per_count = args.runs or 5
    seeds = [base_seed + i for i in range(runs_per_count)]
    if args.input:
        sf = fileio.load_step(args.input)
    else:
        sf = builtin_rank3_step()
    source = expand_step(sf)
    dec_w = decompose(source)
    nonzero = np.abs(dec_w.eigenvalues) > dec_w.cluster_tolerance
    rank_w = int(np.sum(nonzero))
    lam_mid = float(np.min(np.abs(dec_w.eigenvalues[nonzero]))) / 2.0
    truncated_w = tail_truncate(dec_w, lam_mid)
    ref_block = quotient_average(truncated_w, sf.part_of)
    pw = sf.part_weights
    top = min(10, source.n)
    ref_eigs = dec_w.eigenvalues[:top]

    labels_of_atom = sf.part_of
    per_count: dict[int, dict] = {}
    track = min(10, min(counts))
    checks = []
    for count in counts:
        ranks = []
        dists = []
        eig_rows = []
        for seed in seeds:
            sample, atoms = w_random_sample(source, count, seed)
            dec_s = decompose(sample)
            ranks.append(dec_s.rank_above(lam_mid))
            truncated_s = tail_truncate(dec_s, lam_mid)
            sample_labels = labels_of_atom[atoms]
            quot = quotient_average(truncated_s, sample_labels)
            diff = quot.block - ref_block.block
            dists.append(float(np.sqrt(np.sum(np.outer(pw, pw) * diff * diff))))
            eig_rows.append(dec_s.eigenvalues[:track])
        med = float(np.median(np.array(eig_rows), axis=0)[0])
        per_count[count] = {
            "ranks": ranks,
            "median_rank": float(np.median(ranks)),
            "aligned_l2": dists,
            "median_aligned_l2": float(np.median(dists)),
            "median_top_eigenvalues": np.median(np.array(eig_rows), axis=0),
            "median_top_eigenvalue": med,
        }
    last = counts[-1]
    for seed, r in zip(seeds, per_count[last]["ranks"]):
        checks.append(
            _check(f"rank_error_at_{last}_seed{seed}",
                   float(abs(r - rank_w)), 0.0, "le")
        )
    checks.append(
        _check(
            "aligned_l2_decreases",
            per_count[last]["median_aligned_l2"],
            per_count[counts[0]]["median_aligned_l2"],
            "le",
        )
    )
    trajectories = [
        [float(per_count[c]["median_top_eigenvalues"][i]) for c in counts]
        for i in range(track)
    ]
    results = {
        "counts": counts,
        "seeds": seeds,
        "source_rank": rank_w,
        "lambda_mid": lam_mid,
        "source_top_eigenvalues": ref_eigs,
        "per_count": {str(c): per_count[c] for c in counts},
        "sample_sizes": counts,
        "trajectories": trajectories,
        "reference": ref_eigs,
    }
    return results, checks


def _experiment_regularity(args) -> tuple[dict, list]:
    if args.epsilon is None:
        raise UsageError("regularity experiment needs --epsilon")
    report = _cmd_decompose(args)
    return report["results"], report["checks"]


_EXPERIMENTS = {
    "circle": _experiment_circle,
    "sphere": _experiment_sphere,
    "wrandom-convergence": _experiment_wrandom,
    "regularity": _experiment_regularity,
}


def _cmd_experiment(args) -> dict:
    if args.name not in _EXPERIMENTS:
        raise UsageError(f"unknown experiment {args.name!r}")
    results, checks = _EXPERIMENTS[args.name](args)
    echoed = _echo(args, ["name", "n", "ks", "dims", "count", "counts", "runs",
                          "seeds", "seed", "f", "input", "epsilon", "F"])
    return _report("experiment", echoed, results, checks)


def _cmd_plot(args) -> dict:
    if args.output is None:
        raise UsageError("plot needs --output for the SVG file")
    with open(_require_input(args), "r", encoding="utf-8") as fh:
        report = json.load(fh)
    results = report.get("results", {})
    if args.kind == "spectrum":
        if "eigenvalues" not in results or "clusters" not in results:
            raise UsageError("report has no spectrum series")
        svgplot.spectrum_plot(results["eigenvalues"], results["clusters"], args.output)
    elif args.kind == "partition":
        part = results.get("partition")
        if not part:
            raise UsageError("report has no partition series")
        svgplot.partition_plot(part["block"], part["part_weights"], args.output)
    elif args.kind == "trajectory":
        if "trajectories" not in results:
            raise UsageError("report has no trajectory series")
        svgplot.trajectory_plot(
            results["sample_sizes"], results["trajectories"], args.output,
            reference=results.get("reference"),
        )
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown plot kind {args.kind!r}")
    return _report("plot", _echo(args, ["input", "kind"]),
                   {"written": args.output, "kind": args.kind}, [])


# ---------------------------------------------------------------------------
# plumbing


def _require_input(args) -> str:
    if getattr(args, "input", None) is None:
        raise UsageError("--input is required")
    return args.input


def _echo(args, names: list[str]) -> dict:
    # --threads and --output are execution details, never echoed: reports
    # must be byte-identical across thread counts.
    out = {}
    for name in names:
        val = getattr(args, name, None)
        if val is not None:
            out[name] = val
    return out


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input file (matrix, step or report)")
    common.add_argument("--output", help="output file (report JSON, kernel or SVG)")
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed; required for stochastic subcommands")
    common.add_argument("--threads", type=int, default=1,
                        help="execution hint; results never depend on it")
    common.add_argument("--exact-limit", dest="exact_limit", type=int, default=22,
                        help="largest n for exact cut-norm enumeration")
    common.add_argument("--timing", action="store_true",
                        help="record wall-clock runtime in the report "
                             "(breaks byte-level reproducibility)")

    parser = argparse.ArgumentParser(
        prog="graphonlab",
        description="Spectral analysis of discretized graphons and kernels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", parents=[common],
                   help="eigenvalues, clusters and sup norms")

    p_cut = sub.add_parser("cutnorm", parents=[common], help="cut-norm bracket")
    p_cut.add_argument("--restarts", type=int, default=32)

    p_dec = sub.add_parser("decompose", parents=[common],
                           help="regularity decomposition with certificates")
    p_dec.add_argument("--epsilon", type=float, required=True)
    p_dec.add_argument("--F", default="0.25*lambda*eps",
                       help="target family c*lambda^p*eps^q")
    p_dec.add_argument("--max-parts", dest="max_parts", type=float, default=1e6)
    p_dec.add_argument("--report", dest="output", help=argparse.SUPPRESS)

    p_den = sub.add_parser("density", parents=[common], help="homomorphism density")
    p_den.add_argument("--graph", required=True,
                       help="builtin (edge, triangle, K4, path_k, cycle_k) or file")
    p_den.add_argument("--samples", type=int, default=None)

    p_dist = sub.add_parser("distance", parents=[common],
                            help="rearrangement distance bracket")
    p_dist.add_argument("first", help="step-function file")
    p_dist.add_argument("second", help="step-function file")
    p_dist.add_argument("--norm", choices=["l1", "l2", "cut"], default="cut")
    p_dist.add_argument("--max-atoms", dest="max_atoms", type=int, default=64)

    p_make = sub.add_parser("make", parents=[common], help="build an ensemble kernel")
    p_make.add_argument("--ensemble", required=True,
                        choices=["cayley", "circle", "sphere", "wrandom"])
    p_make.add_argument("--n", type=int, default=None)
    p_make.add_argument("--dim", type=int, default=None)
    p_make.add_argument("--N", dest="count", type=int, default=None,
                        help="sample count")
    p_make.add_argument("--f", default=None,
                        help="cayley: comma values; sphere: profile spec")

    p_exp = sub.add_parser("experiment", parents=[common], help="experiment driver")
    p_exp.add_argument("--name", required=True,
                       choices=sorted(_EXPERIMENTS))
    p_exp.add_argument("--n", type=int, default=None)
    p_exp.add_argument("--ks", default=None, help="circle: dilation factors")
    p_exp.add_argument("--dims", default=None, help="sphere: dimensions")
    p_exp.add_argument("--count", type=int, default=None)
    p_exp.add_argument("--counts", default=None, help="wrandom: sample sizes")
    p_exp.add_argument("--runs", type=int, default=None, help="wrandom: seeds per size")
    p_exp.add_argument("--seeds", default=None, help="sphere: explicit seed list")
    p_exp.add_argument("--f", default=None)
    p_exp.add_argument("--epsilon", type=float, default=None)
    p_exp.add_argument("--F", default="0.25*lambda*eps")
    p_exp.add_argument("--max-parts", dest="max_parts", type=float, default=1e6)

    p_plot = sub.add_parser("plot", parents=[common], help="render a report series")
    p_plot.add_argument("--kind", required=True,
                        choices=["spectrum", "partition", "trajectory"])
    return parser


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "cutnorm": _cmd_cutnorm,
    "decompose": _cmd_decompose,
    "density": _cmd_density,
    "distance": _cmd_distance,
    "make": _cmd_make,
    "experiment": _cmd_experiment,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    start = time.monotonic()
    try:
        report = _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, fileio.FormatError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphonError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    elapsed = time.monotonic() - start
    if args.timing:
        report["runtime_seconds"] = elapsed
    else:
        print(f"runtime: {elapsed:.3f}s", file=sys.stderr)
    text = canonical_json(report)
    if args.output and args.command != "plot" and args.command != "make":
        fileio.write_text_atomic(args.output, text)
    sys.stdout.write(text)
    failed = [c for c in report["checks"] if not c["pass"]]
    return EXIT_CHECK_FAILED if failed else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
