"""Command-line surface: every figure-level experiment as a subcommand.

Each run writes its artifact files plus a manifest.json recording the full
configuration, seed and library version; identical configuration and seed
reproduce byte-identical outputs.  Exit codes: 0 success, 1 domain error,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import ba_dd_pmf, er_dd_exact_pmf, er_dd_poisson_pmf
from .assortativity import (decomposition_report, global_assortativity,
                            joint_degree_pmf, local_assortativity_vector)
from .generators import EnsembleSpec, generate
from .graph import Graph
from .io import load_edge_list, render_value, save_edge_list, write_csv, write_manifest
from .measures import (MEASURE_NAMES, EdgeMeasureTable, compute_measure,
                       dd_distribution, measure_correlation)
from .rewiring import assortative_rewire, constrained_randomize
from .robustness import ORDERINGS, aggregate_traces, mec_percentiles, percolate

_FIGURES = {
    "generate": None,
    "dd-dist": "figs 4-6",
    "analytic-dd": "fig 3",
    "measures": "fig 7 inputs",
    "correlate": "fig 7",
    "assort": "fig 2 context",
    "percolate": "fig 8",
    "mec-percentile": "fig 9",
    "rewire": "SI figs S2-S3",
}

_FAMILY_PARAMS = {
    "er": ("p",),
    "ws": ("k", "beta_rewire"),
    "ba": ("beta",),
    "rg": ("eps",),
}


class DomainError(RuntimeError):
    pass


def _add_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="edge-list file to analyze")
    p.add_argument("--directed", action="store_true",
                   help="treat the input file as directed")
    p.add_argument("--family", choices=sorted(_FAMILY_PARAMS),
                   help="generator family instead of an input file")
    p.add_argument("--n", type=int, help="vertex count (generators)")
    p.add_argument("--p", type=float, help="ER edge probability")
    p.add_argument("--c", type=float, help="ER average degree (alternative to --p)")
    p.add_argument("--k", type=int, help="WS ring-neighbour count")
    p.add_argument("--beta-rewire", type=float, help="WS rewiring probability")
    p.add_argument("--beta", type=int, help="BA attachment count")
    p.add_argument("--eps", type=float, help="RG connection radius")
    p.add_argument("--samples", type=int, default=1,
                   help="ensemble size (generator sources only)")


def _add_common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _generator_params(args) -> dict:
    if args.n is None:
        raise DomainError("--n is required with --family")
    params = {"n": args.n}
    fam = args.family
    if fam == "er":
        if args.p is None and args.c is None:
            raise DomainError("er needs --p or --c")
        params["p"] = args.p if args.p is not None else args.c / (args.n - 1)
    elif fam == "ws":
        if args.k is None or args.beta_rewire is None:
            raise DomainError("ws needs --k and --beta-rewire")
        params["k"] = args.k
        params["beta_rewire"] = args.beta_rewire
    elif fam == "ba":
        if args.beta is None:
            raise DomainError("ba needs --beta")
        params["beta_attach"] = args.beta
    elif fam == "rg":
        if args.eps is None:
            raise DomainError("rg needs --eps")
        params["eps"] = args.eps
    return params


def _resolve_spec(args) -> EnsembleSpec | None:
    """EnsembleSpec for generator sources, None for file input."""
    if args.input is not None and args.family is not None:
        raise DomainError("--input and --family are mutually exclusive")
    if args.input is None and args.family is None:
        raise DomainError("either --input or --family is required")
    if args.input is not None:
        if args.samples != 1:
            raise DomainError("--samples applies to generator sources only")
        return None
    try:
        return EnsembleSpec(args.family, _generator_params(args),
                            sample_count=args.samples, base_seed=args.seed)
    except (ValueError, KeyError) as exc:
        raise DomainError(str(exc)) from exc


def _load_graphs(args) -> list[Graph]:
    spec = _resolve_spec(args)
    if spec is None:
        return [load_edge_list(args.input, directed=args.directed).graph]
    if args.threads > 1:
        payload = [(spec.family, spec.params, spec.base_seed, i)
                   for i in range(spec.sample_count)]
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            return list(pool.map(_gen_worker, payload))
    return list(spec)


def _gen_worker(item):
    family, params, base_seed, i = item
    return generate(family, params,
                    np.random.SeedSequence(entropy=base_seed, spawn_key=(i,)))


def _write_table(out_dir: Path, name: str, header: list[str], rows,
                 fmt: str) -> None:
    if fmt == "csv":
        write_csv(out_dir / f"{name}.csv", header, rows)
    else:
        records = [dict(zip(header, [None if isinstance(x, float) and np.isnan(x)
                                     else x for x in row])) for row in rows]
        with (out_dir / f"{name}.json").open("w") as fh:
            json.dump(records, fh, indent=2, default=render_value)
            fh.write("\n")


def _manifest(args, extra: dict | None = None) -> dict:
    payload = {
        "command": args.command,
        "figure": _FIGURES.get(args.command),
        "config": {k: v for k, v in vars(args).items()
                   if k not in ("func", "command") and v is not None},
    }
    if extra:
        payload.update(extra)
    return payload


# -- commands ---------------------------------------------------------------


def cmd_generate(args) -> int:
    spec = _resolve_spec(args)
    if spec is None:
        raise DomainError("generate needs --family")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, g in enumerate(spec):
        name = "graph.txt" if spec.sample_count == 1 else f"graph_{i:04d}.txt"
        save_edge_list(g, out / name)
    write_manifest(out, _manifest(args))
    return 0


def _mean_std_pmfs(pmfs) -> list[tuple[int, float, float]]:
    lo = min(int(p.support.min()) for p in pmfs)
    hi = max(int(p.support.max()) for p in pmfs)
    stack = np.zeros((len(pmfs), hi - lo + 1))
    for i, p in enumerate(pmfs):
        stack[i, p.support - lo] = p.probabilities
    mean = stack.mean(axis=0)
    std = stack.std(axis=0)
    keep = mean > 0
    ds = np.arange(lo, hi + 1)
    return [(int(d), float(mu), float(sd))
            for d, mu, sd in zip(ds[keep], mean[keep], std[keep])]


def cmd_dd_dist(args) -> int:
    graphs = _load_graphs(args)
    mode = "didd" if args.didd else "dd"
    pmfs = [dd_distribution(g, mode) for g in graphs]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if len(pmfs) == 1:
        rows = [(int(d), float(p)) for d, p in
                zip(pmfs[0].support, pmfs[0].probabilities)]
        _write_table(out, "dd_dist", ["d", "probability"], rows, args.format)
    else:
        rows = _mean_std_pmfs(pmfs)
        _write_table(out, "dd_dist_ensemble",
                     ["d", "mean_probability", "std_probability"], rows,
                     args.format)
    write_manifest(out, _manifest(args, {"samples_used": len(graphs)}))
    return 0


def cmd_analytic_dd(args) -> int:
    if args.samples != 1:
        raise DomainError("analytic-dd is deterministic; --samples must be 1")
    if args.model == "er-exact":
        if args.n is None:
            raise DomainError("er-exact needs --n")
        p = args.p if args.p is not None else (
            args.c / (args.n - 1) if args.c is not None else None)
        if p is None:
            raise DomainError("er-exact needs --p or --c")
        pmf = er_dd_exact_pmf(args.n, p, d_max=args.d_max)
    elif args.model == "er-poisson":
        if args.c is None:
            raise DomainError("er-poisson needs --c")
        pmf = er_dd_poisson_pmf(args.c, d_max=args.d_max)
    else:  # ba
        if args.beta is None:
            raise DomainError("ba needs --beta")
        pmf = ba_dd_pmf(args.beta, k_max=args.k_max, d_max=args.d_max)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = [(int(d), float(p)) for d, p in zip(pmf.support, pmf.probabilities)]
    _write_table(out, "analytic_dd", ["d", "probability"], rows, args.format)
    write_manifest(out, _manifest(args, {
        "truncation_mass": pmf.truncation_mass,
        "evaluation_mode": pmf.evaluation_mode,
    }))
    return 0


def _measure_list(args) -> list[str]:
    names = [m.strip() for m in args.measures.split(",") if m.strip()]
    bad = [m for m in names if m not in MEASURE_NAMES]
    if bad:
        raise DomainError(f"unknown measures {bad}; choose from {MEASURE_NAMES}")
    return names


def cmd_measures(args) -> int:
    graphs = _load_graphs(args)
    if len(graphs) != 1:
        raise DomainError("measures emits a per-edge table; use --samples 1")
    g = graphs[0]
    names = _measure_list(args)
    cols = {m: compute_measure(g, m, args.idleness) for m in names}
    rows = [tuple([int(u), int(v)] + [cols[m][i] for m in names])
            for i, (u, v) in enumerate(g.edges)]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_table(out, "measures", ["u", "v"] + names, rows, args.format)
    write_manifest(out, _manifest(args))
    return 0


def _correlation_rows(g: Graph, names: list[str], kinds: list[str],
                      idleness: float):
    tables = {m: EdgeMeasureTable(m, g.edges, compute_measure(g, m, idleness))
              for m in names}
    rows = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            for kind in kinds:
                rows.append((a, b, kind,
                             measure_correlation(tables[a], tables[b], kind)))
    return rows


def cmd_correlate(args) -> int:
    graphs = _load_graphs(args)
    names = _measure_list(args)
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    per_graph = [_correlation_rows(g, names, kinds, args.idleness)
                 for g in graphs]
    if len(per_graph) == 1:
        _write_table(out, "correlations",
                     ["measure_a", "measure_b", "kind", "value"],
                     per_graph[0], args.format)
    else:
        rows = []
        for j in range(len(per_graph[0])):
            a, b, kind, _ = per_graph[0][j]
            vals = [pg[j][3] for pg in per_graph if pg[j][3] is not None]
            rows.append((a, b, kind,
                         float(np.mean(vals)) if vals else None,
                         float(np.std(vals)) if vals else None,
                         len(vals)))
        _write_table(out, "correlations_ensemble",
                     ["measure_a", "measure_b", "kind", "mean", "std",
                      "defined_samples"], rows, args.format)
    write_manifest(out, _manifest(args, {"samples_used": len(graphs)}))
    return 0


def cmd_assort(args) -> int:
    graphs = _load_graphs(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if len(graphs) == 1:
        g = graphs[0]
        lna = local_assortativity_vector(g)
        if lna is not None:
            rows = [(v, float(lna[v])) for v in range(g.vertex_count)
                    if not np.isnan(lna[v])]
            _write_table(out, "lna", ["vertex", "lna"], rows, args.format)
        summary = _assort_summary(g)
    else:
        gas = [global_assortativity(g) for g in graphs]
        defined = [x for x in gas if x is not None]
        summary = {
            "mean_global_assortativity": float(np.mean(defined)) if defined else None,
            "std_global_assortativity": float(np.std(defined)) if defined else None,
            "defined_samples": len(defined),
            "samples": len(gas),
        }
    with (out / "assort.json").open("w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    write_manifest(out, _manifest(args, {"samples_used": len(graphs)}))
    return 0


def _assort_summary(g: Graph) -> dict:
    ga = global_assortativity(g)
    stats = joint_degree_pmf(g)
    rep = decomposition_report(g)
    return {
        "global_assortativity": ga if ga is None else float(ga),
        "mu_q": stats.mu_q,
        "sigma_q": stats.sigma_q,
        "decomposition": None if rep is None else {
            "sigma_sq_times_r": rep.sigma_sq_times_r,
            "half_mean_dd": rep.half_mean_dd,
            "residual": rep.residual,
        },
    }


def _percolate_worker(item):
    family, params, base_seed, i, ordering, checkpoints, recompute, idleness = item
    g = generate(family, params,
                 np.random.SeedSequence(entropy=base_seed, spawn_key=(i,)))
    tr = percolate(g, ordering, checkpoints, recompute=recompute,
                   seed=base_seed + 7919 * i + 1, idleness=idleness)
    return tr


def cmd_percolate(args) -> int:
    orderings = [o.strip() for o in args.orderings.split(",") if o.strip()]
    bad = [o for o in orderings if o not in ORDERINGS]
    if bad:
        raise DomainError(f"unknown orderings {bad}; choose from {sorted(ORDERINGS)}")
    checkpoints = None
    if args.checkpoints:
        checkpoints = [float(x) for x in args.checkpoints.split(",")]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    spec = _resolve_spec(args)
    for ordering in orderings:
        if spec is None:
            g = load_edge_list(args.input, directed=args.directed).graph
            traces = [percolate(g, ordering, checkpoints,
                                recompute=args.recompute, seed=args.seed,
                                idleness=args.idleness)]
        elif args.threads > 1:
            payload = [(spec.family, spec.params, spec.base_seed, i, ordering,
                        checkpoints, args.recompute, args.idleness)
                       for i in range(spec.sample_count)]
            with ProcessPoolExecutor(max_workers=args.threads) as pool:
                traces = list(pool.map(_percolate_worker, payload))
        else:
            traces = [_percolate_worker((spec.family, spec.params,
                                         spec.base_seed, i, ordering,
                                         checkpoints, args.recompute,
                                         args.idleness))
                      for i in range(spec.sample_count)]
        agg = aggregate_traces(traces)
        rows = [(float(f), float(mu), float(sd))
                for f, mu, sd in zip(agg.removed_fraction, agg.mean, agg.std)]
        _write_table(out, f"percolate_{ordering}",
                     ["fraction", "mean_lcc", "std_lcc"], rows, args.format)
    write_manifest(out, _manifest(args, {"orderings": orderings}))
    return 0


def cmd_mec_percentile(args) -> int:
    graphs = _load_graphs(args)
    names = _measure_list(args)
    rows = []
    for g in graphs:
        for m in names:
            pool = mec_percentiles(g, m, args.idleness)
            rows.extend((m, float(p)) for p in pool.percentiles)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_table(out, "mec_percentiles", ["measure", "percentile"], rows,
                 args.format)
    write_manifest(out, _manifest(args, {"samples_used": len(graphs)}))
    return 0


def cmd_rewire(args) -> int:
    graphs = _load_graphs(args)
    if len(graphs) != 1:
        raise DomainError("rewire runs on a single graph; use --samples 1")
    g = graphs[0]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.scheme == "assortative":
        stage_rows = []
        stage_steps = max(1, args.steps // args.stages)
        current = g
        ga0 = global_assortativity(g)
        pmf0 = dd_distribution(g)
        for d, p in zip(pmf0.support, pmf0.probabilities):
            stage_rows.append((0, ga0, int(d), float(p)))
        accepted = attempted = 0
        trajectory = []
        for stage in range(1, args.stages + 1):
            outc = assortative_rewire(current, stage_steps,
                                      seed=args.seed + stage)
            current = outc.graph
            accepted += outc.accepted_steps
            attempted += outc.attempted_steps
            trajectory.extend(outc.ga_trajectory)
            ga = global_assortativity(current)
            pmf = dd_distribution(current)
            for d, p in zip(pmf.support, pmf.probabilities):
                stage_rows.append((stage, ga, int(d), float(p)))
        _write_table(out, "stages", ["stage", "ga", "d", "probability"],
                     stage_rows, args.format)
        result_graph = current
        summary = {"scheme": "assortative", "accepted": accepted,
                   "attempted": attempted,
                   "ga_start": ga0, "ga_end": global_assortativity(current)}
    else:
        outc = constrained_randomize(g, args.swaps,
                                     ga_tolerance=args.ga_tolerance,
                                     seed=args.seed)
        trajectory = outc.ga_trajectory
        result_graph = outc.graph
        summary = {"scheme": "constrained", "accepted": outc.accepted_steps,
                   "attempted": outc.attempted_steps,
                   "budget_exhausted": outc.budget_exhausted,
                   "ga_start": global_assortativity(g),
                   "ga_end": global_assortativity(outc.graph)}
        pmf = dd_distribution(outc.graph)
        rows = [(int(d), float(p)) for d, p in zip(pmf.support, pmf.probabilities)]
        _write_table(out, "dd_dist", ["d", "probability"], rows, args.format)
    save_edge_list(result_graph, out / "rewired.txt")
    _write_table(out, "ga_trajectory", ["accepted_step", "ga"],
                 list(enumerate(trajectory, start=1)), args.format)
    with (out / "summary.json").open("w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    write_manifest(out, _manifest(args))
    return 0


def cmd_ensemble(args) -> int:
    handlers = {"dd-dist": cmd_dd_dist, "percolate": cmd_percolate,
                "mec-percentile": cmd_mec_percentile,
                "correlate": cmd_correlate, "assort": cmd_assort}
    if args.task not in handlers:
        raise DomainError(f"ensemble cannot wrap {args.task!r}")
    if args.family is None:
        raise DomainError("ensemble needs --family")
    args.command = args.task
    return handlers[args.task](args)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="degdiff",
        description="Edge degree-difference analysis toolkit")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit graphs from a model family")
    _add_source_args(p)
    _add_common_args(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("dd-dist", help="empirical DD (or diDD) distribution")
    _add_source_args(p)
    _add_common_args(p)
    p.add_argument("--didd", action="store_true",
                   help="directed variant instead of collapsing directions")
    p.set_defaults(func=cmd_dd_dist)

    p = sub.add_parser("analytic-dd", help="closed-form DD distributions")
    p.add_argument("--model", choices=("er-exact", "er-poisson", "ba"),
                   required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--beta", type=int)
    p.add_argument("--k-max", type=int, default=2000)
    p.add_argument("--d-max", type=int, default=18)
    p.add_argument("--samples", type=int, default=1)
    _add_common_args(p)
    p.set_defaults(func=cmd_analytic_dd)

    p = sub.add_parser("measures", help="per-edge measure table")
    _add_source_args(p)
    _add_common_args(p)
    p.add_argument("--measures",
                   default="dd,forman_ricci,ollivier_ricci,edge_betweenness")
    p.add_argument("--idleness", type=float, default=0.0)
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("correlate", help="cross-measure correlation matrix")
    _add_source_args(p)
    _add_common_args(p)
    p.add_argument("--measures",
                   default="dd,forman_ricci,ollivier_ricci,edge_betweenness")
    p.add_argument("--kinds", default="pearson,spearman")
    p.add_argument("--idleness", type=float, default=0.0)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("assort", help="global/local assortativity report")
    _add_source_args(p)
    _add_common_args(p)
    p.set_defaults(func=cmd_assort)

    p = sub.add_parser("percolate", help="reverse edge percolation traces")
    _add_source_args(p)
    _add_common_args(p)
    p.add_argument("--orderings", default="dd_asc,dd_desc,rf_asc,ebw_desc,random")
    p.add_argument("--checkpoints",
                   help="comma-separated fractions (default 0,0.05,...,1)")
    p.add_argument("--recompute", action="store_true",
                   help="re-rank the measure after every removal")
    p.add_argument("--idleness", type=float, default=0.0)
    p.set_defaults(func=cmd_percolate)

    p = sub.add_parser("mec-percentile", help="minimum-edge-cut percentiles")
    _add_source_args(p)
    _add_common_args(p)
    p.add_argument("--measures",
                   default="dd,forman_ricci,ollivier_ricci,edge_betweenness")
    p.add_argument("--idleness", type=float, default=0.0)
    p.set_defaults(func=cmd_mec_percentile)

    p = sub.add_parser("rewire", help="degree-preserving rewiring experiments")
    _add_source_args(p)
    _add_common_args(p)
    p.add_argument("--scheme", choices=("assortative", "constrained"),
                   required=True)
    p.add_argument("--steps", type=int, default=10000,
                   help="attempts for the assortative scheme")
    p.add_argument("--stages", type=int, default=8,
                   help="DD snapshots along the assortative run")
    p.add_argument("--swaps", type=int, default=1000,
                   help="target accepted swaps for the constrained scheme")
    p.add_argument("--ga-tolerance", type=float, default=0.025)
    p.set_defaults(func=cmd_rewire)

    p = sub.add_parser("ensemble", help="run a task over a model ensemble")
    p.add_argument("--task", required=True,
                   choices=("dd-dist", "percolate", "mec-percentile",
                            "correlate", "assort"))
    _add_source_args(p)
    _add_common_args(p)
    p.add_argument("--didd", action="store_true")
    p.add_argument("--measures",
                   default="dd,forman_ricci,ollivier_ricci,edge_betweenness")
    p.add_argument("--kinds", default="pearson,spearman")
    p.add_argument("--orderings", default="dd_asc,dd_desc,rf_asc,ebw_desc,random")
    p.add_argument("--checkpoints")
    p.add_argument("--recompute", action="store_true")
    p.add_argument("--idleness", type=float, default=0.0)
    p.set_defaults(func=cmd_ensemble, samples_default=50)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "ensemble" and args.samples == 1:
        args.samples = 50  # figure-style default
    try:
        return args.func(args)
    except (DomainError, ValueError, FileNotFoundError) as exc:
        print(f"degdiff: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
