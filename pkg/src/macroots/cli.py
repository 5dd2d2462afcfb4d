"""Command-line interface: solve systems, generate families, run experiments.

Commands
--------
solve       system.json -> roots.json (method/factorization selectable)
gen         emit a generator family as systemedJSON
experiment  conditioning/accuracy sweeps -> CSV with a fitted summary
flops       cost-model comparison CSV (deterministic)
bench       wall-clock timing of every method on one system (informational)

Exit codes: 0 success, 2 genericity violation, 1 I/O or input errors.
Every artifact embeds the seed, method, tolerance scale, library version,
and a timestamp; reruns with identical flags are byte-identical except for
the timestamp field.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from datetime import datetime, timezone

import numpy as np

from . import __version__, analysis, experiments, flops
from .errors import GenericityError, MacrootsError
from .generators import clustered_conic, devastating, perturbed_devastating, random_dense
from .linalg import DEFAULT_TOL
from .poly import load_system, save_system
from .reduction import MethodConfig
from .solver import roots_to_json, solve

_METHOD_TO_PIPELINE = {"direct": "direct", "nullspace": "nullspace", "dbd": "degree_by_degree"}


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _method_config(args) -> MethodConfig:
    return MethodConfig(
        pipeline=_METHOD_TO_PIPELINE[args.method],
        factorization=args.factorization,
        random_combinations=args.rand_combos,
        seed=args.seed,
    )


def _tolerances(args):
    return DEFAULT_TOL.scaled(args.tol)


def _meta(args, **extra) -> dict:
    meta = {
        "version": __version__,
        "seed": args.seed,
        "tol_scale": args.tol,
        "timestamp": _timestamp(),
    }
    meta.update(extra)
    return meta


def _add_shared(parser):
    parser.add_argument("--method", choices=sorted(_METHOD_TO_PIPELINE), default="direct")
    parser.add_argument("--factorization", choices=["svd", "qrp", "lq"], default="svd")
    parser.add_argument("--rand-combos", action="store_true", help="premultiply by random row combinations")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=1.0, help="uniform scale on all internal tolerances")
    parser.add_argument("--out", default=None, help="output path (default: stdout or a command default)")


def _write_csv(path, header, rows, meta_lines, summaries=()):
    with open(path, "w", newline="") as fh:
        for line in meta_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
        for line in summaries:
            fh.write(f"# {line}\n")


def _meta_lines(args, **extra):
    meta = _meta(args, **extra)
    ts = meta.pop("timestamp")
    line = " ".join(f"{k}={v}" for k, v in sorted(meta.items()))
    return [f"macroots {line}", f"timestamp={ts}"]


def cmd_solve(args) -> int:
    system = load_system(args.input)
    cfg = _method_config(args)
    result = solve(system, cfg, _tolerances(args))
    out = args.out or "roots.json"
    roots_to_json(
        result,
        out,
        extra={
            "version": __version__,
            "tol_scale": args.tol,
            "timestamp": _timestamp(),
        },
    )
    print(f"{len(result.roots)} roots, max residual {result.residuals.max():.3e} -> {out}")
    return 0


def cmd_gen(args) -> int:
    family = args.family
    meta = {"family": family, "seed": args.seed, "version": __version__, "timestamp": _timestamp()}
    if family == "random":
        system = random_dense(args.n, args.deg, args.seed)
        meta["deg"] = args.deg
    elif family == "devastating":
        system = devastating(args.n, args.eps, seed=args.seed)
        meta["eps"] = args.eps
    elif family == "perturbed":
        system = perturbed_devastating(args.n, args.eps, args.delta, args.seed)
        meta.update(eps=args.eps, delta=args.delta)
    elif family == "conic":
        system, info = clustered_conic(args.n, args.k, args.alpha, args.seed)
        meta.update(
            k=args.k,
            alpha=args.alpha,
            prescribed_roots=[list(map(float, z)) for z in info["roots"]],
            prescribed_root_residual=float(info["max_root_residual"]),
        )
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(family)
    out = args.out or "system.json"
    save_system(system, out, metadata=meta)
    print(f"{family} system (n={system.n}, degrees={system.degrees}) -> {out}")
    return 0


def cmd_experiment(args) -> int:
    tol = _tolerances(args)
    out = args.out or f"{args.kind}.csv"
    if args.kind == "devastating_growth":
        dims = range(args.n_min, args.n_max + 1)
        records, g = experiments.devastating_growth(args.eps, dims, args.seed, tol)
        analysis.records_to_csv(
            records,
            out,
            summary_lines=_meta_lines(args, kind=args.kind, eps=args.eps)
            + [f"growth_rate={g!r}"],
        )
        print(f"growth rate {g:.4f} -> {out}")
    elif args.kind == "perturb_growth":
        deltas = [float(x) for x in args.deltas.split(",")]
        records, fits = experiments.perturb_growth(
            args.eps, deltas, args.trials, args.seed, workers=args.workers, tol=tol
        )
        summaries = [
            f"median_growth_rate delta={d!r}: {float(np.median(fits[d]))!r}" for d in deltas
        ]
        analysis.records_to_csv(
            records, out, summary_lines=_meta_lines(args, kind=args.kind, eps=args.eps) + summaries
        )
        for line in summaries:
            print(line)
        print(f"-> {out}")
    elif args.kind == "cluster_growth":
        ks = [int(x) for x in args.k_list.split(",")]
        records = experiments.cluster_records(
            ks, args.alpha, args.trials, n=args.n, seed=args.seed, workers=args.workers, tol=tol
        )
        summaries = []
        for k in ks:
            eig = float(np.median([r.eig_cond for r in records if r.k == k]))
            root = float(np.median([r.root_cond for r in records if r.k == k]))
            summaries.append(f"median k={k}: eig_cond={eig!r} root_cond={root!r}")
        analysis.records_to_csv(
            records,
            out,
            summary_lines=_meta_lines(args, kind=args.kind, alpha=args.alpha) + summaries,
        )
        for line in summaries:
            print(line)
        print(f"-> {out}")
    else:  # method_compare
        dims = range(args.n_min, args.n_max + 1)
        rows = experiments.method_compare(
            dims, args.trials, args.seed, workers=args.workers, tol=tol
        )
        _write_csv(
            out,
            ["dim", "trials", "median_residual_svd", "median_residual_qrp"],
            [
                [r.dim, r.trials, repr(r.median_residual_svd), repr(r.median_residual_qrp)]
                for r in rows
            ],
            _meta_lines(args, kind=args.kind),
        )
        for r in rows:
            print(
                f"dim {r.dim}: median residual svd={r.median_residual_svd:.3e} "
                f"qrp={r.median_residual_qrp:.3e}"
            )
        print(f"-> {out}")
    return 0


def cmd_flops(args) -> int:
    dims = [int(x) for x in args.dims.split(",")]
    lo, hi = (int(x) for x in args.degrees.split(":"))
    rows = flops.emit_comparison(dims, range(lo, hi + 1))
    out = args.out or "flops.csv"
    flops.comparison_to_csv(rows, out, meta_lines=_meta_lines(args))
    print(f"{len(rows)} rows -> {out}")
    return 0


def cmd_bench(args) -> int:
    if args.input:
        system = load_system(args.input)
    else:
        system = random_dense(args.n, args.deg, args.seed)
    combos = [
        ("direct", fac, False) for fac in ("svd", "qrp", "lq")
    ] + [
        ("nullspace", fac, False) for fac in ("svd", "qrp", "lq")
    ] + [("degree_by_degree", "svd", False), ("direct", "svd", True)]
    rows = []
    tol = _tolerances(args)
    for pipeline, fac, rc in combos:
        cfg = MethodConfig(pipeline=pipeline, factorization=fac, random_combinations=rc, seed=args.seed)
        t0 = time.perf_counter()
        result = solve(system, cfg, tol)
        dt = time.perf_counter() - t0
        rows.append([cfg.label(), repr(dt), repr(float(result.residuals.max()))])
        print(f"{cfg.label():15s} {dt:8.3f} s   max residual {result.residuals.max():.3e}")
    out = args.out or "bench.csv"
    _write_csv(out, ["method", "seconds", "max_residual"], rows, _meta_lines(args))
    print(f"-> {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macroots",
        description="Macaulay-matrix eigenvalue rootfinding for square polynomial systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a system from JSON")
    p.add_argument("input", help="system JSON path")
    _add_shared(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a test-system family")
    p.add_argument("family", choices=["random", "devastating", "perturbed", "conic"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--deg", type=int, default=2)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--alpha", type=float, default=1e-3)
    _add_shared(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("experiment", help="run a conditioning/accuracy sweep")
    p.add_argument(
        "kind",
        choices=["devastating_growth", "perturb_growth", "cluster_growth", "method_compare"],
    )
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--deltas", default="0,1e-4,1e-3,1e-2")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--k-list", default="2,3,4,5")
    p.add_argument("--alpha", type=float, default=1e-3)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    _add_shared(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("flops", help="emit the cost-model comparison CSV")
    p.add_argument("--dims", default="3,4")
    p.add_argument("--degrees", default="2:60", help="inclusive range lo:hi")
    _add_shared(p)
    p.set_defaults(func=cmd_flops)

    p = sub.add_parser("bench", help="time every method on one system")
    p.add_argument("--input", default=None)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--deg", type=int, default=2)
    _add_shared(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GenericityError as exc:
        print(f"genericity violation: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError, MacrootsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
