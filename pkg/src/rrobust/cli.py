"""Command-line interface.

Subcommands: ``compute`` (robustness of one edge-list graph), ``gen``
(write a seeded random graph), ``bench`` (timing grid to CSV, plot data,
and figures), ``verify`` (MILP against exhaustive equivalence sweep), and
``plot`` (re-render figures from a results CSV).

Exit codes: 0 success, 1 computation error or verification mismatch,
2 input error, 3 timeout with valid bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .bench import (
    CSV_HEADER,
    METHODS,
    STATUS_TIMEOUT,
    BenchConfig,
    compute_rmax,
    derive_seed,
    emit_plotdata,
    format_csv_row,
    read_csv,
    run_benchmark,
)
from .edgelist import read_edgelist, write_edgelist
from .generators import MODELS, generate
from .graph import GraphError
from .simplex import SimplexError

EXIT_OK = 0
EXIT_COMPUTE_ERROR = 1
EXIT_INPUT_ERROR = 2
EXIT_TIMEOUT = 3


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SimplexError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE_ERROR
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrobust",
        description="Maximum r-robustness of simple digraphs: exhaustive search, "
        "branch-and-bound MILP, random-graph generators, and benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute r_max for an edge-list graph")
    c.add_argument("--input", required=True, help="edge-list file ('n m' header)")
    c.add_argument("--method", choices=METHODS, default="milp")
    c.add_argument("--threshold", type=int, default=None, metavar="G",
                   help="stop once r_max >= G is proven or refuted")
    c.add_argument("--timeout", type=float, default=None, metavar="S")
    c.add_argument("--no-symmetry-break", action="store_true",
                   help="drop the b2[1]=0 symmetry row from the MILP")
    c.add_argument("--trace", action="store_true",
                   help="print one line per search node to stderr")
    c.set_defaults(func=_cmd_compute)

    g = sub.add_parser("gen", help="write a seeded random graph")
    g.add_argument("--model", choices=MODELS, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, default=None, help="edge probability (erdos, digraph)")
    g.add_argument("--k", type=int, default=None, help="degree parameter (kin, kout)")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    b = sub.add_parser("bench", help="run the timing benchmark grid")
    b.add_argument("--config", default=None, help="JSON file with BenchConfig fields")
    b.add_argument("--models", default=None, help="comma list, e.g. erdos,digraph")
    b.add_argument("--sizes", default=None, help="comma list of n for both methods")
    b.add_argument("--milp-sizes", default=None,
                   help="comma list of extra n for the MILP method only")
    b.add_argument("--p", default=None, help="comma list of edge probabilities")
    b.add_argument("--k", default=None, help="comma list of degree parameters")
    b.add_argument("--trials", type=int, default=None)
    b.add_argument("--methods", default=None, help="comma list: milp,exhaustive")
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--timeout", type=float, default=None, help="per-trial seconds")
    b.add_argument("--workers", type=int, default=1,
                   help="parallel trial processes (timings get noisier)")
    b.add_argument("--out", required=True, help="results CSV path")
    b.add_argument("--plotdata", default=None, help="plot-data output path")
    b.add_argument("--figures", default=None, help="directory for rendered figures")
    b.set_defaults(func=_cmd_bench)

    v = sub.add_parser("verify", help="check MILP == exhaustive on random graphs")
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--trials", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--models", default=",".join(MODELS))
    v.set_defaults(func=_cmd_verify)

    p = sub.add_parser("plot", help="render figures from a results CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_plot)

    return parser


def _print_witness(label: str, witness) -> None:
    s1 = ",".join(map(str, witness[0]))
    s2 = ",".join(map(str, witness[1]))
    print(f"{label}: S1={{{s1}}} S2={{{s2}}}")


def _cmd_compute(args) -> int:
    d = read_edgelist(args.input)
    trace = None
    if args.trace:
        def trace(depth, lp_value, lb, ub):
            lp = "infeasible" if lp_value is None else f"{lp_value:.6f}"
            print(f"node depth={depth} lp={lp} lb={lb} ub={ub}", file=sys.stderr)
    outcome = compute_rmax(
        d,
        args.method,
        threshold=args.threshold,
        timeout=args.timeout,
        symmetry_break=not args.no_symmetry_break,
        trace=trace,
    )
    if outcome.r_max is not None:
        print(f"r_max = {outcome.r_max}")
    else:
        print(f"bounds: {outcome.lower} <= r_max <= {outcome.upper}")
    print(f"status: {outcome.status}")
    print(f"method: {outcome.method}")
    if outcome.witness is not None:
        label = "certificate" if outcome.status == "refuted_below" else "witness"
        _print_witness(label, outcome.witness)
    print(f"elapsed_ms: {outcome.elapsed * 1000.0:.3f}")
    print(f"search_count: {outcome.search_count}")
    return EXIT_TIMEOUT if outcome.status == STATUS_TIMEOUT else EXIT_OK


def _cmd_gen(args) -> int:
    if (args.p is None) == (args.k is None):
        raise ValueError("give exactly one of --p or --k")
    d = generate(args.model, args.n, p=args.p, k=args.k, seed=args.seed)
    write_edgelist(d, args.out)
    print(f"wrote {args.model} graph n={d.n} m={d.edge_count} to {args.out}")
    return EXIT_OK


def _parse_list(text: str, kind):
    return tuple(kind(part) for part in text.split(",") if part)


def _bench_config(args) -> BenchConfig:
    config = BenchConfig()
    if args.config:
        raw = json.loads(Path(args.config).read_text())
        allowed = set(BenchConfig.__dataclass_fields__)
        unknown = set(raw) - allowed
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        tupled = {
            key: tuple(value) if isinstance(value, list) else value
            for key, value in raw.items()
        }
        config = replace(config, **tupled)
    if args.models is not None:
        config = replace(config, models=_parse_list(args.models, str))
    if args.sizes is not None:
        # an explicit size list replaces the whole default grid, including
        # the milp-only extension, unless --milp-sizes is also given
        config = replace(config, sizes=_parse_list(args.sizes, int))
        if args.milp_sizes is None:
            config = replace(config, milp_only_sizes=())
    if args.milp_sizes is not None:
        config = replace(config, milp_only_sizes=_parse_list(args.milp_sizes, int))
    if args.p is not None:
        config = replace(config, probabilities=_parse_list(args.p, float))
    if args.k is not None:
        config = replace(config, degrees=_parse_list(args.k, int))
    if args.trials is not None:
        config = replace(config, trials=args.trials)
    if args.methods is not None:
        config = replace(config, methods=_parse_list(args.methods, str))
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    if args.timeout is not None:
        config = replace(config, timeout=args.timeout)
    return config


def _cmd_bench(args) -> int:
    config = _bench_config(args)
    records = []
    out = Path(args.out)
    with open(out, "w", encoding="ascii", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for record in run_benchmark(config, workers=max(1, args.workers)):
            fh.write(format_csv_row(record) + "\n")
            fh.flush()
            records.append(record)
    print(f"wrote {len(records)} records to {out}")
    if args.plotdata:
        emit_plotdata(records, args.plotdata)
        print(f"wrote plot data to {args.plotdata}")
    if args.figures:
        from .figures import render_figures

        for path in render_figures(records, args.figures):
            print(f"wrote figure {path}")
    timeouts = sum(1 for r in records if r.status == STATUS_TIMEOUT)
    if timeouts:
        print(f"{timeouts} trials timed out (kept with status=timeout)")
    return EXIT_OK


def _cmd_verify(args) -> int:
    models = _parse_list(args.models, str)
    probabilities = (0.3, 0.5, 0.8)
    degrees = (3, 4, 5)
    total = 0
    mismatches = 0
    for model in models:
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}")
        for n in range(2, args.n_max + 1):
            params = probabilities if model in ("erdos", "digraph") else degrees
            for param in params:
                if model in ("kin", "kout") and param > n - 1:
                    continue
                for trial in range(args.trials):
                    seed = derive_seed(args.seed, model, n, param, trial)
                    if model in ("erdos", "digraph"):
                        d = generate(model, n, p=float(param), seed=seed)
                    else:
                        d = generate(model, n, k=int(param), seed=seed)
                    exact = compute_rmax(d, "exhaustive")
                    milp = compute_rmax(d, "milp")
                    total += 1
                    if exact.r_max != milp.r_max:
                        mismatches += 1
                        print(
                            f"mismatch: model={model} n={n} param={param} seed={seed} "
                            f"exhaustive={exact.r_max} milp={milp.r_max}"
                        )
    print(f"verified {total} graphs: {mismatches} mismatches")
    return EXIT_OK if mismatches == 0 else EXIT_COMPUTE_ERROR


def _cmd_plot(args) -> int:
    from .figures import render_figures

    records = read_csv(args.input)
    for path in render_figures(records, args.out_dir):
        print(f"wrote figure {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
