"""Top-level compute pipeline, benchmark harness, and result emission.

``compute_rmax`` applies the small-graph conventions (the empty graph is
0-robust, a single node is 1-robust) and otherwise dispatches to either
engine.  ``run_benchmark`` sweeps a seeded grid of random graphs, times
each engine on each graph, and streams one record per (graph, method);
records serialize to a fixed-schema CSV and to plot-ready per-n
min/median/max series.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .bnb import Status, TraceFn, solve, solve_with_threshold
from .exhaustive import determine_robustness
from .generators import MODELS, SplitMix64, generate
from .graph import Digraph
from .milp import build_milp, decode_pair

CSV_HEADER = "model,n,param,seed,trial,method,r_max,elapsed_ms,search_count,status"
METHODS = ("milp", "exhaustive")

STATUS_OK = "ok"
STATUS_TIMEOUT = "timeout"

_PROBABILITY_MODELS = ("erdos", "digraph")


@dataclass(frozen=True)
class ComputeOutcome:
    """Result of one robustness computation.

    ``r_max`` is the exact value when known (bounds coincide), else None and
    ``lower``/``upper`` bracket it.  ``witness`` holds the minimizing subset
    pair (or the certificate pair on a refuted threshold) as 1-based vertex
    tuples.  ``elapsed`` covers the computation only (for the MILP path,
    model construction plus the solve); conventions report 0 with
    ``search_count`` 0.
    """

    r_max: int | None
    lower: int
    upper: int
    method: str
    status: str
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    elapsed: float
    search_count: int


def _witness_vertices(pair) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return (pair.s1.vertices(), pair.s2.vertices())


def compute_rmax(
    d: Digraph,
    method: str = "milp",
    *,
    threshold: int | None = None,
    timeout: float | None = None,
    symmetry_break: bool = True,
    trace: TraceFn | None = None,
) -> ComputeOutcome:
    """Maximum robustness of a digraph via the requested engine.

    n = 0 and n = 1 are answered by convention (0 and 1) without touching
    either engine.  ``threshold`` switches to the early-stopping query:
    prove the value is at least the threshold or certify it is below.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if threshold is not None and threshold < 1:
        raise ValueError(f"threshold must be at least 1, got {threshold}")
    if d.n == 0:
        return ComputeOutcome(0, 0, 0, "convention", STATUS_OK, None, 0.0, 0)
    if d.n == 1:
        return ComputeOutcome(1, 1, 1, "convention", STATUS_OK, None, 0.0, 0)
    if method == "exhaustive":
        return _compute_exhaustive(d, threshold, timeout)
    return _compute_milp(d, threshold, timeout, symmetry_break, trace)


def _compute_exhaustive(d, threshold, timeout) -> ComputeOutcome:
    start = time.perf_counter()
    deadline = start + timeout if timeout is not None else None
    res = determine_robustness(d, deadline=deadline, stop_below=threshold)
    elapsed = time.perf_counter() - start
    witness = _witness_vertices(res.witness) if res.witness is not None else None
    if not res.completed:
        return ComputeOutcome(
            None, 0, res.r_max, "exhaustive", STATUS_TIMEOUT, witness, elapsed,
            res.pairs_examined,
        )
    if threshold is not None:
        if res.r_max < threshold:
            # witness certifies the refutation; the exact value may be lower
            return ComputeOutcome(
                None, 0, res.r_max, "exhaustive", Status.REFUTED_BELOW.value,
                witness, elapsed, res.pairs_examined,
            )
        return ComputeOutcome(
            res.r_max, res.r_max, res.r_max, "exhaustive",
            Status.PROVEN_AT_LEAST.value, witness, elapsed, res.pairs_examined,
        )
    return ComputeOutcome(
        res.r_max, res.r_max, res.r_max, "exhaustive", STATUS_OK, witness, elapsed,
        res.pairs_examined,
    )


_MILP_WARM = False


def _ensure_milp_warm() -> None:
    """Run one throwaway solve so jit compilation and cache loading never
    land inside a timed computation."""
    global _MILP_WARM
    if not _MILP_WARM:
        from .graph import complete_digraph

        solve(build_milp(complete_digraph(2).laplacian()))
        _MILP_WARM = True


def _compute_milp(d, threshold, timeout, symmetry_break, trace) -> ComputeOutcome:
    _ensure_milp_warm()
    start = time.perf_counter()
    model = build_milp(d.laplacian(), symmetry_break=symmetry_break)
    if threshold is not None:
        result = solve_with_threshold(model, threshold, time_limit=timeout, trace=trace)
    else:
        result = solve(model, time_limit=timeout, trace=trace)
    elapsed = time.perf_counter() - start
    witness = None
    if result.incumbent is not None:
        witness = _witness_vertices(decode_pair(result.incumbent))
    exact = result.upper_bound if result.lower_bound == result.upper_bound else None
    status = {
        Status.OPTIMAL: STATUS_OK,
        Status.TIMEOUT: STATUS_TIMEOUT,
        Status.PROVEN_AT_LEAST: Status.PROVEN_AT_LEAST.value,
        Status.REFUTED_BELOW: Status.REFUTED_BELOW.value,
    }[result.status]
    return ComputeOutcome(
        exact, result.lower_bound, result.upper_bound, "milp", status, witness,
        elapsed, result.nodes_explored,
    )


@dataclass(frozen=True)
class BenchRecord:
    """One timing trial; ``search_count`` is nodes explored for the MILP
    engine and pairs examined for the exhaustive engine."""

    model: str
    n: int
    param: float | int
    seed: int
    trial: int
    method: str
    r_max: int
    elapsed_ms: float
    search_count: int
    status: str


@dataclass(frozen=True)
class BenchConfig:
    """Benchmark grid.  Defaults mirror the four-family protocol: edge
    probabilities .3/.5/.8, degrees 3/4/5, 100 trials, both engines on
    n = 7..15, and the MILP engine alone additionally on random digraphs
    with n = 18..30."""

    models: tuple[str, ...] = MODELS
    sizes: tuple[int, ...] = tuple(range(7, 16))
    milp_only_sizes: tuple[int, ...] = tuple(range(18, 31))
    probabilities: tuple[float, ...] = (0.3, 0.5, 0.8)
    degrees: tuple[int, ...] = (3, 4, 5)
    trials: int = 100
    methods: tuple[str, ...] = METHODS
    seed: int = 0
    timeout: float = 300.0

    def __post_init__(self) -> None:
        for m in self.models:
            if m not in MODELS:
                raise ValueError(f"unknown model {m!r}")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")


def derive_seed(base: int, *parts: object) -> int:
    """Stable 64-bit seed from a base seed and grid coordinates."""
    acc = SplitMix64(base).next_u64()
    for part in parts:
        for byte in repr(part).encode("ascii"):
            acc = SplitMix64(acc ^ byte).next_u64()
    return acc


def _grid_params(config: BenchConfig, model: str) -> tuple[float | int, ...]:
    return config.probabilities if model in _PROBABILITY_MODELS else config.degrees


def _trial_tasks(
    config: BenchConfig,
) -> Iterator[tuple[str, float | int, int, int, int, tuple[str, ...], float]]:
    all_sizes = sorted(set(config.sizes) | set(config.milp_only_sizes))
    for model in config.models:
        for param in _grid_params(config, model):
            for n in all_sizes:
                if model not in _PROBABILITY_MODELS and param > n - 1:
                    continue
                milp_only = n not in config.sizes
                if milp_only and model != "digraph":
                    continue
                methods = tuple(
                    m for m in config.methods if not milp_only or m == "milp"
                )
                if not methods:
                    continue
                for trial in range(config.trials):
                    seed = derive_seed(config.seed, model, n, param, trial)
                    yield model, param, n, seed, trial, methods, config.timeout


def _run_trial(task) -> list[BenchRecord]:
    model, param, n, seed, trial, methods, timeout = task
    if model in _PROBABILITY_MODELS:
        d = generate(model, n, p=float(param), seed=seed)
    else:
        d = generate(model, n, k=int(param), seed=seed)
    records = []
    for method in methods:
        outcome = compute_rmax(d, method, timeout=timeout)
        if outcome.status == STATUS_TIMEOUT:
            elapsed_ms = timeout * 1000.0
        else:
            elapsed_ms = outcome.elapsed * 1000.0
        value = outcome.r_max if outcome.r_max is not None else outcome.upper
        records.append(
            BenchRecord(
                model=model,
                n=n,
                param=param,
                seed=seed,
                trial=trial,
                method=method,
                r_max=value,
                elapsed_ms=elapsed_ms,
                search_count=outcome.search_count,
                status=outcome.status,
            )
        )
    return records


def run_benchmark(config: BenchConfig, *, workers: int = 1) -> Iterator[BenchRecord]:
    """Generate each grid graph once and time every requested method on it.

    Record order is fixed by the grid (model, param, n, trial, method)
    regardless of completion order.  Trials that hit the per-trial timeout
    are kept with status "timeout", the best upper bound found, and
    elapsed_ms equal to the limit.  ``workers`` > 1 spreads trials over a
    process pool; timings then carry scheduling noise, so keep it at 1 when
    absolute times matter.
    """
    if workers <= 1:
        for task in _trial_tasks(config):
            yield from _run_trial(task)
        return
    from concurrent.futures import ProcessPoolExecutor

    tasks = list(_trial_tasks(config))
    chunk = max(1, len(tasks) // (workers * 16))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for records in pool.map(_run_trial, tasks, chunksize=chunk):
            yield from records


def _format_param(param: float | int) -> str:
    return repr(param) if isinstance(param, float) else str(param)


def format_csv_row(r: BenchRecord) -> str:
    return (
        f"{r.model},{r.n},{_format_param(r.param)},{r.seed},{r.trial},"
        f"{r.method},{r.r_max},{r.elapsed_ms!r},{r.search_count},{r.status}"
    )


def format_csv(records: Iterable[BenchRecord]) -> str:
    lines = [CSV_HEADER]
    lines.extend(format_csv_row(r) for r in records)
    return "\n".join(lines) + "\n"


def emit_csv(records: Iterable[BenchRecord], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_csv(records), encoding="ascii")
    return path


def parse_csv(text: str) -> list[BenchRecord]:
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"bad CSV header; expected {CSV_HEADER!r}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 10:
            raise ValueError(f"line {lineno}: expected 10 fields, got {len(fields)}")
        model, n, param, seed, trial, method, r_max, elapsed_ms, count, status = fields
        records.append(
            BenchRecord(
                model=model,
                n=int(n),
                param=float(param) if "." in param or "e" in param else int(param),
                seed=int(seed),
                trial=int(trial),
                method=method,
                r_max=int(r_max),
                elapsed_ms=float(elapsed_ms),
                search_count=int(count),
                status=status,
            )
        )
    return records


def read_csv(path: str | Path) -> list[BenchRecord]:
    return parse_csv(Path(path).read_text(encoding="ascii"))


def aggregate_times(
    records: Iterable[BenchRecord],
) -> dict[tuple[str, float | int, str], dict[int, tuple[float, float, float]]]:
    """Per (model, param, method) series mapping n -> (min, median, max) ms."""
    samples: dict[tuple[str, float | int, str], dict[int, list[float]]] = {}
    for r in records:
        key = (r.model, r.param, r.method)
        samples.setdefault(key, {}).setdefault(r.n, []).append(r.elapsed_ms)
    out: dict[tuple[str, float | int, str], dict[int, tuple[float, float, float]]] = {}
    for key, by_n in samples.items():
        out[key] = {
            n: (min(vals), statistics.median(vals), max(vals))
            for n, vals in sorted(by_n.items())
        }
    return out


def format_plotdata(records: Iterable[BenchRecord]) -> str:
    """Plot-ready text: one block per (model, param, method) series with
    per-n min/median/max elapsed milliseconds."""
    agg = aggregate_times(records)
    blocks = ["# robustness benchmark timing series"]
    for (model, param, method) in sorted(agg, key=lambda k: (k[0], str(k[1]), k[2])):
        lines = [
            f"# series model={model} param={_format_param(param)} method={method}",
            "# n min_ms median_ms max_ms",
        ]
        for n, (lo, med, hi) in agg[(model, param, method)].items():
            lines.append(f"{n} {lo!r} {med!r} {hi!r}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def emit_plotdata(records: Iterable[BenchRecord], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_plotdata(records), encoding="ascii")
    return path
