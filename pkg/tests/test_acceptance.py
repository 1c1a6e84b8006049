"""Acceptance criteria, one test per criterion, run at full stated size.

Each test prints a single PASS/FAIL line so the suite doubles as a
checklist.  These are the slowest tests in the repository: the oracle
equivalence sweep solves thousands of graphs with both engines and the
scale check runs a hundred n=20 instances, so expect the module to take
tens of minutes on a small machine.
"""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ProcessPoolExecutor

from rrobust.bench import BenchConfig, compute_rmax, derive_seed, run_benchmark
from rrobust.bnb import Status, solve, solve_with_threshold
from rrobust.exhaustive import (
    determine_robustness,
    enumerate_unordered_pairs,
    pair_count,
    robustness_upper_limit,
)
from rrobust.generators import SplitMix64, gen_digraph, generate
from rrobust.graph import Digraph, NodeSet, complete_digraph, directed_cycle
from rrobust.milp import build_milp, check_feasible, enumerate_binary_pairs

from helpers import D3_EDGES, d3

PROBABILITIES = (0.3, 0.5, 0.8)
DEGREES = (3, 4)
MODELS = ("erdos", "digraph", "kin", "kout")


def _report(number: int, name: str, failures: list[str]) -> None:
    verdict = "PASS" if not failures else "FAIL"
    print(f"ACCEPTANCE {number} {name}: {verdict}")
    assert not failures, f"criterion {number} ({name}): " + "; ".join(failures[:10])


def _criterion1_params(model: str, n: int):
    if model in ("erdos", "digraph"):
        return [("p", p) for p in PROBABILITIES]
    return [("k", k) for k in DEGREES if k <= n - 1]


def _check_equivalence(task) -> str | None:
    model, n, kind, param, trial = task
    seed = derive_seed(2024, model, n, param, trial)
    kwargs = {kind: param}
    d = generate(model, n, seed=seed, **kwargs)
    expected = determine_robustness(d).r_max
    res = solve(build_milp(d.laplacian()))
    if res.status != Status.OPTIMAL or res.upper_bound != expected:
        return (
            f"{model} n={n} {kind}={param} seed={seed}: "
            f"milp={res.upper_bound} exhaustive={expected}"
        )
    return None


def test_criterion_1_oracle_equivalence():
    tasks = [
        (model, n, kind, param, trial)
        for model in MODELS
        for n in range(4, 11)
        for kind, param in _criterion1_params(model, n)
        for trial in range(100)
    ]
    failures = []
    with ProcessPoolExecutor(max_workers=2) as pool:
        for result in pool.map(_check_equivalence, tasks, chunksize=64):
            if result is not None:
                failures.append(result)
    print(f"criterion 1 checked {len(tasks)} graphs")
    _report(1, "oracle equivalence", failures)


def test_criterion_2_definition_conventions():
    failures = []
    for method in ("milp", "exhaustive"):
        if compute_rmax(Digraph(0, []), method).r_max != 0:
            failures.append(f"empty graph via {method}")
        if compute_rmax(Digraph(1, []), method).r_max != 1:
            failures.append(f"trivial graph via {method}")
    _report(2, "definition conventions", failures)


def test_criterion_3_structural_values():
    failures = []
    for n in range(2, 11):
        expected = (n + 1) // 2
        for method in ("milp", "exhaustive"):
            got = compute_rmax(complete_digraph(n), method).r_max
            if got != expected:
                failures.append(f"K_{n} via {method}: {got} != {expected}")
    for n in range(3, 11):
        for method in ("milp", "exhaustive"):
            got = compute_rmax(directed_cycle(n), method).r_max
            if got != 1:
                failures.append(f"C_{n} via {method}: {got} != 1")
    for method in ("milp", "exhaustive"):
        got = compute_rmax(Digraph(3, D3_EDGES), method).r_max
        if got != 1:
            failures.append(f"D3 via {method}: {got} != 1")
    _report(3, "structural values", failures)


def test_criterion_4_cardinality_formula():
    failures = []
    for n in range(2, 11):
        enumerated = sum(1 for _ in enumerate_unordered_pairs(n))
        if 2 * enumerated != pair_count(n):
            failures.append(f"n={n}: 2*{enumerated} != {pair_count(n)}")
    _report(4, "cardinality formula", failures)


def test_criterion_5_bijection_counting():
    failures = []
    for n in range(2, 7):
        count = sum(1 for bp in enumerate_binary_pairs(n) if check_feasible(bp))
        if count != pair_count(n):
            failures.append(f"n={n}: |B|={count} != {pair_count(n)}")
    _report(5, "bijection counting", failures)


def test_criterion_6_laplacian_identity_samples():
    rng = SplitMix64(606)
    failures = []
    for sample in range(10_000):
        n = 2 + rng.below(7)  # n in 2..8
        d = gen_digraph(n, (0.2, 0.4, 0.6, 0.8)[rng.below(4)], seed=rng.next_u64())
        lap = d.laplacian()
        mask = rng.below(1 << n)
        s = NodeSet(mask, n)
        members = frozenset(s)
        j = 1 + rng.below(n)
        action = lap.row_action(j, s)
        expected = (
            len(d.in_neighbors(j) - members)
            if j in members
            else -len(d.in_neighbors(j) & members)
        )
        if action != expected:
            failures.append(f"sample {sample}: row identity broke")
            break
        full_scan = max(lap.row_action(i, s) for i in range(1, n + 1))
        reach = d.reachability(s)
        if members and reach != full_scan:
            failures.append(f"sample {sample}: reachability != full row scan")
            break
        if not members and reach != 0:
            failures.append(f"sample {sample}: empty set reachability")
            break
    _report(6, "Laplacian identity on 10000 samples", failures)


def test_criterion_7_bound_invariants():
    failures = []
    for model in MODELS:
        for n in (4, 6, 8, 10):
            for kind, param in _criterion1_params(model, n):
                for trial in range(10):
                    seed = derive_seed(707, model, n, param, trial)
                    d = generate(model, n, seed=seed, **{kind: param})
                    truth = determine_robustness(d).r_max
                    cap = robustness_upper_limit(d)
                    if truth > cap:
                        failures.append(f"cap violated: {model} n={n} seed={seed}")
                    bounds = []
                    res = solve(
                        build_milp(d.laplacian()),
                        trace=lambda depth, lp, lb, ub: bounds.append((lb, ub)),
                    )
                    if res.root_value is not None and res.root_value > truth + 1e-9:
                        failures.append(f"root LP above r_max: {model} n={n} seed={seed}")
                    lbs = [lb for lb, _ in bounds]
                    ubs = [ub for _, ub in bounds]
                    if any(a > b for a, b in zip(lbs, lbs[1:])):
                        failures.append(f"lower bound not monotone: {model} n={n} seed={seed}")
                    if any(a < b for a, b in zip(ubs, ubs[1:])):
                        failures.append(f"upper bound not monotone: {model} n={n} seed={seed}")
                    if any(lb > ub for lb, ub in bounds):
                        failures.append(f"bound crossing: {model} n={n} seed={seed}")
                    if res.status != Status.OPTIMAL or res.lower_bound != res.upper_bound:
                        failures.append(f"gap not closed: {model} n={n} seed={seed}")
                    if res.upper_bound != truth:
                        failures.append(f"wrong optimum: {model} n={n} seed={seed}")
    _report(7, "bound invariants", failures)


def test_criterion_8_threshold_mode():
    failures = []
    k6_model = build_milp(complete_digraph(6).laplacian())
    full = solve(k6_model)
    proven = solve_with_threshold(k6_model, 2)
    if proven.status != Status.PROVEN_AT_LEAST:
        failures.append(f"K6 threshold status {proven.status}")
    if proven.nodes_explored > full.nodes_explored:
        failures.append("K6 threshold explored more nodes than the full solve")
    d = d3()
    refuted = solve_with_threshold(build_milp(d.laplacian()), 2)
    if refuted.status != Status.REFUTED_BELOW:
        failures.append(f"D3 threshold status {refuted.status}")
    elif refuted.incumbent is None:
        failures.append("D3 refutation missing certificate")
    else:
        s1 = NodeSet.from_indicator(refuted.incumbent.b1)
        s2 = NodeSet.from_indicator(refuted.incumbent.b2)
        if max(d.reachability(s1), d.reachability(s2)) >= 2:
            failures.append("D3 certificate not below threshold")
    _report(8, "threshold mode", failures)


def test_criterion_9_timing_trend():
    config = BenchConfig(
        models=("digraph",),
        sizes=(12,),
        milp_only_sizes=(),
        probabilities=(0.5,),
        trials=20,
        methods=("milp", "exhaustive"),
        seed=909,
        timeout=300.0,
    )
    records = list(run_benchmark(config))
    milp_times = [r.elapsed_ms for r in records if r.method == "milp"]
    exhaustive_times = [r.elapsed_ms for r in records if r.method == "exhaustive"]
    failures = []
    if len(milp_times) != 20 or len(exhaustive_times) != 20:
        failures.append("missing trials")
    med_milp = statistics.median(milp_times)
    med_exh = statistics.median(exhaustive_times)
    print(f"criterion 9 medians: milp={med_milp:.1f}ms exhaustive={med_exh:.1f}ms")
    if med_milp >= med_exh:
        failures.append(f"median milp {med_milp} >= exhaustive {med_exh}")
    _report(9, "timing trend at n=12", failures)


def _solve_n20(seed_trial: int) -> tuple[int, str, float]:
    seed = derive_seed(1010, "digraph", 20, 0.5, seed_trial)
    d = gen_digraph(20, 0.5, seed=seed)
    start = time.perf_counter()
    res = solve(build_milp(d.laplacian()), time_limit=300.0)
    elapsed = time.perf_counter() - start
    return seed_trial, res.status.value, elapsed


def test_criterion_10_milp_scale_check():
    completed = 0
    slowest = 0.0
    failures = []
    with ProcessPoolExecutor(max_workers=2) as pool:
        for trial, status, elapsed in pool.map(_solve_n20, range(100), chunksize=4):
            slowest = max(slowest, elapsed)
            if status == Status.OPTIMAL.value and elapsed <= 300.0:
                completed += 1
    print(f"criterion 10: {completed}/100 completed, slowest {slowest:.1f}s")
    if completed < 95:
        failures.append(f"only {completed}/100 completed within 300s")
    _report(10, "milp scale check at n=20", failures)
