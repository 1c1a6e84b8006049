"""Branch and bound for the robustness MILP.

Nodes fix binary variables to 0/1 and are explored best-first by the
parent relaxation value (FIFO among ties).  Because every integer-feasible
objective is an integer, the global lower bound is the ceiling of the
smallest open relaxation value; the upper bound comes from incumbents
found by rounding relaxation points or hitting integral ones.  The gap
closing to zero proves optimality, and threshold queries stop early in
either direction: a lower bound at or above the target proves that much
robustness, an incumbent below it is a counterexample certificate.
"""

from __future__ import annotations

import enum
import heapq
import math
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .milp import (
    ROW_EPIGRAPH,
    ROW_SYMMETRY,
    BinaryPair,
    MilpModel,
    block_objective,
    check_feasible,
)
from .simplex import STATUS_OPTIMAL, LpSolution, solve_lp

EPS_INT = 1e-6

# trace callback: (depth, lp value or None when infeasible, lower, upper)
TraceFn = Callable[[int, "float | None", int, int], None]


class Status(enum.Enum):
    OPTIMAL = "optimal"
    PROVEN_AT_LEAST = "proven_at_least"
    REFUTED_BELOW = "refuted_below"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class BnbResult:
    """Solve outcome.  Bounds always bracket the true optimum; on OPTIMAL
    they coincide with it, and the incumbent (when present) is a feasible
    binary pair whose exact integer objective equals ``upper_bound``."""

    status: Status
    lower_bound: int
    upper_bound: int
    incumbent: BinaryPair | None
    nodes_explored: int
    lp_iterations: int
    elapsed: float
    threshold: int | None = None
    root_value: float | None = None


@lru_cache(maxsize=32)
def _dense_parts(model: MilpModel):
    num_rows = len(model.rows)
    a = np.zeros((num_rows, model.num_vars))
    b = np.zeros(num_rows)
    for r, row in enumerate(model.rows):
        for idx, coef in row.coeffs:
            a[r, idx] = coef
        b[r] = row.rhs
    c = np.array(model.objective, dtype=float)
    lower = np.array(model.lower, dtype=float)
    upper = np.array(
        [np.inf if u is None else float(u) for u in model.upper], dtype=float
    )
    return a, b, c, lower, upper


def _laplacian_rows(model: MilpModel) -> tuple[tuple[int, ...], ...]:
    """Recover the integer Laplacian from the first epigraph block."""
    n = model.n
    out = []
    for row in model.rows_of_kind(ROW_EPIGRAPH)[:n]:
        entries = [0] * n
        for idx, coef in row.coeffs:
            if idx:
                entries[idx - 1] = coef
        out.append(tuple(entries))
    return tuple(out)


def _start_hints(model: MilpModel, fixings: dict[int, int] | None) -> tuple[int, ...]:
    """Binaries to start at their upper bound so the cardinality floors hold
    at the initial point and phase 1 is usually unnecessary.  Hints never
    change the optimum, only the simplex starting basis."""
    n = model.n
    fixings = fixings or {}
    has_symmetry = any(r.kind == ROW_SYMMETRY for r in model.rows)
    fixed1_b1 = {v for v in range(1, n + 1) if fixings.get(v) == 1}
    fixed1_b2 = {v for v in range(1, n + 1) if fixings.get(n + v) == 1}
    hints: list[int] = []
    seed1 = 0
    if not fixed1_b1:
        for v in range(1, n + 1):
            if fixings.get(v) == 0 or v in fixed1_b2:
                continue
            hints.append(v)
            seed1 = v
            break
    if not fixed1_b2:
        for v in range(2 if has_symmetry else 1, n + 1):
            if fixings.get(n + v) == 0 or v in fixed1_b1 or v == seed1:
                continue
            hints.append(n + v)
            break
    return tuple(hints)


def lp_relax(model: MilpModel, fixings: dict[int, int] | None = None) -> LpSolution:
    """Solve the model with integrality dropped, binaries narrowed by fixings."""
    a, b, c, lower, upper = _dense_parts(model)
    lo = lower.copy()
    up = upper.copy()
    if fixings:
        for idx, val in fixings.items():
            if idx not in model.binary_indices():
                raise ValueError(f"can only fix binary variables, got index {idx}")
            if val not in (0, 1):
                raise ValueError(f"binary fixing must be 0 or 1, got {val!r}")
            lo[idx] = up[idx] = float(val)
    return solve_lp(a, b, c, lo, up, start_upper=_start_hints(model, fixings))


def branch_select(lp: LpSolution, model: MilpModel) -> int:
    """Most-fractional binary variable (closest to 1/2), lowest index on ties."""
    if lp.status != STATUS_OPTIMAL:
        raise ValueError("branch_select requires an optimal relaxation")
    best_j = -1
    best_dist = math.inf
    for j in model.binary_indices():
        v = float(lp.x[j])
        if abs(v - round(v)) <= EPS_INT:
            continue
        dist = abs(v - 0.5)
        if dist < best_dist:
            best_dist = dist
            best_j = j
    if best_j < 0:
        raise ValueError("branch_select called with an integral point")
    return best_j


def round_to_incumbent(model: MilpModel, lp: LpSolution) -> BinaryPair | None:
    """Round a relaxation point to a feasible binary pair, repairing conflicts.

    Vertices claimed by both blocks go to the one with the larger fraction
    (first block on ties).  A block holding every vertex drops its
    smallest-fraction member (highest vertex on ties); an empty block pulls
    in the unclaimed vertex with its largest fraction (lowest vertex on
    ties).  Returns None when no repair yields a feasible pair.
    """
    if lp.status != STATUS_OPTIMAL:
        raise ValueError("round_to_incumbent requires an optimal relaxation")
    n = model.n
    f1 = [float(lp.x[v]) for v in range(1, n + 1)]
    f2 = [float(lp.x[n + v]) for v in range(1, n + 1)]
    in1 = {v for v in range(1, n + 1) if f1[v - 1] >= 0.5}
    in2 = {v for v in range(1, n + 1) if f2[v - 1] >= 0.5}
    for v in sorted(in1 & in2):
        if f2[v - 1] > f1[v - 1]:
            in1.discard(v)
        else:
            in2.discard(v)
    for chosen, fr in ((in1, f1), (in2, f2)):
        if len(chosen) == n:
            weakest = min(fr[v - 1] for v in chosen)
            chosen.discard(max(v for v in chosen if fr[v - 1] == weakest))
    for chosen, fr in ((in1, f1), (in2, f2)):
        if not chosen:
            free = [v for v in range(1, n + 1) if v not in in1 and v not in in2]
            if not free:
                return None
            chosen.add(max(free, key=lambda v: (fr[v - 1], -v)))
    pair = BinaryPair(
        tuple(1 if v in in1 else 0 for v in range(1, n + 1)),
        tuple(1 if v in in2 else 0 for v in range(1, n + 1)),
    )
    return pair if check_feasible(pair) else None


def _initial_incumbent(model: MilpModel, lap_rows) -> BinaryPair:
    """Seed pair: the minimum-in-degree vertex against all the others,
    oriented so vertex 1 sits in the first block (the symmetry row, when
    present, excludes it from the second)."""
    n = model.n
    v = min(range(1, n + 1), key=lambda j: (lap_rows[j - 1][j - 1], j))
    s1 = {v}
    s2 = set(range(1, n + 1)) - s1
    if 1 in s2:
        s1, s2 = s2, s1
    return BinaryPair(
        tuple(1 if u in s1 else 0 for u in range(1, n + 1)),
        tuple(1 if u in s2 else 0 for u in range(1, n + 1)),
    )


def solve(
    model: MilpModel,
    *,
    node_limit: int | None = None,
    time_limit: float | None = None,
    trace: TraceFn | None = None,
) -> BnbResult:
    """Solve to optimality (or return valid bounds on a node/time limit)."""
    return _branch_and_bound(
        model, threshold=None, node_limit=node_limit, time_limit=time_limit, trace=trace
    )


def solve_with_threshold(
    model: MilpModel,
    gamma: int,
    *,
    node_limit: int | None = None,
    time_limit: float | None = None,
    trace: TraceFn | None = None,
) -> BnbResult:
    """Stop as soon as the target robustness is proven or refuted.

    PROVEN_AT_LEAST once the global lower bound reaches gamma (the graph is
    r-robust for every r <= gamma); REFUTED_BELOW once an incumbent drops
    under gamma, in which case the incumbent is a certificate pair.
    """
    if gamma < 1:
        raise ValueError(f"threshold must be at least 1, got {gamma}")
    return _branch_and_bound(
        model, threshold=gamma, node_limit=node_limit, time_limit=time_limit, trace=trace
    )


def _branch_and_bound(
    model: MilpModel,
    *,
    threshold: int | None,
    node_limit: int | None,
    time_limit: float | None,
    trace: TraceFn | None,
) -> BnbResult:
    t0 = time.perf_counter()
    lap_rows = _laplacian_rows(model)
    incumbent = _initial_incumbent(model, lap_rows)
    ub = block_objective(lap_rows, incumbent)
    lb = 0
    nodes = 0
    lp_iters = 0
    root_value: float | None = None

    def finish(status: Status) -> BnbResult:
        return BnbResult(
            status=status,
            lower_bound=lb,
            upper_bound=ub,
            incumbent=incumbent,
            nodes_explored=nodes,
            lp_iterations=lp_iters,
            elapsed=time.perf_counter() - t0,
            threshold=threshold,
            root_value=root_value,
        )

    if threshold is not None and ub < threshold:
        return finish(Status.REFUTED_BELOW)

    # heap entries: (parent relaxation value, insertion counter, depth, fixings)
    heap: list[tuple[float, int, int, dict[int, int]]] = [(0.0, 0, 0, {})]
    counter = 1
    while heap:
        if time_limit is not None and time.perf_counter() - t0 >= time_limit:
            return finish(Status.TIMEOUT)
        if node_limit is not None and nodes >= node_limit:
            return finish(Status.TIMEOUT)
        parent_bound, _, depth, fixings = heapq.heappop(heap)
        # best-first order makes the popped bound the smallest open one
        lb = max(lb, min(math.ceil(parent_bound - EPS_INT), ub))
        if threshold is not None and lb >= threshold:
            return finish(Status.PROVEN_AT_LEAST)
        if lb >= ub:
            lb = ub
            return finish(Status.OPTIMAL)

        lp = lp_relax(model, fixings)
        nodes += 1
        lp_iters += lp.iterations
        if lp.status != STATUS_OPTIMAL:
            if trace is not None:
                trace(depth, None, lb, ub)
            continue
        val = lp.value
        if depth == 0:
            root_value = val
        if trace is not None:
            trace(depth, val, lb, ub)
        if math.ceil(val - EPS_INT) >= ub:
            continue

        fractional = any(
            abs(float(lp.x[j]) - round(lp.x[j])) > EPS_INT for j in model.binary_indices()
        )
        if not fractional:
            pair = BinaryPair(
                tuple(int(round(lp.x[v])) for v in range(1, model.n + 1)),
                tuple(int(round(lp.x[model.n + v])) for v in range(1, model.n + 1)),
            )
            if check_feasible(pair):
                obj = block_objective(lap_rows, pair)
                if obj < ub:
                    ub = obj
                    incumbent = pair
                    if threshold is not None and ub < threshold:
                        return finish(Status.REFUTED_BELOW)
                    if lb >= ub:
                        return finish(Status.OPTIMAL)
            continue

        rounded = round_to_incumbent(model, lp)
        if rounded is not None:
            obj = block_objective(lap_rows, rounded)
            if obj < ub:
                ub = obj
                incumbent = rounded
                if threshold is not None and ub < threshold:
                    return finish(Status.REFUTED_BELOW)
                if lb >= ub:
                    return finish(Status.OPTIMAL)

        j = branch_select(lp, model)
        for fix_val in (0, 1):
            child = dict(fixings)
            child[j] = fix_val
            heapq.heappush(heap, (val, counter, depth + 1, child))
            counter += 1

    lb = ub
    if threshold is not None:
        return finish(
            Status.PROVEN_AT_LEAST if ub >= threshold else Status.REFUTED_BELOW
        )
    return finish(Status.OPTIMAL)
