"""Exact maximum robustness by enumerating pairs of disjoint vertex subsets.

The maximum r for which a digraph is r-robust equals the minimum, over all
ordered pairs of nonempty disjoint subsets, of the larger of the two
subsets' reachabilities.  The search below visits each *unordered* pair
exactly once, keeps a running minimum seeded by the in-degree cap, and
serves as the ground-truth oracle for the MILP path.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterator

from .graph import Digraph, GraphError, NodeSet

# Deadline polling interval, in pairs.  Coarse on purpose: perf_counter per
# pair would dominate the inner loop at small n.
_DEADLINE_STRIDE = 4096


@dataclass(frozen=True)
class SubsetPair:
    """Ordered pair of nonempty, disjoint vertex subsets over the same graph."""

    s1: NodeSet
    s2: NodeSet

    def __post_init__(self) -> None:
        if self.s1.n != self.s2.n:
            raise GraphError("subset pair must live over the same vertex range")
        if not self.s1.mask or not self.s2.mask:
            raise GraphError("both subsets of a pair must be nonempty")
        if self.s1.mask & self.s2.mask:
            raise GraphError("subsets of a pair must be disjoint")

    def swapped(self) -> SubsetPair:
        return SubsetPair(self.s2, self.s1)

    def __repr__(self) -> str:
        v1 = ",".join(map(str, self.s1))
        v2 = ",".join(map(str, self.s2))
        return f"SubsetPair({{{v1}}}, {{{v2}}})"


@dataclass(frozen=True)
class ExhaustiveResult:
    """Outcome of the pair search.

    When ``completed`` is False (deadline hit), ``r_max`` is still a valid
    upper bound on the true value and ``witness`` may be None.
    """

    r_max: int
    witness: SubsetPair | None
    pairs_examined: int
    completed: bool = True


def pair_count(n: int) -> int:
    """Number of ordered pairs of nonempty disjoint subsets of n vertices.

    Evaluates sum over p=2..n of C(n,p) * (2^p - 2); the unordered count is
    half of this.
    """
    if n < 0:
        raise ValueError(f"node count must be nonnegative, got {n}")
    return sum(math.comb(n, p) * ((1 << p) - 2) for p in range(2, n + 1))


def enumerate_unordered_pairs(n: int) -> Iterator[SubsetPair]:
    """Yield each unordered pair of nonempty disjoint subsets exactly once.

    Every union K of at least two vertices is split into (s1, s2) with the
    lowest vertex of K pinned into s1, so each of the 2^(|K|-1) - 1
    partitions of K appears once.  Order is deterministic: K ascending as a
    mask, then s1 ascending within K.
    """
    if n < 2:
        return
    for k_mask in range(3, 1 << n):
        if k_mask.bit_count() < 2:
            continue
        low = k_mask & -k_mask
        rest = k_mask ^ low
        sub = 0
        while True:
            if sub != rest:
                yield SubsetPair(NodeSet(low | sub, n), NodeSet(rest ^ sub, n))
            if sub == rest:
                break
            sub = (sub - rest) & rest


def robust_holds(d: Digraph, pair: SubsetPair, r: int) -> bool:
    """True when at least one subset of the pair is r-reachable."""
    if r < 0:
        raise ValueError(f"reachability level must be nonnegative, got {r}")
    if r == 0:
        return True
    return d.reachability(pair.s1) >= r or d.reachability(pair.s2) >= r


def refutes_robustness(d: Digraph, pair: SubsetPair, beta: int) -> bool:
    """True when the pair certifies that the graph is not beta-robust.

    Holds iff both subsets have reachability below beta, which pins the
    graph's maximum robustness below beta as well.
    """
    return not robust_holds(d, pair, beta)


def robustness_upper_limit(d: Digraph) -> int:
    """Cheap upper bound on the maximum robustness: min(max(delta_in, 1), ceil(n/2)).

    The max(..., 1) keeps rooted out-branchings (in-degree 0 at the root)
    from being misclassified as 0-robust.
    """
    n = d.n
    if n < 2:
        raise GraphError("robustness bound requires at least two vertices")
    return min(max(d.min_in_degree(), 1), (n + 1) // 2)


def determine_robustness(
    d: Digraph,
    *,
    deadline: float | None = None,
    stop_below: int | None = None,
) -> ExhaustiveResult:
    """Exact maximum robustness via full unordered-pair enumeration.

    Maintains a running minimum m, initialized to the in-degree cap, and
    lowers it with max(R(s1), R(s2)) per pair.  Row scans stop early once a
    subset is proven (m+1)-reachable, since that pair can neither improve nor
    tie the minimum.  Ties at the final value keep the lexicographically
    smallest (s1 mask, s2 mask) witness; the search exits immediately when
    the minimum reaches 0 (or drops below ``stop_below``, which yields a
    certificate that the graph is not that robust).

    ``deadline`` is a perf_counter() timestamp; past it the result carries
    ``completed=False`` and the best bound found so far.
    """
    n = d.n
    if n < 2:
        raise GraphError("robustness search requires at least two vertices")
    best = robustness_upper_limit(d)
    witness: SubsetPair | None = None
    examined = 0
    masks = d._in_masks
    early_exit = 1 if stop_below is None else max(1, stop_below)

    for pair in enumerate_unordered_pairs(n):
        examined += 1
        if deadline is not None and examined % _DEADLINE_STRIDE == 0:
            if time.perf_counter() >= deadline:
                return ExhaustiveResult(best, witness, examined, completed=False)
        bound = best + 1  # a pair only matters if both reachabilities are <= best
        m1 = pair.s1.mask
        r1 = 0
        rem = m1
        outside = ~m1
        while rem:
            lowbit = rem & -rem
            rem ^= lowbit
            deg = (masks[lowbit.bit_length() - 1] & outside).bit_count()
            if deg > r1:
                r1 = deg
                if r1 >= bound:
                    break
        if r1 >= bound:
            continue
        m2 = pair.s2.mask
        r2 = 0
        rem = m2
        outside = ~m2
        while rem:
            lowbit = rem & -rem
            rem ^= lowbit
            deg = (masks[lowbit.bit_length() - 1] & outside).bit_count()
            if deg > r2:
                r2 = deg
                if r2 >= bound:
                    break
        if r2 >= bound:
            continue
        value = r1 if r1 >= r2 else r2
        if value < best:
            best = value
            witness = pair
        elif witness is None or (m1, m2) < (witness.s1.mask, witness.s2.mask):
            witness = pair
        if best < early_exit and witness is not None:
            break

    return ExhaustiveResult(best, witness, examined)
