"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the package's bitmask machinery:
reachability is recomputed from in-neighbor frozensets and the robustness
minimum is a plain double loop over itertools subsets, so agreement with
the library is a genuine two-path check.
"""

from __future__ import annotations

from itertools import combinations

from rrobust.graph import Digraph
from rrobust.generators import SplitMix64, generate

D3_EDGES = ((2, 1), (3, 1), (1, 2), (3, 2), (1, 3))


def d3() -> Digraph:
    """Three-node fixture: N_1={2,3}, N_2={1,3}, N_3={1}."""
    return Digraph(3, D3_EDGES)


def set_reachability(d: Digraph, s: frozenset[int]) -> int:
    """Reachability from set algebra, independent of the bitmask path."""
    if not s:
        return 0
    return max(len(d.in_neighbors(i) - s) for i in s)


def brute_force_rmax(d: Digraph) -> int:
    """Minimum over all ordered pairs of nonempty disjoint subsets of the
    larger reachability, enumerated directly with itertools."""
    verts = range(1, d.n + 1)
    subsets = [
        frozenset(c) for size in range(1, d.n) for c in combinations(verts, size)
    ]
    best = None
    for s1 in subsets:
        r1 = set_reachability(d, s1)
        for s2 in subsets:
            if s1 & s2:
                continue
            value = max(r1, set_reachability(d, s2))
            if best is None or value < best:
                best = value
    assert best is not None, "needs n >= 2"
    return best


def random_graph_sample(count: int, n_lo: int = 2, n_hi: int = 8, seed: int = 0):
    """Deterministic mix of graphs across all four generator models."""
    rng = SplitMix64(seed)
    models = ("erdos", "digraph", "kin", "kout")
    out = []
    for i in range(count):
        model = models[i % 4]
        n = n_lo + rng.below(n_hi - n_lo + 1)
        g_seed = rng.next_u64()
        if model in ("erdos", "digraph"):
            p = (0.2, 0.4, 0.6, 0.8)[rng.below(4)]
            out.append(generate(model, n, p=p, seed=g_seed))
        else:
            k = 1 + rng.below(max(1, n - 1))
            out.append(generate(model, n, k=k, seed=g_seed))
    return out
