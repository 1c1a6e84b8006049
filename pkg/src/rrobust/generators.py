"""Seeded random-graph generators for the four benchmark families.

The PRNG is splitmix64, pinned so the same seed produces bit-identical
edge lists on every platform (and makes cross-language test vectors
possible).  Draw order is pinned too: probability models visit vertex
pairs lexicographically, degree models visit nodes ascending and redraw
on duplicate neighbor picks.
"""

from __future__ import annotations

from .graph import Digraph

MODELS = ("erdos", "digraph", "kin", "kout")

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: 64-bit state, one addition and two xor-multiply mixes per draw."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform real in [0, 1): the top 53 bits scaled by 2^-53."""
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, m: int) -> int:
        """Uniform integer in [0, m) via floor(random() * m).

        Carries the tiny floor-multiply modulo bias, which is negligible for
        the m <= 64 used here and keeps the mapping trivially portable.
        """
        if m <= 0:
            raise ValueError(f"range bound must be positive, got {m}")
        return int(self.random() * m)


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")


def _check_degree(n: int, k: int) -> None:
    if not 1 <= k <= n - 1:
        raise ValueError(f"degree parameter must satisfy 1 <= k <= n-1, got k={k}, n={n}")


def gen_erdos(n: int, p: float, seed: int) -> Digraph:
    """Undirected Erdos-Renyi graph as a symmetric digraph.

    One draw per unordered pair {i, j}, i < j in lexicographic order; a hit
    adds both directed edges.
    """
    _check_probability(p)
    rng = SplitMix64(seed)
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < p:
                edges.append((i, j))
                edges.append((j, i))
    return Digraph(n, edges)


def gen_digraph(n: int, p: float, seed: int) -> Digraph:
    """Random digraph: every ordered pair (i, j), i != j, drawn independently."""
    _check_probability(p)
    rng = SplitMix64(seed)
    edges = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and rng.random() < p:
                edges.append((i, j))
    return Digraph(n, edges)


def _k_out_edges(n: int, k: int, seed: int) -> list[tuple[int, int]]:
    rng = SplitMix64(seed)
    edges = []
    for i in range(1, n + 1):
        chosen: set[int] = set()
        while len(chosen) < k:
            v = rng.below(n) + 1
            if v == i or v in chosen:
                continue
            chosen.add(v)
            edges.append((i, v))
    return edges


def gen_k_out(n: int, k: int, seed: int) -> Digraph:
    """Every node picks k distinct out-neighbors uniformly at random."""
    _check_degree(n, k)
    return Digraph(n, _k_out_edges(n, k, seed))


def gen_k_in(n: int, k: int, seed: int) -> Digraph:
    """A k-out draw with every edge reversed, so each in-degree is exactly k."""
    _check_degree(n, k)
    return Digraph(n, [(j, i) for i, j in _k_out_edges(n, k, seed)])


def generate(model: str, n: int, *, p: float | None = None, k: int | None = None,
             seed: int) -> Digraph:
    """Dispatch on the model name; exactly one of p (probability models) or
    k (degree models) must be given."""
    if model in ("erdos", "digraph"):
        if p is None:
            raise ValueError(f"model {model!r} needs an edge probability p")
        return (gen_erdos if model == "erdos" else gen_digraph)(n, p, seed)
    if model in ("kin", "kout"):
        if k is None:
            raise ValueError(f"model {model!r} needs a degree parameter k")
        return (gen_k_in if model == "kin" else gen_k_out)(n, k, seed)
    raise ValueError(f"unknown graph model {model!r}; expected one of {MODELS}")
